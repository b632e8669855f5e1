#include "veechmix/surface.hpp"

#include <cmath>
#include <deque>

#include "veechmix/errors.hpp"

namespace veechmix {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kFloatTol = 1e-9;

// Axis direction codes, counterclockwise: E=0, N=1, W=2, S=3. -1 when the
// vector is not axis-aligned or its sign cannot be certified.
int axis_code(const Vec2& d) {
  try {
    bool x0 = d.x.is_zero(), y0 = d.y.is_zero();
    if (x0 && y0) throw BadParameters("zero edge vector");
    if (x0) return d.y.sign() > 0 ? 1 : 3;
    if (y0) return d.x.sign() > 0 ? 0 : 2;
  } catch (const AmbiguousComparison&) {
    return -1;
  }
  return -1;
}

double norm(const Vec2d& v) { return std::hypot(v.x, v.y); }

}  // namespace

TranslationSurface::TranslationSurface(std::vector<std::vector<Vec2>> polygons,
                                       std::vector<Pairing> pairings, std::string provenance)
    : exact_(true),
      polys_(std::move(polygons)),
      pairings_(std::move(pairings)),
      provenance_(std::move(provenance)) {
  fpolys_.reserve(polys_.size());
  for (const auto& poly : polys_) {
    std::vector<Vec2d> fp;
    fp.reserve(poly.size());
    for (const auto& v : poly) fp.push_back({v.x.hint(), v.y.hint()});
    fpolys_.push_back(std::move(fp));
  }
  init();
}

TranslationSurface::TranslationSurface(std::vector<std::vector<Vec2d>> polygons,
                                       std::vector<Pairing> pairings, std::string provenance)
    : exact_(false),
      fpolys_(std::move(polygons)),
      pairings_(std::move(pairings)),
      provenance_(std::move(provenance)) {
  init();
}

void TranslationSurface::init() {
  if (fpolys_.empty()) throw EmptyInput("surface with no polygons");
  std::size_t total_edges = 0;
  for (const auto& poly : fpolys_) {
    if (poly.size() < 3) throw BadParameters("polygon with fewer than 3 vertices");
    total_edges += poly.size();
  }
  if (total_edges != 2 * pairings_.size())
    throw BadParameters("pairings do not cover every edge exactly once");

  partner_of_.clear();
  for (const auto& poly : fpolys_) partner_of_.emplace_back(poly.size(), -1);
  for (std::size_t k = 0; k < pairings_.size(); ++k) {
    for (const EdgeRef& e : {pairings_[k].a, pairings_[k].b}) {
      if (e.poly < 0 || e.poly >= static_cast<int>(fpolys_.size()) || e.edge < 0 ||
          e.edge >= static_cast<int>(fpolys_[e.poly].size()))
        throw BadParameters("pairing references a missing edge");
      if (partner_of_[e.poly][e.edge] != -1)
        throw BadParameters("edge appears in two pairings");
      partner_of_[e.poly][e.edge] = static_cast<int>(k);
    }
    if (pairings_[k].a == pairings_[k].b) throw BadParameters("edge paired with itself");
  }

  // Connectivity across pairings.
  std::vector<bool> seen(fpolys_.size(), false);
  std::deque<int> queue = {0};
  seen[0] = true;
  while (!queue.empty()) {
    int p = queue.front();
    queue.pop_front();
    for (std::size_t e = 0; e < fpolys_[p].size(); ++e) {
      EdgeRef other = partner({p, static_cast<int>(e)});
      if (!seen[other.poly]) {
        seen[other.poly] = true;
        queue.push_back(other.poly);
      }
    }
  }
  for (bool s : seen)
    if (!s) throw BadParameters("surface is not connected");

  if (exact_)
    validate_exact_geometry();
  else
    validate_float_geometry();

  build_classes_and_genus();
}

void TranslationSurface::validate_exact_geometry() {
  const BasisPtr& b = polys_[0][0].x.basis();
  for (const auto& poly : polys_)
    for (const auto& v : poly)
      if (!v.x.basis()->same(*b) || !v.y.basis()->same(*b))
        throw BasisMismatch("surface vertices over different bases");

  for (std::size_t p = 0; p < polys_.size(); ++p)
    for (std::size_t e = 0; e < polys_[p].size(); ++e)
      if (edge_vector({static_cast<int>(p), static_cast<int>(e)}).is_zero())
        throw BadParameters("zero-length edge");

  for (const auto& pr : pairings_) {
    Vec2 sum = edge_vector(pr.a) + edge_vector(pr.b);
    if (!sum.is_zero())
      throw BadParameters("paired edges are not opposite translates: " +
                          edge_vector(pr.a).to_string() + " vs " +
                          edge_vector(pr.b).to_string());
  }
}

void TranslationSurface::validate_float_geometry() {
  for (std::size_t p = 0; p < fpolys_.size(); ++p) {
    const auto& poly = fpolys_[p];
    for (std::size_t e = 0; e < poly.size(); ++e) {
      Vec2d ev = edge_vector_hint({static_cast<int>(p), static_cast<int>(e)});
      if (norm(ev) < 1e-12) throw BadParameters("zero-length edge");
    }
  }
  for (const auto& pr : pairings_) {
    Vec2d va = edge_vector_hint(pr.a);
    Vec2d vb = edge_vector_hint(pr.b);
    double scale = std::max({1.0, norm(va), norm(vb)});
    if (std::hypot(va.x + vb.x, va.y + vb.y) > kFloatTol * scale)
      throw BadParameters("paired edges are not opposite translates");
  }
}

void TranslationSurface::build_classes_and_genus() {
  classes_.clear();
  class_of_.clear();
  for (const auto& poly : fpolys_) class_of_.emplace_back(poly.size(), -1);

  for (std::size_t p0 = 0; p0 < fpolys_.size(); ++p0) {
    for (std::size_t i0 = 0; i0 < fpolys_[p0].size(); ++i0) {
      if (class_of_[p0][i0] != -1) continue;
      VertexClass cls;
      int quarters = 0;
      double float_angle = 0.0;
      bool all_exact = true;

      int p = static_cast<int>(p0), i = static_cast<int>(i0);
      do {
        class_of_[p][i] = static_cast<int>(classes_.size());
        cls.corners.emplace_back(p, i);

        const int n = static_cast<int>(fpolys_[p].size());
        const int in_edge = (i + n - 1) % n;

        int code_in = -1, code_out = -1;
        if (exact_) {
          code_in = axis_code(edge_vector({p, in_edge}));
          code_out = axis_code(edge_vector({p, i}));
        }
        if (code_in >= 0 && code_out >= 0) {
          int turn = (code_out - code_in + 4) % 4;
          int interior = (2 - turn + 4) % 4;
          if (interior == 0) throw BadParameters("degenerate polygon corner");
          quarters += interior;
        } else {
          all_exact = false;
          Vec2d din = edge_vector_hint({p, in_edge});
          Vec2d dout = edge_vector_hint({p, i});
          double turn = std::atan2(dout.y, dout.x) - std::atan2(din.y, din.x);
          while (turn > kPi) turn -= 2 * kPi;
          while (turn <= -kPi) turn += 2 * kPi;
          double interior = kPi - turn;
          if (interior < 1e-9 || interior > 2 * kPi - 1e-9)
            throw BadParameters("degenerate polygon corner");
          float_angle += interior;
        }

        // The partner of the incoming edge starts at the next corner of this
        // vertex class.
        EdgeRef next = partner({p, in_edge});
        p = next.poly;
        i = next.edge;
      } while (!(p == static_cast<int>(p0) && i == static_cast<int>(i0)));

      double total = quarters * (kPi / 2) + float_angle;
      int k;
      if (all_exact) {
        if (quarters % 4 != 0)
          throw NonIntegerGenus("vertex class angle is not a multiple of 2*pi");
        k = quarters / 4;
      } else {
        k = static_cast<int>(std::lround(total / (2 * kPi)));
        if (k < 1 || std::fabs(total - 2 * kPi * k) > 1e-6)
          throw NonIntegerGenus("vertex class angle is not a multiple of 2*pi");
      }
      cls.angle_half_turns = 2 * k;
      cls.exact_angle = all_exact;
      classes_.push_back(std::move(cls));
    }
  }

  // Euler characteristic of the glued complex, then Gauss-Bonnet as a
  // cross-check on the measured cone angles.
  const long long V = static_cast<long long>(classes_.size());
  const long long E = static_cast<long long>(pairings_.size());
  const long long F = static_cast<long long>(fpolys_.size());
  const long long chi = V - E + F;
  if (chi > 2 || (2 - chi) % 2 != 0)
    throw NonIntegerGenus("pairing complex has no valid genus");
  genus_ = static_cast<int>((2 - chi) / 2);

  long long excess = 0;
  for (const auto& c : classes_) excess += c.multiplicity() - 1;
  if (excess != 2LL * genus_ - 2)
    throw NonIntegerGenus("cone angles disagree with the Euler characteristic");
}

const std::vector<std::vector<Vec2>>& TranslationSurface::polygons() const {
  if (!exact_) throw OutOfDomain("float-mode surface has no exact vertices");
  return polys_;
}

const Vec2& TranslationSurface::vertex(int p, int i) const {
  if (!exact_) throw OutOfDomain("float-mode surface has no exact vertices");
  return polys_.at(p).at(i);
}

Vec2 TranslationSurface::edge_vector(EdgeRef e) const {
  const auto& poly = polygons().at(e.poly);
  return poly.at((e.edge + 1) % poly.size()) - poly.at(e.edge);
}

Vec2d TranslationSurface::edge_vector_hint(EdgeRef e) const {
  const auto& poly = fpolys_.at(e.poly);
  const Vec2d& a = poly.at(e.edge);
  const Vec2d& b = poly.at((e.edge + 1) % poly.size());
  return {b.x - a.x, b.y - a.y};
}

EdgeRef TranslationSurface::partner(EdgeRef e) const {
  int k = partner_of_.at(e.poly).at(e.edge);
  const Pairing& pr = pairings_[k];
  return pr.a == e ? pr.b : pr.a;
}

Vec2 TranslationSurface::pairing_translation(EdgeRef from) const {
  EdgeRef to = partner(from);
  const auto& dst = polygons().at(to.poly);
  // Start of `from` lands on the end of the partner edge (opposite traversal).
  return dst.at((to.edge + 1) % dst.size()) - vertex(from.poly, from.edge);
}

Vec2d TranslationSurface::pairing_translation_hint(EdgeRef from) const {
  EdgeRef to = partner(from);
  const auto& dst = fpolys_.at(to.poly);
  Vec2d end = dst.at((to.edge + 1) % dst.size());
  Vec2d src = fpolys_.at(from.poly).at(from.edge);
  return {end.x - src.x, end.y - src.y};
}

const BasisPtr& TranslationSurface::basis() const {
  if (!exact_) throw OutOfDomain("float-mode surface has no basis");
  return polys_[0][0].x.basis();
}

std::vector<VertexClass> TranslationSurface::cone_points() const {
  std::vector<VertexClass> out;
  for (const auto& c : classes_)
    if (c.is_cone()) out.push_back(c);
  return out;
}

TranslationSurface TranslationSurface::transposed() const {
  if (!exact_) throw OutOfDomain("transpose needs an exact surface");
  // Swapping x and y reflects the plane, so each polygon is reversed (keeping
  // its first vertex) to stay counterclockwise; edge k becomes edge n-1-k.
  std::vector<std::vector<Vec2>> tp;
  tp.reserve(polys_.size());
  for (const auto& poly : polys_) {
    const std::size_t n = poly.size();
    std::vector<Vec2> rev;
    rev.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
      const Vec2& v = poly[(n - i) % n];
      rev.emplace_back(v.y, v.x);
    }
    tp.push_back(std::move(rev));
  }
  auto remap = [&](EdgeRef e) {
    int n = static_cast<int>(polys_[e.poly].size());
    return EdgeRef{e.poly, n - 1 - e.edge};
  };
  std::vector<Pairing> tpair;
  tpair.reserve(pairings_.size());
  for (const auto& pr : pairings_) tpair.push_back({remap(pr.a), remap(pr.b)});
  return TranslationSurface(std::move(tp), std::move(tpair), provenance_);
}

FieldElement exact_polygon_area(const std::vector<Vec2>& vertices) {
  if (vertices.size() < 3) throw BadParameters("area of a degenerate polygon");
  FieldElement twice = FieldElement::zero(vertices[0].x.basis());
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    const Vec2& a = vertices[i];
    const Vec2& b = vertices[(i + 1) % vertices.size()];
    twice += a.x * b.y - b.x * a.y;
  }
  return twice / Rational(2);
}

double polygon_area_hint(const std::vector<Vec2d>& vertices) {
  double twice = 0.0;
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    const Vec2d& a = vertices[i];
    const Vec2d& b = vertices[(i + 1) % vertices.size()];
    twice += a.x * b.y - b.x * a.y;
  }
  return twice / 2.0;
}

}  // namespace veechmix
