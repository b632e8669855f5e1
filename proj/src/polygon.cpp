#include "veechmix/polygon.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <cstdlib>
#include <deque>
#include <utility>

#include "veechmix/contfrac.hpp"
#include "veechmix/errors.hpp"

namespace veechmix {
namespace {

constexpr double kPi = 3.14159265358979323846;

Rational mod_two(const Rational& r) {
  return r - Rational(2) * Rational(floor_int(r / Rational(2)));
}

// Proper or touching intersection of segments ab and cd, on float hints.
bool segments_cross(Vec2d a, Vec2d b, Vec2d c, Vec2d d) {
  auto orient = [](Vec2d p, Vec2d q, Vec2d r) {
    const double v = (q.x - p.x) * (r.y - p.y) - (q.y - p.y) * (r.x - p.x);
    if (v > 1e-12) return 1;
    if (v < -1e-12) return -1;
    return 0;
  };
  auto on_segment = [](Vec2d p, Vec2d q, Vec2d r) {
    return std::min(p.x, q.x) - 1e-12 <= r.x && r.x <= std::max(p.x, q.x) + 1e-12 &&
           std::min(p.y, q.y) - 1e-12 <= r.y && r.y <= std::max(p.y, q.y) + 1e-12;
  };
  const int o1 = orient(a, b, c);
  const int o2 = orient(a, b, d);
  const int o3 = orient(c, d, a);
  const int o4 = orient(c, d, b);
  if (o1 != o2 && o3 != o4) return true;
  if (o1 == 0 && on_segment(a, b, c)) return true;
  if (o2 == 0 && on_segment(a, b, d)) return true;
  if (o3 == 0 && on_segment(c, d, a)) return true;
  if (o4 == 0 && on_segment(c, d, b)) return true;
  return false;
}

}  // namespace

RationalPolygon::RationalPolygon(std::vector<Vec2> vertices,
                                 std::vector<Rational> angle_fractions)
    : vertices_(std::move(vertices)), angle_fractions_(std::move(angle_fractions)) {
  const std::size_t n = vertices_.size();
  if (n < 3) throw BadParameters("polygon needs at least three vertices");
  if (angle_fractions_.size() != n) throw BadParameters("need one angle per vertex");

  const BasisPtr& b = vertices_.front().x.basis();
  for (const auto& v : vertices_) {
    if (v.x.basis() != b || v.y.basis() != b) {
      throw BasisMismatch("polygon vertices over different bases");
    }
  }
  Rational total(0);
  for (const auto& f : angle_fractions_) {
    if (f <= 0 || f >= 2) throw BadParameters("interior angles must lie in (0, 2*pi)");
    total += f;
  }
  if (total != Rational(static_cast<long long>(n) - 2)) {
    throw BadParameters("interior angles must sum to (n-2)*pi");
  }
  if (vertices_[1].y != vertices_[0].y ||
      FieldElement::compare(vertices_[1].x, vertices_[0].x) <= 0) {
    throw BadParameters("first side must run along the positive x axis");
  }

  std::vector<Vec2d> h(n);
  for (std::size_t i = 0; i < n; ++i) h[i] = Vec2d{vertices_[i].x.hint(), vertices_[i].y.hint()};

  double area2 = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const auto& p = h[i];
    const auto& q = h[(i + 1) % n];
    area2 += p.x * q.y - q.x * p.y;
  }
  if (area2 <= 0.0) throw BadParameters("vertices must wind counterclockwise");

  // Declared fractions must match what the coordinates say.
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2d prev = h[(i + n - 1) % n];
    const Vec2d cur = h[i];
    const Vec2d next = h[(i + 1) % n];
    const double din = std::atan2(cur.y - prev.y, cur.x - prev.x);
    const double dout = std::atan2(next.y - cur.y, next.x - cur.x);
    double turn = dout - din;
    while (turn > kPi) turn -= 2 * kPi;
    while (turn <= -kPi) turn += 2 * kPi;
    const double interior = kPi - turn;
    if (std::abs(interior - to_double(angle_fractions_[i]) * kPi) > 1e-9) {
      throw BadParameters("declared angle disagrees with the vertex data");
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (j == i + 1 || (i == 0 && j == n - 1)) continue;
      if (segments_cross(h[i], h[(i + 1) % n], h[j], h[(j + 1) % n])) {
        throw BadParameters("polygon sides cross");
      }
    }
  }

  side_angles_.resize(n);
  side_angles_[0] = Rational(0);
  for (std::size_t j = 1; j < n; ++j) {
    side_angles_[j] = mod_two(side_angles_[j - 1] + Rational(1) - angle_fractions_[j]);
  }
}

RationalPolygon square_polygon() {
  const auto b = RealBasis::rationals();
  auto fe = [&](long long v) { return FieldElement::from_rational(b, Rational(v)); };
  std::vector<Vec2> v = {Vec2{fe(0), fe(0)}, Vec2{fe(1), fe(0)}, Vec2{fe(1), fe(1)},
                         Vec2{fe(0), fe(1)}};
  return RationalPolygon(v, std::vector<Rational>(4, Rational(1, 2)));
}

RationalPolygon regular_triangle_polygon() {
  const auto b = RealBasis::make({"1", "rt3"}, {1.0, 1.7320508075688772});
  auto fe = [&](const Rational& c0, const Rational& c1) {
    return FieldElement(b, {c0, c1});
  };
  std::vector<Vec2> v = {Vec2{fe(Rational(0), Rational(0)), fe(Rational(0), Rational(0))},
                         Vec2{fe(Rational(1), Rational(0)), fe(Rational(0), Rational(0))},
                         Vec2{fe(Rational(1, 2), Rational(0)), fe(Rational(0), Rational(1, 2))}};
  return RationalPolygon(v, std::vector<Rational>(3, Rational(1, 3)));
}

RationalPolygon right_isoceles_polygon() {
  const auto b = RealBasis::rationals();
  auto fe = [&](long long v) { return FieldElement::from_rational(b, Rational(v)); };
  std::vector<Vec2> v = {Vec2{fe(0), fe(0)}, Vec2{fe(1), fe(0)}, Vec2{fe(0), fe(1)}};
  return RationalPolygon(v, {Rational(1, 2), Rational(1, 4), Rational(1, 4)});
}

RationalPolygon l_shape_polygon(const Rational& a, const Rational& b) {
  if (!(Rational(0) < a && a < b)) throw BadParameters("need 0 < a < b");
  const auto basis = RealBasis::rationals();
  auto fe = [&](const Rational& r) { return FieldElement::from_rational(basis, r); };
  const Rational z(0);
  std::vector<Vec2> v = {Vec2{fe(z), fe(z)}, Vec2{fe(b), fe(z)}, Vec2{fe(b), fe(a)},
                         Vec2{fe(a), fe(a)}, Vec2{fe(a), fe(b)}, Vec2{fe(z), fe(b)}};
  std::vector<Rational> f(6, Rational(1, 2));
  f[3] = Rational(3, 2);
  return RationalPolygon(v, f);
}

GroupElement CoxeterGroup::compose(const GroupElement& g, const GroupElement& h) {
  GroupElement out;
  out.reflect = g.reflect ^ h.reflect;
  out.rot = mod_two(g.reflect ? Rational(g.rot - h.rot) : Rational(g.rot + h.rot));
  return out;
}

CoxeterGroup CoxeterGroup::from_polygon(const RationalPolygon& poly) {
  CoxeterGroup g;
  BigInt rotation_order(1);
  for (const auto& phi : poly.side_angle_fractions()) {
    g.generators_.push_back(GroupElement{1, mod_two(Rational(2) * phi)});
    rotation_order = boost::multiprecision::lcm(rotation_order, den(phi));
  }

  g.elements_.push_back(identity());
  std::deque<std::size_t> queue = {0};
  while (!queue.empty()) {
    const GroupElement cur = g.elements_[queue.front()];
    queue.pop_front();
    for (const auto& gen : g.generators_) {
      const GroupElement next = compose(cur, gen);
      bool known = false;
      for (const auto& e : g.elements_) {
        if (e == next) {
          known = true;
          break;
        }
      }
      if (!known) {
        g.elements_.push_back(next);
        queue.push_back(g.elements_.size() - 1);
      }
    }
  }

  if (BigInt(g.elements_.size()) != 2 * rotation_order) {
    throw InternalError("reflection group closure has unexpected order");
  }
  return g;
}

std::size_t CoxeterGroup::element_index(const GroupElement& g) const {
  for (std::size_t i = 0; i < elements_.size(); ++i) {
    if (elements_[i] == g) return i;
  }
  throw OutOfDomain("element is not in the group");
}

TranslationSurface unfold(const RationalPolygon& poly) {
  const CoxeterGroup group = CoxeterGroup::from_polygon(poly);
  const std::size_t n = poly.side_count();
  const std::size_t copies = group.order();

  bool quarter_turns_only = true;
  for (const auto& e : group.elements()) {
    if (den(e.rot) > 2) quarter_turns_only = false;
  }

  // Float images of every copy, also used to pick a horizontal stride that
  // keeps copies visually apart (the gluing itself never needs overlap-free
  // placement; pairings compare edge vectors, not positions).
  std::vector<Vec2d> hints(n);
  for (std::size_t i = 0; i < n; ++i) {
    hints[i] = Vec2d{poly.vertices()[i].x.hint(), poly.vertices()[i].y.hint()};
  }
  double extent = 1.0;
  std::vector<std::vector<Vec2d>> fcopies(copies);
  for (std::size_t c = 0; c < copies; ++c) {
    const GroupElement& e = group.elements()[c];
    const double angle = to_double(e.rot) * kPi;
    const double ca = std::cos(angle);
    const double sa = std::sin(angle);
    std::vector<Vec2d> img(n);
    for (std::size_t i = 0; i < n; ++i) {
      double x = hints[i].x;
      double y = e.reflect ? -hints[i].y : hints[i].y;
      img[i] = Vec2d{ca * x - sa * y, sa * x + ca * y};
      extent = std::max({extent, std::abs(img[i].x), std::abs(img[i].y)});
    }
    if (e.reflect) {
      std::vector<Vec2d> rev(n);
      for (std::size_t i = 0; i < n; ++i) rev[i] = img[(n - i) % n];
      img = rev;
    }
    fcopies[c] = std::move(img);
  }
  const long long stride = 2 * static_cast<long long>(std::ceil(extent)) + 1;
  for (std::size_t c = 0; c < copies; ++c) {
    for (auto& v : fcopies[c]) v.x += static_cast<double>(stride) * static_cast<double>(c);
  }

  std::vector<Pairing> pairings;
  for (std::size_t c = 0; c < copies; ++c) {
    const GroupElement& e = group.elements()[c];
    for (std::size_t j = 0; j < n; ++j) {
      const std::size_t d = group.element_index(
          CoxeterGroup::compose(e, group.generators()[j]));
      if (c > d) continue;
      const std::size_t ec = e.reflect ? n - 1 - j : j;
      const std::size_t ed = group.elements()[d].reflect ? n - 1 - j : j;
      pairings.push_back(Pairing{EdgeRef{static_cast<int>(c), static_cast<int>(ec)},
                                 EdgeRef{static_cast<int>(d), static_cast<int>(ed)}});
    }
  }

  const std::string provenance =
      "unfolding, " + std::to_string(copies) + " copies" +
      (quarter_turns_only ? "" : " (float coordinates)");

  if (!quarter_turns_only) {
    return TranslationSurface(fcopies, pairings, provenance);
  }

  const BasisPtr& basis = poly.basis();
  std::vector<std::vector<Vec2>> xcopies(copies);
  for (std::size_t c = 0; c < copies; ++c) {
    const GroupElement& e = group.elements()[c];
    const long long quarters = static_cast<long long>(num(e.rot * Rational(2)));
    std::vector<Vec2> img(n);
    for (std::size_t i = 0; i < n; ++i) {
      FieldElement x = poly.vertices()[i].x;
      FieldElement y = e.reflect ? -poly.vertices()[i].y : poly.vertices()[i].y;
      switch (quarters % 4) {
        case 0: img[i] = Vec2{x, y}; break;
        case 1: img[i] = Vec2{-y, x}; break;
        case 2: img[i] = Vec2{-x, -y}; break;
        default: img[i] = Vec2{y, -x}; break;
      }
    }
    if (e.reflect) {
      std::vector<Vec2> rev(n);
      for (std::size_t i = 0; i < n; ++i) rev[i] = img[(n - i) % n];
      img = rev;
    }
    const FieldElement off =
        FieldElement::from_rational(basis, Rational(stride * static_cast<long long>(c)));
    for (auto& v : img) v.x += off;
    xcopies[c] = std::move(img);
  }
  return TranslationSurface(xcopies, pairings, provenance);
}

Rational rationalize_angle_fraction(double fraction_of_pi, long long max_den, double tol) {
  if (!(fraction_of_pi > 0)) throw NonPositiveInput("angle fraction must be positive");
  for (const auto& c : continued_fraction_convergents(fraction_of_pi, 40)) {
    if (c.m > max_den) break;
    const double approx = static_cast<double>(c.n) / static_cast<double>(c.m);
    if (std::abs(fraction_of_pi - approx) < tol) return c.value();
  }
  throw NonRationalAngle("no small-denominator fraction matches the angle");
}

}  // namespace veechmix
