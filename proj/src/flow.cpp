#include "veechmix/flow.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <numeric>
#include <optional>
#include <utility>

#include "veechmix/errors.hpp"

namespace veechmix {

namespace {

// Axis codes shared with the vertex-angle machinery: E=0, N=1, W=2, S=3.
int axis_of(const Vec2& v) {
  const bool xz = v.x.is_zero();
  const bool yz = v.y.is_zero();
  if (xz && yz) return -1;
  if (yz) return v.x.sign() > 0 ? 0 : 2;
  if (xz) return v.y.sign() > 0 ? 1 : 3;
  return -1;
}

void require_axis_aligned(const TranslationSurface& s) {
  for (int p = 0; p < static_cast<int>(s.polygon_count()); ++p)
    for (int e = 0; e < static_cast<int>(s.vertex_count(p)); ++e)
      if (axis_of(s.edge_vector({p, e})) < 0)
        throw UnrepresentableProduct("exact flow tracing needs axis-aligned edges");
}

// Slope as x displacement per unit of rise, rise being |dy| progress.
struct SlopeInfo {
  FieldElement per_rise;
  bool rational = true;
  int sigma = +1;  // +1 traces upward, -1 downward
};

SlopeInfo resolve_slope(const TranslationSurface& s, const Direction& dir) {
  if (dir.dx.basis() != s.basis() || dir.dy.basis() != s.basis())
    throw BasisMismatch("direction must use the surface basis");
  SlopeInfo out;
  out.sigma = dir.dy.sign();
  if (out.sigma == 0)
    throw BadParameters("flow direction needs dy != 0; transpose the surface for horizontal flow");
  if (dir.dy.is_rational()) {
    out.per_rise = dir.dx / (dir.dy.as_rational() * make_rational(out.sigma));
  } else {
    // Irrational dy: dx must be a rational multiple of it or the slope
    // leaves the span.
    Rational c = make_rational(0);
    for (std::size_t i = 0; i < dir.dy.coords().size(); ++i) {
      if (dir.dy.coord(i) != 0) {
        c = dir.dx.coord(i) / dir.dy.coord(i);
        break;
      }
    }
    if (dir.dx != dir.dy * c)
      throw UnrepresentableProduct("direction slope leaves the rational span; transpose the surface");
    out.per_rise = FieldElement::from_rational(s.basis(), c * make_rational(out.sigma));
  }
  out.rational = out.per_rise.is_rational();
  return out;
}

// Full-width cylinder: horizontal edges on exactly two levels, one wall on
// each side spanning the whole height, walls glued to each other. Symbolic
// slopes are confined to these so side crossings reduce to an integer wrap
// count instead of a division by the slope.
struct StripInfo {
  bool ok = false;
  FieldElement ybot, ytop, xmin, xmax;
};

class Engine {
 public:
  Engine(const TranslationSurface& s, SlopeInfo sl) : s_(s), sl_(std::move(sl)) {}

  const SlopeInfo& slope() const { return sl_; }

  struct Exit {
    EdgeRef edge;
    Vec2 point;  // on `edge`, strictly inside it
    FieldElement rise;
    long long wraps = 0;
  };

  Exit exit_polygon(int p, const Vec2& pos) {
    return sl_.rational ? exit_general(p, pos) : exit_strip(p, pos);
  }

  const StripInfo& strip(int p) {
    if (strips_.empty()) strips_.resize(s_.polygon_count());
    auto& slot = strips_[p];
    if (!slot) {
      StripInfo st;
      st.ok = compute_strip(p, st);
      slot = std::move(st);
    }
    return *slot;
  }

  std::pair<FieldElement, long long> reduce_mod_width(const StripInfo& st, FieldElement x) const {
    const FieldElement w = st.xmax - st.xmin;
    long long k = 0;
    const double wh = w.hint();
    if (wh > 1e-300) k = static_cast<long long>(std::floor((x.hint() - st.xmin.hint()) / wh));
    FieldElement xr = x - w * make_rational(k);
    int guard = 0;
    while (FieldElement::compare(xr, st.xmin) < 0) {
      --k;
      xr += w;
      if (++guard > 1000) throw InternalError("mod-width reduction diverged");
    }
    while (FieldElement::compare(xr, st.xmax) >= 0) {
      ++k;
      xr -= w;
      if (++guard > 1000) throw InternalError("mod-width reduction diverged");
    }
    return {std::move(xr), k};
  }

 private:
  Exit exit_general(int p, const Vec2& pos) {
    const auto& poly = s_.polygons()[p];
    const int n = static_cast<int>(poly.size());
    const Rational spr = sl_.per_rise.as_rational();
    const Rational sig = make_rational(sl_.sigma);
    std::optional<Exit> best;
    bool best_vertex = false;
    for (int e = 0; e < n; ++e) {
      const Vec2& a = poly[e];
      const Vec2& b = poly[(e + 1) % n];
      FieldElement rise, xh, yh;
      bool vertex_hit = false;
      Vec2 hit;
      if (a.y == b.y) {
        rise = (a.y - pos.y) * sig;
        if (rise.sign() <= 0) continue;
        xh = pos.x + sl_.per_rise * rise;
        const bool a_low = FieldElement::compare(a.x, b.x) <= 0;
        const FieldElement& lo = a_low ? a.x : b.x;
        const FieldElement& hi = a_low ? b.x : a.x;
        const int c1 = FieldElement::compare(xh, lo);
        const int c2 = FieldElement::compare(xh, hi);
        if (c1 < 0 || c2 > 0) continue;
        vertex_hit = (c1 == 0 || c2 == 0);
        hit = Vec2(xh, a.y);
      } else {
        if (spr == 0) continue;
        rise = (a.x - pos.x) / spr;
        if (rise.sign() <= 0) continue;
        yh = pos.y + rise * sig;
        const bool a_low = FieldElement::compare(a.y, b.y) <= 0;
        const FieldElement& lo = a_low ? a.y : b.y;
        const FieldElement& hi = a_low ? b.y : a.y;
        const int c1 = FieldElement::compare(yh, lo);
        const int c2 = FieldElement::compare(yh, hi);
        if (c1 < 0 || c2 > 0) continue;
        vertex_hit = (c1 == 0 || c2 == 0);
        hit = Vec2(a.x, yh);
      }
      if (!best) {
        best = Exit{{p, e}, hit, rise, 0};
        best_vertex = vertex_hit;
        continue;
      }
      const int cmp = FieldElement::compare(rise, best->rise);
      if (cmp < 0) {
        best = Exit{{p, e}, hit, rise, 0};
        best_vertex = vertex_hit;
      } else if (cmp == 0 && vertex_hit) {
        best_vertex = true;
      }
    }
    if (!best) throw InternalError("flow ray found no polygon exit");
    if (best_vertex) throw SingularOrbit("orbit hits a polygon vertex");
    return *best;
  }

  Exit exit_strip(int p, const Vec2& pos) {
    const StripInfo& st = strip(p);
    if (!st.ok)
      throw UnrepresentableProduct("symbolic slopes need full-width cylinder polygons");
    const FieldElement& target = sl_.sigma > 0 ? st.ytop : st.ybot;
    const FieldElement rise = (target - pos.y) * make_rational(sl_.sigma);
    if (rise.sign() <= 0) throw InternalError("strip transit with nonpositive rise");
    if (!rise.is_rational())
      throw UnrepresentableProduct("symbolic slope across an irrational strip height");
    FieldElement xh = pos.x + sl_.per_rise * rise.as_rational();
    auto [xr, wraps] = reduce_mod_width(st, std::move(xh));
    const auto& poly = s_.polygons()[p];
    const int n = static_cast<int>(poly.size());
    for (int e = 0; e < n; ++e) {
      const Vec2& a = poly[e];
      const Vec2& b = poly[(e + 1) % n];
      if (a.y != b.y || a.y != target) continue;
      const bool a_low = FieldElement::compare(a.x, b.x) <= 0;
      const FieldElement& lo = a_low ? a.x : b.x;
      const FieldElement& hi = a_low ? b.x : a.x;
      const int c1 = FieldElement::compare(xr, lo);
      const int c2 = FieldElement::compare(xr, hi);
      if (c1 < 0 || c2 > 0) continue;
      if (c1 == 0 || c2 == 0) throw SingularOrbit("orbit hits a polygon vertex");
      return Exit{{p, e}, Vec2(xr, target), rise, wraps};
    }
    throw InternalError("strip transit missed every horizontal edge");
  }

  bool compute_strip(int p, StripInfo& st) const {
    const auto& poly = s_.polygons()[p];
    const int n = static_cast<int>(poly.size());
    st.xmin = st.xmax = poly[0].x;
    st.ybot = st.ytop = poly[0].y;
    for (const Vec2& v : poly) {
      if (FieldElement::compare(v.x, st.xmin) < 0) st.xmin = v.x;
      if (FieldElement::compare(v.x, st.xmax) > 0) st.xmax = v.x;
      if (FieldElement::compare(v.y, st.ybot) < 0) st.ybot = v.y;
      if (FieldElement::compare(v.y, st.ytop) > 0) st.ytop = v.y;
    }
    int left = -1, right = -1;
    for (int e = 0; e < n; ++e) {
      const Vec2& a = poly[e];
      const Vec2& b = poly[(e + 1) % n];
      if (a.y == b.y) {
        if (a.y != st.ybot && a.y != st.ytop) return false;
        continue;
      }
      // vertical edge: must be a full-height wall
      const bool a_low = FieldElement::compare(a.y, b.y) <= 0;
      if ((a_low ? a.y : b.y) != st.ybot || (a_low ? b.y : a.y) != st.ytop) return false;
      if (a.x == st.xmin) {
        if (left >= 0) return false;
        left = e;
      } else if (a.x == st.xmax) {
        if (right >= 0) return false;
        right = e;
      } else {
        return false;
      }
    }
    if (left < 0 || right < 0) return false;
    return s_.partner({p, left}) == EdgeRef{p, right};
  }

  const TranslationSurface& s_;
  SlopeInfo sl_;
  std::vector<std::optional<StripInfo>> strips_;
};

// Half-quarter compass position of the downward germ direction: axes sit at
// even values (E=0, N=2, W=4, S=6), open quadrants at odd ones.
int germ_half_quarters(const SlopeInfo& down) {
  const int sx = down.per_rise.sign();
  return sx < 0 ? 5 : (sx == 0 ? 6 : 7);
}

// Whether the germ direction points strictly into the interior sector at
// corner i of polygon p. Along-edge germs return false; their orbits slide
// down a wall and are covered by other corners' candidates.
bool germ_enters(const TranslationSurface& s, int p, int i, int germ_hq) {
  const int n = static_cast<int>(s.vertex_count(p));
  const int ax_in = axis_of(s.edge_vector({p, (i + n - 1) % n}));
  const int ax_out = axis_of(s.edge_vector({p, i}));
  const int turn = ((ax_out - ax_in) % 4 + 4) % 4;
  if (turn == 2) throw InternalError("degenerate polygon corner");
  const int quarters = ((2 - turn) % 4 + 4) % 4;
  const int rel = ((germ_hq - 2 * ax_out) % 8 + 8) % 8;
  return rel > 0 && rel < 2 * quarters;
}

}  // namespace

TraceResult trace(const TranslationSurface& s, const SurfacePoint& start,
                  const Direction& dir, const FieldElement& rise, std::size_t max_steps) {
  if (!s.exact()) throw OutOfDomain("exact tracing needs an exact surface; use trace_hint");
  require_axis_aligned(s);
  if (rise.basis() != s.basis()) throw BasisMismatch("rise must use the surface basis");
  if (rise.sign() < 0) throw BadParameters("rise must be nonnegative");
  if (start.poly < 0 || start.poly >= static_cast<int>(s.polygon_count()))
    throw BadParameters("start polygon index out of range");

  Engine eng(s, resolve_slope(s, dir));
  const SlopeInfo& sl = eng.slope();
  SurfacePoint cur = start;
  FieldElement remaining = rise;
  std::size_t crossings = 0;
  std::size_t steps = 0;
  while (remaining.sign() > 0) {
    if (++steps > max_steps) throw TimeBudgetExceeded("flow step budget exhausted");
    Engine::Exit ex = eng.exit_polygon(cur.poly, cur.position);
    if (FieldElement::compare(ex.rise, remaining) > 0) {
      FieldElement xe = cur.position.x + sl.per_rise * remaining;
      FieldElement ye = cur.position.y + remaining * make_rational(sl.sigma);
      if (!sl.rational) {
        auto [xr, wraps] = eng.reduce_mod_width(eng.strip(cur.poly), std::move(xe));
        xe = std::move(xr);
        crossings += static_cast<std::size_t>(std::llabs(wraps));
      }
      cur.position = Vec2(std::move(xe), std::move(ye));
      break;
    }
    remaining -= ex.rise;
    crossings += static_cast<std::size_t>(std::llabs(ex.wraps)) + 1;
    cur.position = ex.point + s.pairing_translation(ex.edge);
    cur.poly = s.partner(ex.edge).poly;
  }
  return {std::move(cur), rise, crossings};
}

FloatTraceResult trace_hint(const TranslationSurface& s, int poly, Vec2d start, Vec2d dir,
                            double rise, std::size_t max_steps) {
  if (!(dir.y > 0)) throw BadParameters("trace_hint needs dy > 0");
  if (!(rise >= 0)) throw BadParameters("rise must be nonnegative");
  if (poly < 0 || poly >= static_cast<int>(s.polygon_count()))
    throw BadParameters("start polygon index out of range");
  constexpr double kSnap = 1e-12;
  const double slope = dir.x / dir.y;
  const double speed = std::sqrt(1.0 + slope * slope);

  FloatTraceResult out;
  out.poly = poly;
  out.position = start;
  double remaining = rise;
  std::size_t steps = 0;
  while (remaining > 0) {
    if (++steps > max_steps) throw TimeBudgetExceeded("flow step budget exhausted");
    const int n = static_cast<int>(s.vertex_count(out.poly));
    double best_t = std::numeric_limits<double>::infinity();
    int best_e = -1;
    bool best_vertex = false;
    for (int e = 0; e < n; ++e) {
      const Vec2d a = s.vertex_hint(out.poly, e);
      const Vec2d b = s.vertex_hint(out.poly, (e + 1) % n);
      const double ex = b.x - a.x, ey = b.y - a.y;
      const double denom = slope * ey - ex;  // cross((slope,1), edge)
      if (std::fabs(denom) < 1e-15) continue;
      const double t = ((a.x - out.position.x) * ey - (a.y - out.position.y) * ex) / denom;
      if (t <= kSnap) continue;
      const double r = ((out.position.x - a.x) - (out.position.y - a.y) * slope) / (-denom);
      if (r < -kSnap || r > 1.0 + kSnap) continue;
      const bool vtx = (r < kSnap || r > 1.0 - kSnap);
      if (t < best_t - kSnap) {
        best_t = t;
        best_e = e;
        best_vertex = vtx;
      } else if (t < best_t + kSnap) {
        best_vertex = best_vertex || vtx;
        if (t < best_t) {
          best_t = t;
          best_e = e;
        }
      }
    }
    if (best_e < 0) throw InternalError("float ray found no polygon exit");
    if (best_t > remaining) {
      out.position.x += slope * remaining;
      out.position.y += remaining;
      out.rise += remaining;
      out.arclength += remaining * speed;
      break;
    }
    if (best_vertex) throw SingularOrbit("orbit passes a vertex within float tolerance");
    out.position.x += slope * best_t;
    out.position.y += best_t;
    out.rise += best_t;
    out.arclength += best_t * speed;
    const Vec2d tau = s.pairing_translation_hint({out.poly, best_e});
    out.position.x += tau.x;
    out.position.y += tau.y;
    out.poly = s.partner({out.poly, best_e}).poly;
    out.crossings += 1;
    remaining -= best_t;
  }
  return out;
}

SurfacePoint Section::locate(const FieldElement& u) const {
  const FieldElement x = x0() + u;
  for (const auto& pc : pieces) {
    if (FieldElement::compare(x, pc.x_start) >= 0 && FieldElement::compare(x, pc.x_end) < 0)
      return {pc.edge.poly, Vec2(x, level)};
  }
  throw OutOfDomain("section coordinate outside [0, width)");
}

Section horizontal_section(const TranslationSurface& s, const FieldElement& level) {
  if (!s.exact()) throw OutOfDomain("sections need an exact surface");
  if (level.basis() != s.basis()) throw BasisMismatch("level must use the surface basis");
  std::vector<SectionPiece> pieces;
  for (int p = 0; p < static_cast<int>(s.polygon_count()); ++p) {
    const int n = static_cast<int>(s.vertex_count(p));
    for (int e = 0; e < n; ++e) {
      const Vec2& a = s.vertex(p, e);
      const Vec2& b = s.vertex(p, (e + 1) % n);
      // east-pointing horizontal edge: polygon interior above it
      if (a.y == level && b.y == level && FieldElement::compare(a.x, b.x) < 0)
        pieces.push_back({{p, e}, a.x, b.x});
    }
  }
  if (pieces.empty()) throw BadParameters("no bottom edges at this level");
  std::sort(pieces.begin(), pieces.end(), [](const SectionPiece& a, const SectionPiece& b) {
    return FieldElement::compare(a.x_start, b.x_start) < 0;
  });
  for (std::size_t i = 0; i + 1 < pieces.size(); ++i) {
    if (pieces[i].x_end != pieces[i + 1].x_start)
      throw BadParameters("section pieces must tile one interval");
  }
  return {level, std::move(pieces)};
}

ReturnMapResult first_return_map(const TranslationSurface& s, const Direction& dir,
                                 const FieldElement& level, std::size_t max_steps) {
  if (!s.exact()) throw OutOfDomain("return maps need an exact surface");
  require_axis_aligned(s);
  Section sec = horizontal_section(s, level);
  const SlopeInfo up = resolve_slope(s, dir);
  if (up.sigma < 0) throw BadParameters("return maps trace upward; flip the direction");
  Engine eng_up(s, up);
  Engine eng_down(s, resolve_slope(s, Direction{-dir.dx, -dir.dy}));

  auto is_seam = [&sec](EdgeRef e) {
    for (const auto& pc : sec.pieces)
      if (pc.edge == e) return true;
    return false;
  };

  const FieldElement w = sec.width();
  const FieldElement& x0 = sec.x0();

  std::vector<FieldElement> cuts;
  auto add_cut = [&](FieldElement u) {
    while (u.sign() < 0) u += w;
    while (FieldElement::compare(u, w) >= 0) u -= w;
    auto it = std::lower_bound(cuts.begin(), cuts.end(), u,
                               [](const FieldElement& a, const FieldElement& b) {
                                 return FieldElement::compare(a, b) < 0;
                               });
    if (it != cuts.end() && *it == u) return;
    cuts.insert(it, std::move(u));
  };

  // The map breaks where an orbit leaves a section corner, and where one
  // arrives at any polygon corner: trace each corner germ backward down to
  // the section. Germs dying on another vertex are that vertex's business.
  for (const auto& pc : sec.pieces) add_cut(pc.x_start - x0);
  const int ghq = germ_half_quarters(eng_down.slope());
  for (int p = 0; p < static_cast<int>(s.polygon_count()); ++p) {
    const int n = static_cast<int>(s.vertex_count(p));
    for (int i = 0; i < n; ++i) {
      if (!germ_enters(s, p, i, ghq)) continue;
      int cp = p;
      Vec2 pos = s.vertex(p, i);
      std::optional<FieldElement> landing;
      for (std::size_t steps = 0;;) {
        if (++steps > max_steps)
          throw NoReturn("corner orbit did not reach the section within the step budget");
        Engine::Exit ex;
        try {
          ex = eng_down.exit_polygon(cp, pos);
        } catch (const SingularOrbit&) {
          break;
        }
        if (is_seam(ex.edge)) {
          landing = ex.point.x - x0;
          break;
        }
        pos = ex.point + s.pairing_translation(ex.edge);
        cp = s.partner(ex.edge).poly;
      }
      if (landing) add_cut(std::move(*landing));
    }
  }

  // Probe each candidate interval twice; both probes must see the same
  // translation and return time or a cut is missing.
  auto probe = [&](const FieldElement& u) -> std::pair<FieldElement, FieldElement> {
    SurfacePoint cur = sec.locate(u);
    FieldElement tau = FieldElement::zero(s.basis());
    try {
      for (std::size_t steps = 0;;) {
        if (++steps > max_steps)
          throw NoReturn("orbit did not return to the section within the step budget");
        Engine::Exit ex = eng_up.exit_polygon(cur.poly, cur.position);
        tau += ex.rise;
        const EdgeRef tgt = s.partner(ex.edge);
        cur = {tgt.poly, ex.point + s.pairing_translation(ex.edge)};
        if (is_seam(tgt)) return {cur.position.x - x0 - u, std::move(tau)};
      }
    } catch (const SingularOrbit&) {
      throw SingularSection("probe orbit hits a vertex; section cuts are incomplete");
    }
  };

  struct Piece {
    FieldElement a, b, shift, time;
  };
  std::vector<Piece> pieces;
  for (std::size_t i = 0; i < cuts.size(); ++i) {
    const FieldElement& a = cuts[i];
    const FieldElement& b = (i + 1 < cuts.size()) ? cuts[i + 1] : w;
    auto [c1, t1] = probe(a + (b - a) / make_rational(2));
    auto [c2, t2] = probe(a + (b - a) / make_rational(4));
    if (c1 != c2 || t1 != t2)
      throw SingularSection("return map is not constant between consecutive cuts");
    pieces.push_back({a, b, std::move(c1), std::move(t1)});
  }

  // Candidate generation over-refines; heal it. The origin is always a cut,
  // so no merge can run across the wrap point.
  std::vector<Piece> merged;
  for (auto& pc : pieces) {
    if (!merged.empty() && merged.back().shift == pc.shift && merged.back().time == pc.time)
      merged.back().b = pc.b;
    else
      merged.push_back(std::move(pc));
  }

  const std::size_t m = merged.size();
  std::vector<std::size_t> order(m);
  std::iota(order.begin(), order.end(), 0u);
  std::sort(order.begin(), order.end(), [&merged](std::size_t i, std::size_t j) {
    return FieldElement::compare(merged[i].a + merged[i].shift, merged[j].a + merged[j].shift) < 0;
  });
  FieldElement cursor = FieldElement::zero(s.basis());
  std::vector<int> images(m);
  for (std::size_t r = 0; r < m; ++r) {
    const Piece& pc = merged[order[r]];
    if (pc.a + pc.shift != cursor)
      throw SingularSection("return images do not tile the section");
    cursor += pc.b - pc.a;
    images[order[r]] = static_cast<int>(r) + 1;
  }

  std::vector<FieldElement> lengths, times;
  lengths.reserve(m);
  times.reserve(m);
  for (const Piece& pc : merged) {
    lengths.push_back(pc.b - pc.a);
    times.push_back(pc.time);
  }
  IET iet(std::move(lengths), Permutation(std::move(images)));
  for (std::size_t i = 0; i < m; ++i) {
    if (iet.translations()[i] != merged[i].shift)
      throw InternalError("return map translations disagree with the exchange");
  }
  return {std::move(iet), std::move(times), std::move(sec), dir};
}

}  // namespace veechmix
