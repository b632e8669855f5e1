#pragma once

#include <cstddef>
#include <vector>

#include "veechmix/iet.hpp"
#include "veechmix/surface.hpp"

namespace veechmix {

// Straight-line flow direction. Exact tracing needs dy != 0 and follows the
// special-flow convention: progress is measured as vertical rise, so the
// return time over a suspension rectangle equals its height.
struct Direction {
  FieldElement dx, dy;
};

struct SurfacePoint {
  int poly = 0;
  Vec2 position;
};

struct TraceResult {
  SurfacePoint end;
  FieldElement rise;
  std::size_t crossings = 0;  // edge identifications taken, wall wraps included
};

// Flow `start` along `dir` for `rise` units of |dy|. Start must lie inside
// its polygon or on a bottom edge. Exact surfaces with axis-aligned edges
// only; symbolic slopes additionally need every visited polygon to be a
// full-width cylinder (side walls glued to each other). Ends exactly on a
// gluing seam resolve to the landing side, matching the half-open interval
// convention. Throws SingularOrbit on a vertex hit, TimeBudgetExceeded when
// the identification count passes max_steps.
TraceResult trace(const TranslationSurface& s, const SurfacePoint& start,
                  const Direction& dir, const FieldElement& rise,
                  std::size_t max_steps = 1u << 20);

// Float-coordinate tracing on the hint geometry (works in both modes, any
// polygon shapes). Orbits passing within 1e-12 of a vertex stop with
// SingularOrbit. arclength accumulates |(dx/dy, 1)| per unit rise.
struct FloatTraceResult {
  int poly = 0;
  Vec2d position;
  double rise = 0.0;
  double arclength = 0.0;
  std::size_t crossings = 0;
};

FloatTraceResult trace_hint(const TranslationSurface& s, int poly, Vec2d start,
                            Vec2d dir, double rise, std::size_t max_steps = 1u << 20);

// One bottom edge lying on a section, with its absolute x span.
struct SectionPiece {
  EdgeRef edge;
  FieldElement x_start, x_end;
};

// Horizontal cross-section: the bottom edges at one height, which must tile
// an interval [x0, x1) without gaps. Section coordinates are relative to x0.
struct Section {
  FieldElement level;
  std::vector<SectionPiece> pieces;

  const FieldElement& x0() const { return pieces.front().x_start; }
  const FieldElement& x1() const { return pieces.back().x_end; }
  FieldElement width() const { return x1() - x0(); }
  SurfacePoint locate(const FieldElement& u) const;
};

Section horizontal_section(const TranslationSurface& s, const FieldElement& level);

struct ReturnMapResult {
  IET iet;                          // first-return map in section coordinates
  std::vector<FieldElement> times;  // rise until return, one per interval
  Section section;
  Direction direction;
};

// First-return map of the upward flow along `dir` to the horizontal section
// at `level`. Cut candidates come from the section corners and from tracing
// every polygon corner backward to the section; each interval is probed at
// two interior points and the probes must agree exactly (SingularSection
// otherwise). Throws NoReturn when an orbit exhausts max_steps first.
ReturnMapResult first_return_map(const TranslationSurface& s, const Direction& dir,
                                 const FieldElement& level,
                                 std::size_t max_steps = 1u << 20);

inline const std::vector<FieldElement>& return_times_vector(const ReturnMapResult& r) {
  return r.times;
}

}  // namespace veechmix
