#pragma once

#include <vector>

#include "veechmix/surface.hpp"

namespace veechmix {

// Simple counterclockwise polygon whose interior angles are declared as
// rational multiples of pi. Vertices are exact; the declared fractions are
// checked against the float hints and must sum to n-2 exactly. The first
// side must run along the positive x axis (standard position), which pins
// every side direction to an exact rational multiple of pi.
class RationalPolygon {
 public:
  RationalPolygon(std::vector<Vec2> vertices, std::vector<Rational> angle_fractions);

  std::size_t side_count() const { return vertices_.size(); }
  const std::vector<Vec2>& vertices() const { return vertices_; }
  const BasisPtr& basis() const { return vertices_.front().x.basis(); }
  // Interior angle at vertex i, in units of pi.
  const std::vector<Rational>& angle_fractions() const { return angle_fractions_; }
  // Direction of side i (from vertex i to i+1), in units of pi, in [0, 2).
  const std::vector<Rational>& side_angle_fractions() const { return side_angles_; }

 private:
  std::vector<Vec2> vertices_;
  std::vector<Rational> angle_fractions_;
  std::vector<Rational> side_angles_;
};

RationalPolygon square_polygon();
RationalPolygon regular_triangle_polygon();
// Triangle with angles (pi/4, pi/4, pi/2).
RationalPolygon right_isoceles_polygon();
// Hexagon [0,b]^2 minus [a,b]^2, needs 0 < a < b.
RationalPolygon l_shape_polygon(const Rational& a, const Rational& b);

// theta -> rot*pi + theta, or theta -> rot*pi - theta when reflect is set.
struct GroupElement {
  int reflect = 0;
  Rational rot = Rational(0);  // units of pi, normalized to [0, 2)
  bool operator==(const GroupElement& rhs) const {
    return reflect == rhs.reflect && rot == rhs.rot;
  }
  bool operator!=(const GroupElement& rhs) const { return !(*this == rhs); }
};

// Finite group generated by the reflections across the polygon's side
// directions. Finite exactly because the side angles are rational in pi.
class CoxeterGroup {
 public:
  static CoxeterGroup from_polygon(const RationalPolygon& poly);

  static GroupElement identity() { return GroupElement{}; }
  static GroupElement compose(const GroupElement& g, const GroupElement& h);

  const std::vector<GroupElement>& elements() const { return elements_; }
  const std::vector<GroupElement>& generators() const { return generators_; }
  std::size_t order() const { return elements_.size(); }
  std::size_t element_index(const GroupElement& g) const;

 private:
  std::vector<GroupElement> elements_;
  std::vector<GroupElement> generators_;
};

inline CoxeterGroup coxeter_group(const RationalPolygon& poly) {
  return CoxeterGroup::from_polygon(poly);
}

// One polygon copy per group element, copies glued side-to-side along the
// reflections. Exact when every group rotation is a quarter-turn multiple;
// otherwise the copies carry float coordinates (the combinatorics, vertex
// classes and genus stay exact either way).
TranslationSurface unfold(const RationalPolygon& poly);

// Nearest fraction with denominator <= max_den, within tol. For turning a
// float angle measurement into a declared fraction of pi.
Rational rationalize_angle_fraction(double fraction_of_pi, long long max_den = 64,
                                    double tol = 1e-9);

}  // namespace veechmix
