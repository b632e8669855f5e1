#pragma once

#include <string>
#include <vector>

#include "veechmix/field_element.hpp"

namespace veechmix {

struct Vec2 {
  FieldElement x, y;

  Vec2() = default;
  Vec2(FieldElement xx, FieldElement yy) : x(std::move(xx)), y(std::move(yy)) {}

  friend Vec2 operator+(const Vec2& a, const Vec2& b) { return {a.x + b.x, a.y + b.y}; }
  friend Vec2 operator-(const Vec2& a, const Vec2& b) { return {a.x - b.x, a.y - b.y}; }
  Vec2 operator-() const { return {-x, -y}; }
  bool operator==(const Vec2& rhs) const { return x == rhs.x && y == rhs.y; }
  bool operator!=(const Vec2& rhs) const { return !(*this == rhs); }
  bool is_zero() const { return x.is_zero() && y.is_zero(); }
  std::string to_string() const { return "(" + x.to_string() + ", " + y.to_string() + ")"; }
};

struct Vec2d {
  double x = 0.0;
  double y = 0.0;
};

enum class ArithmeticMode { Exact, Float };

struct EdgeRef {
  int poly = -1;
  int edge = -1;
  bool operator==(const EdgeRef& rhs) const { return poly == rhs.poly && edge == rhs.edge; }
  bool operator!=(const EdgeRef& rhs) const { return !(*this == rhs); }
};

struct Pairing {
  EdgeRef a, b;
};

// One identified vertex of the glued surface: the polygon corners meeting
// there and the total angle around it. angle_half_turns is the angle in units
// of pi (always even: the angle is 2*pi*k). exact_angle marks classes whose
// angle came from exact axis-aligned edge directions rather than atan2.
struct VertexClass {
  std::vector<std::pair<int, int>> corners;  // (polygon, vertex index)
  int angle_half_turns = 0;
  bool exact_angle = false;
  int multiplicity() const { return angle_half_turns / 2; }
  bool is_cone() const { return multiplicity() > 1; }
};

// Closed surface glued from planar polygons along translation-paired edges.
// Flat everywhere except the cone points; the combinatorics (vertex classes,
// genus) are always computed exactly from the pairing structure.
//
// Exact mode keeps every vertex as a FieldElement pair and checks pairings
// with zero tolerance; float mode (for unfoldings whose rotations leave the
// rational span) keeps doubles and checks within 1e-9.
class TranslationSurface {
 public:
  TranslationSurface(std::vector<std::vector<Vec2>> polygons, std::vector<Pairing> pairings,
                     std::string provenance = {});
  TranslationSurface(std::vector<std::vector<Vec2d>> polygons, std::vector<Pairing> pairings,
                     std::string provenance = {});

  ArithmeticMode mode() const { return exact_ ? ArithmeticMode::Exact : ArithmeticMode::Float; }
  bool exact() const { return exact_; }

  std::size_t polygon_count() const { return fpolys_.size(); }
  std::size_t vertex_count(int p) const { return fpolys_.at(p).size(); }

  // Exact accessors; throw OutOfDomain on a float-mode surface.
  const std::vector<std::vector<Vec2>>& polygons() const;
  const Vec2& vertex(int p, int i) const;
  Vec2 edge_vector(EdgeRef e) const;
  // Translation applied to a point crossing edge `from` onto its partner.
  Vec2 pairing_translation(EdgeRef from) const;
  const BasisPtr& basis() const;

  Vec2d vertex_hint(int p, int i) const { return fpolys_.at(p).at(i); }
  Vec2d edge_vector_hint(EdgeRef e) const;
  Vec2d pairing_translation_hint(EdgeRef from) const;

  const std::vector<Pairing>& pairings() const { return pairings_; }
  EdgeRef partner(EdgeRef e) const;

  const std::vector<VertexClass>& vertex_classes() const { return classes_; }
  int vertex_class_of(int p, int i) const { return class_of_.at(p).at(i); }
  std::vector<VertexClass> cone_points() const;

  int genus() const { return genus_; }

  const std::string& provenance() const { return provenance_; }

  // Coordinates swapped (x <-> y). Orientation is restored by reversing each
  // polygon, so pairings survive. Exact mode only.
  TranslationSurface transposed() const;

 private:
  void init();
  void validate_exact_geometry();
  void validate_float_geometry();
  void build_classes_and_genus();

  bool exact_;
  std::vector<std::vector<Vec2>> polys_;    // exact mode only
  std::vector<std::vector<Vec2d>> fpolys_;  // both modes
  std::vector<Pairing> pairings_;
  std::string provenance_;

  std::vector<std::vector<int>> partner_of_;  // [poly][edge] -> pairing index
  std::vector<VertexClass> classes_;
  std::vector<std::vector<int>> class_of_;
  int genus_ = -1;
};

inline int genus(const TranslationSurface& s) { return s.genus(); }

// Shoelace area. The exact version needs coordinate products to stay in the
// rational span and throws UnrepresentableProduct otherwise.
FieldElement exact_polygon_area(const std::vector<Vec2>& vertices);
double polygon_area_hint(const std::vector<Vec2d>& vertices);

}  // namespace veechmix
