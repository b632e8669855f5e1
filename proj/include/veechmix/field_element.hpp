#pragma once

#include <string>
#include <vector>

#include "veechmix/rational.hpp"
#include "veechmix/real_basis.hpp"

namespace veechmix {

// An exact real number written as a Q-linear combination of the declared
// basis symbols. This is a vector space, not a field: adding, subtracting and
// scaling by rationals are always legal, but multiplying two elements is only
// legal when one of them is rational (anything else would leave the span and
// throws UnrepresentableProduct).
//
// Ordering goes through the float hints. When two hints collide within
// 1e-9 * scale the comparison is re-decided exactly if the difference is
// rational, and refused (AmbiguousComparison) if irrational symbols are
// involved. Verdict-grade code never relies on a hint alone.
class FieldElement {
 public:
  // Zero over the trivial rational basis.
  FieldElement();

  // Rational value over the trivial basis.
  explicit FieldElement(Rational r);

  FieldElement(BasisPtr basis, std::vector<Rational> coords);

  static FieldElement zero(const BasisPtr& basis);
  static FieldElement one(const BasisPtr& basis);
  static FieldElement from_rational(const BasisPtr& basis, const Rational& r);
  // coefficient * basis_symbol(index).
  static FieldElement scaled_symbol(const BasisPtr& basis, std::size_t index,
                                    const Rational& coefficient);

  const BasisPtr& basis() const { return basis_; }
  const std::vector<Rational>& coords() const { return coords_; }
  const Rational& coord(std::size_t i) const { return coords_.at(i); }

  double hint() const;

  bool is_zero() const;
  // True when every irrational coordinate is exactly zero.
  bool is_rational() const;
  // Throws OutOfDomain when not rational.
  Rational as_rational() const;
  // True when rational and an integer.
  bool is_integral() const;

  FieldElement operator-() const;
  FieldElement& operator+=(const FieldElement& rhs);
  FieldElement& operator-=(const FieldElement& rhs);
  FieldElement& operator*=(const Rational& s);
  FieldElement& operator/=(const Rational& s);

  friend FieldElement operator+(FieldElement a, const FieldElement& b) { return a += b; }
  friend FieldElement operator-(FieldElement a, const FieldElement& b) { return a -= b; }
  friend FieldElement operator*(FieldElement a, const Rational& s) { return a *= s; }
  friend FieldElement operator*(const Rational& s, FieldElement a) { return a *= s; }
  friend FieldElement operator/(FieldElement a, const Rational& s) { return a /= s; }

  // Legal only if one side is rational; see class comment.
  friend FieldElement operator*(const FieldElement& a, const FieldElement& b);

  // -1, 0, +1. Throws AmbiguousComparison on an unresolvable near-tie.
  static int compare(const FieldElement& a, const FieldElement& b);

  bool operator==(const FieldElement& rhs) const;
  bool operator!=(const FieldElement& rhs) const { return !(*this == rhs); }
  bool operator<(const FieldElement& rhs) const { return compare(*this, rhs) < 0; }
  bool operator<=(const FieldElement& rhs) const { return compare(*this, rhs) <= 0; }
  bool operator>(const FieldElement& rhs) const { return compare(*this, rhs) > 0; }
  bool operator>=(const FieldElement& rhs) const { return compare(*this, rhs) >= 0; }

  int sign() const { return compare(*this, FieldElement::zero(basis_)); }

  // Human-readable, e.g. "2 - 1*sqrt3" or "3/5".
  std::string to_string() const;

 private:
  void require_same_basis(const FieldElement& other) const;

  BasisPtr basis_;
  std::vector<Rational> coords_;
};

}  // namespace veechmix
