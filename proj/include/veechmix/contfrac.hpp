#pragma once

#include <vector>

#include "veechmix/field_element.hpp"
#include "veechmix/rational.hpp"

namespace veechmix {

// One continued-fraction convergent n/m of a positive real.
struct Convergent {
  BigInt n;  // numerator
  BigInt m;  // denominator, > 0
  Rational value() const { return Rational(n, m); }
};

// Convergents of x > 0 (throws NonPositiveInput otherwise), truncated to
// max_count. Exact rationals use the Euclidean expansion and terminate at the
// value itself. Irrational elements expand the float hint; the expansion
// stops early once the fractional tail drops below 1e-12, before the hint's
// precision runs out. max_count is capped at 40 for the same reason.
std::vector<Convergent> continued_fraction_convergents(const FieldElement& x,
                                                       std::size_t max_count);

std::vector<Convergent> continued_fraction_convergents(const Rational& x,
                                                       std::size_t max_count);

std::vector<Convergent> continued_fraction_convergents(double x, std::size_t max_count);

}  // namespace veechmix
