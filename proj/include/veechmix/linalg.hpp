#pragma once

#include <vector>

#include "veechmix/field_element.hpp"
#include "veechmix/rational.hpp"

namespace veechmix {

// Rank of the span of the given coordinate vectors, by exact Gaussian
// elimination over Q. All vectors must share one dimension; an empty list
// throws EmptyInput.
std::size_t rank_over_q(std::vector<std::vector<Rational>> rows);

// True iff no nonzero integer pair (p, q) has p*u + q*v = 0, decided on the
// exact coordinates: equivalent to rank {coords u, coords v} == 2. Both
// elements must share a basis. Zero inputs are dependent by convention.
bool integrally_independent(const FieldElement& u, const FieldElement& v);

}  // namespace veechmix
