#pragma once

#include <vector>

#include "veechmix/field_element.hpp"
#include "veechmix/permutation.hpp"

namespace veechmix {

// Interval exchange transformation of [0, |lambda|): the half-open intervals
// I_j = [L_j, L_{j+1}), j = 1..m, are translated so that they appear in the
// order prescribed by pi. Vector positions are 0-based, so slot j-1 carries
// the data of interval j.
class IET {
 public:
  IET(std::vector<FieldElement> lengths, Permutation perm);

  std::size_t size() const { return lengths_.size(); }
  const std::vector<FieldElement>& lengths() const { return lengths_; }
  const Permutation& perm() const { return perm_; }
  const BasisPtr& basis() const { return lengths_[0].basis(); }

  FieldElement total_length() const { return lefts_.back(); }

  // L_1 = 0, ..., L_{m+1} = |lambda|; slot j holds L_{j+1}. Size m+1.
  const std::vector<FieldElement>& left_endpoints() const { return lefts_; }

  // Translation w of interval j (slot j-1): T(x) = x + w on I_j.
  const std::vector<FieldElement>& translations() const { return translations_; }

  // 1-based index j of the interval containing x. Throws OutOfDomain when
  // x is outside [0, |lambda|); near-ties propagate AmbiguousComparison.
  int interval_index(const FieldElement& x) const;

  // The inverse exchange: T_inv(T(x)) = x.
  IET inverse() const;

  bool operator==(const IET& rhs) const {
    return perm_ == rhs.perm_ && lengths_ == rhs.lengths_;
  }
  bool operator!=(const IET& rhs) const { return !(*this == rhs); }

 private:
  std::vector<FieldElement> lengths_;
  Permutation perm_;
  std::vector<FieldElement> lefts_;         // size m+1
  std::vector<FieldElement> translations_;  // size m
};

// T(x). Throws OutOfDomain outside [0, |lambda|).
FieldElement apply(const IET& iet, const FieldElement& x);

// [x, T(x), ..., T^n(x)], exactly. n + 1 entries.
std::vector<FieldElement> orbit(const IET& iet, const FieldElement& x, std::size_t n);

// True iff the coordinate vectors of lambda_1..lambda_m have rank m over Q.
// Standard sufficient condition for minimality of an irreducible exchange.
bool lengths_rationally_independent(const IET& iet);

}  // namespace veechmix
