#pragma once

#include <string>
#include <vector>

#include "veechmix/field_element.hpp"
#include "veechmix/flow.hpp"
#include "veechmix/permutation.hpp"

namespace veechmix {

// Successor cycles of the permutation and their signed indicator vectors.
// These span the rational obstructions to continuous eigenvalues of the
// suspension flow. Throws ReducibleInput on a reducible permutation.
SigmaDecomposition veech_obstruction_set(const Permutation& pi);

enum class EigenvalueStatus { Excluded, NotExcluded };

struct EigenvalueVerdict {
  EigenvalueStatus status = EigenvalueStatus::NotExcluded;
  int witness_cycle = -1;      // index into the cycle list when Excluded
  FieldElement witness_value;  // the non-integer pairing b_S . (alpha t)
};

// Decides whether alpha is ruled out as an eigenvalue of the suspension flow
// with return times t over pi: alpha is Excluded when some cycle pairs with
// alpha*t outside the integers, exactly. alpha must be rational or a rational
// multiple of one basis symbol with rational t (anything else makes alpha*t
// unrepresentable). alpha = 0 is the trivial eigenvalue, never excluded.
EigenvalueVerdict exclude_eigenvalue(const Permutation& pi,
                                     const std::vector<FieldElement>& t,
                                     const FieldElement& alpha);

enum class WeakMixStatus { WeaklyMixingAE, Inconclusive };

struct CyclePairing {
  std::vector<int> cycle;
  std::vector<int> b;
  FieldElement value;  // b . t
};

struct WeakMixVerdict {
  WeakMixStatus status = WeakMixStatus::Inconclusive;
  std::vector<CyclePairing> pairings;  // one per cycle, ascending-min order

  // First pair of cycles examined for independence (lexicographic scan over
  // pairs with nonzero values); the certifying pair when status is
  // WeaklyMixingAE. -1/-1 when fewer than two pairings are nonzero.
  int chosen_j = -1;
  int chosen_k = -1;
  std::size_t rank_pair = 0;      // rank over Q of the chosen values' coordinates
  std::size_t rank_with_one = 0;  // same with the constant 1 adjoined

  std::vector<std::string> caveats;
};

// Weak-mixing certificate for the suspension flow with return times t over
// pi: two cycles whose pairings with t are nonzero and rationally independent
// force every nontrivial eigenvalue out, for almost every length vector.
WeakMixVerdict check_weak_mixing(const Permutation& pi, const std::vector<FieldElement>& t);

struct SurfaceWeakMixResult {
  ReturnMapResult return_map;
  WeakMixVerdict verdict;
};

// First-return map of the directional flow to the section at `level`, then
// the weak-mixing check on its permutation and return times. A reducible
// return map (the flow splits over this section) throws ReducibleInput.
SurfaceWeakMixResult check_surface_weak_mixing(const TranslationSurface& s,
                                               const Direction& dir,
                                               const FieldElement& level);

}  // namespace veechmix
