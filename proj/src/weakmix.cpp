#include "veechmix/weakmix.hpp"

#include <utility>

#include "veechmix/errors.hpp"
#include "veechmix/linalg.hpp"

namespace veechmix {

namespace {

void validate_times(const Permutation& pi, const std::vector<FieldElement>& t) {
  if (t.empty()) throw EmptyInput("return times are empty");
  if (t.size() != pi.size())
    throw BadParameters("need one return time per exchanged interval");
  for (const auto& ti : t) {
    if (ti.basis() != t[0].basis()) throw BasisMismatch("return times mix bases");
    if (ti.sign() <= 0) throw NonPositiveHeight("return times must be positive");
  }
}

FieldElement pair_with(const std::vector<int>& b, const std::vector<FieldElement>& t) {
  FieldElement out = FieldElement::zero(t[0].basis());
  for (std::size_t i = 0; i < b.size(); ++i) {
    if (b[i] != 0) out += t[i] * make_rational(b[i]);
  }
  return out;
}

}  // namespace

SigmaDecomposition veech_obstruction_set(const Permutation& pi) {
  if (!is_irreducible(pi))
    throw ReducibleInput("permutation is reducible; split it into its blocks first");
  return sigma_decomposition(pi);
}

EigenvalueVerdict exclude_eigenvalue(const Permutation& pi,
                                     const std::vector<FieldElement>& t,
                                     const FieldElement& alpha) {
  validate_times(pi, t);
  if (alpha.basis() != t[0].basis()) throw BasisMismatch("alpha must use the times' basis");
  const SigmaDecomposition dec = veech_obstruction_set(pi);

  EigenvalueVerdict out;
  if (alpha.is_zero()) return out;  // the constant eigenvalue is always there

  std::vector<FieldElement> w;
  w.reserve(t.size());
  for (const auto& ti : t) w.push_back(alpha * ti);

  for (std::size_t c = 0; c < dec.b.size(); ++c) {
    FieldElement value = pair_with(dec.b[c], w);
    if (!value.is_integral()) {
      out.status = EigenvalueStatus::Excluded;
      out.witness_cycle = static_cast<int>(c);
      out.witness_value = std::move(value);
      return out;
    }
  }
  return out;
}

WeakMixVerdict check_weak_mixing(const Permutation& pi, const std::vector<FieldElement>& t) {
  validate_times(pi, t);
  const SigmaDecomposition dec = veech_obstruction_set(pi);

  WeakMixVerdict out;
  out.pairings.reserve(dec.cycles.size());
  for (std::size_t c = 0; c < dec.cycles.size(); ++c)
    out.pairings.push_back({dec.cycles[c], dec.b[c], pair_with(dec.b[c], t)});

  // Deterministic scan: the first nonzero pair decides what gets reported;
  // the first pair of full rank certifies.
  for (std::size_t j = 0; j < out.pairings.size() && out.status != WeakMixStatus::WeaklyMixingAE;
       ++j) {
    if (out.pairings[j].value.is_zero()) continue;
    for (std::size_t k = j + 1; k < out.pairings.size(); ++k) {
      if (out.pairings[k].value.is_zero()) continue;
      const FieldElement& u = out.pairings[j].value;
      const FieldElement& v = out.pairings[k].value;
      const std::size_t r = rank_over_q({u.coords(), v.coords()});
      if (out.chosen_j < 0 || r == 2) {
        out.chosen_j = static_cast<int>(j);
        out.chosen_k = static_cast<int>(k);
        out.rank_pair = r;
        out.rank_with_one =
            rank_over_q({FieldElement::one(u.basis()).coords(), u.coords(), v.coords()});
      }
      if (r == 2) {
        out.status = WeakMixStatus::WeaklyMixingAE;
        break;
      }
    }
  }

  if (out.status == WeakMixStatus::WeaklyMixingAE) {
    out.caveats.push_back(
        "certifies the suspension flow for almost every admissible length vector; "
        "a measure-zero set of exchanges can escape");
    out.caveats.push_back(
        "rank is relative to the declared symbols, assumed rationally independent");
  } else {
    out.caveats.push_back("no cycle pair certifies mixing; this is not a disproof");
    bool all_rational = true;
    for (const auto& ti : t) all_rational = all_rational && ti.is_rational();
    if (all_rational)
      out.caveats.push_back(
          "all return times are rational, so no pairing pair can reach rank two");
    if (out.pairings.size() < 2)
      out.caveats.push_back("a single invariant cycle leaves no pair to test");
  }
  return out;
}

SurfaceWeakMixResult check_surface_weak_mixing(const TranslationSurface& s,
                                               const Direction& dir,
                                               const FieldElement& level) {
  ReturnMapResult r = first_return_map(s, dir, level);
  WeakMixVerdict v = check_weak_mixing(r.iet.perm(), r.times);
  return {std::move(r), std::move(v)};
}

}  // namespace veechmix
