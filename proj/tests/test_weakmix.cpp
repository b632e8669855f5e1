#include <doctest.h>

#include <string>
#include <vector>

#include "veechmix/builders.hpp"
#include "veechmix/errors.hpp"
#include "veechmix/real_basis.hpp"
#include "veechmix/weakmix.hpp"

using namespace veechmix;

namespace {

FieldElement fe(long long n, long long d = 1) {
  return FieldElement(Rational(n, d));
}

BasisPtr beta_basis() {
  return RealBasis::make({"1", "beta1", "beta2"},
                         {1.0, 0.5411961001461969, 0.8314696123025452});
}

FieldElement el(const BasisPtr& b, Rational c0, Rational c1 = Rational(0),
                Rational c2 = Rational(0)) {
  return FieldElement(b, {std::move(c0), std::move(c1), std::move(c2)});
}

bool has_caveat(const WeakMixVerdict& v, const std::string& needle) {
  for (const auto& c : v.caveats)
    if (c.find(needle) != std::string::npos) return true;
  return false;
}

}  // namespace

TEST_SUITE("weakmix") {

TEST_CASE("obstruction set of the four-interval permutation") {
  SigmaDecomposition d = veech_obstruction_set(Permutation({4, 2, 3, 1}));
  CHECK(d.sigma == std::vector<int>{3, 4, 2, 0, 1});
  REQUIRE(d.cycles.size() == 3);
  CHECK(d.cycles[0] == std::vector<int>{0, 3});
  CHECK(d.cycles[1] == std::vector<int>{1, 4});
  CHECK(d.cycles[2] == std::vector<int>{2});
  CHECK(d.b[0] == std::vector<int>{1, 0, -1, 1});
  CHECK(d.b[1] == std::vector<int>{-1, 1, 0, -1});
  CHECK(d.b[2] == std::vector<int>{0, -1, 1, 0});

  // the rotation permutation carries a single cycle and a vanishing vector
  SigmaDecomposition r = veech_obstruction_set(Permutation({2, 1}));
  REQUIRE(r.cycles.size() == 1);
  CHECK(r.cycles[0] == std::vector<int>{0, 1, 2});
  CHECK(r.b[0] == std::vector<int>{0, 0});

  CHECK_THROWS_AS(veech_obstruction_set(Permutation({1, 2})), ReducibleInput);
}

TEST_CASE("independent return times certify mixing") {
  const auto b = beta_basis();
  const std::vector<FieldElement> t = {el(b, 1), el(b, 0, 1), el(b, 0, 0, 1), el(b, 1)};
  WeakMixVerdict v = check_weak_mixing(Permutation({4, 2, 3, 1}), t);

  CHECK(v.status == WeakMixStatus::WeaklyMixingAE);
  REQUIRE(v.pairings.size() == 3);
  CHECK(v.pairings[0].value == el(b, 2, 0, -1));   // 2 - beta2
  CHECK(v.pairings[1].value == el(b, -2, 1));      // beta1 - 2
  CHECK(v.pairings[2].value == el(b, 0, -1, 1));   // beta2 - beta1
  CHECK(v.chosen_j == 0);
  CHECK(v.chosen_k == 1);
  CHECK(v.rank_pair == 2);
  CHECK(v.rank_with_one == 3);
  CHECK(has_caveat(v, "almost every"));
  CHECK(has_caveat(v, "rationally independent"));

  // scaling the times cannot change the verdict
  std::vector<FieldElement> scaled;
  for (const auto& ti : t) scaled.push_back(ti * Rational(3, 7));
  WeakMixVerdict vs = check_weak_mixing(Permutation({4, 2, 3, 1}), scaled);
  CHECK(vs.status == WeakMixStatus::WeaklyMixingAE);
  CHECK(vs.rank_pair == 2);
}

TEST_CASE("equal return times stay inconclusive") {
  const std::vector<FieldElement> t = {fe(1), fe(1), fe(1), fe(1)};
  WeakMixVerdict v = check_weak_mixing(Permutation({4, 2, 3, 1}), t);

  CHECK(v.status == WeakMixStatus::Inconclusive);
  CHECK(v.pairings[0].value == fe(1));
  CHECK(v.pairings[1].value == fe(-1));
  CHECK(v.pairings[2].value == fe(0));
  CHECK(v.chosen_j == 0);
  CHECK(v.chosen_k == 1);
  CHECK(v.rank_pair == 1);
  CHECK(v.rank_with_one == 1);
  CHECK(has_caveat(v, "not a disproof"));
  CHECK(has_caveat(v, "rational"));
}

TEST_CASE("rational times never certify") {
  for (long long d = 2; d <= 6; ++d) {
    const std::vector<FieldElement> t = {fe(1), fe(1, d), fe(d, d + 1), fe(3, d)};
    WeakMixVerdict v = check_weak_mixing(Permutation({4, 2, 3, 1}), t);
    CHECK(v.status == WeakMixStatus::Inconclusive);
  }
}

TEST_CASE("two intervals leave nothing to pair") {
  const auto b = beta_basis();
  WeakMixVerdict v = check_weak_mixing(Permutation({2, 1}), {el(b, 1), el(b, 0, 1)});
  CHECK(v.status == WeakMixStatus::Inconclusive);
  CHECK(v.chosen_j == -1);
  CHECK(v.rank_pair == 0);
  CHECK(has_caveat(v, "single invariant cycle"));
}

TEST_CASE("weak mixing input validation") {
  const auto b = beta_basis();
  const Permutation pi({4, 2, 3, 1});
  CHECK_THROWS_AS(check_weak_mixing(pi, {}), EmptyInput);
  CHECK_THROWS_AS(check_weak_mixing(pi, {fe(1), fe(1)}), BadParameters);
  CHECK_THROWS_AS(check_weak_mixing(pi, {fe(1), fe(1), fe(1), fe(0)}), NonPositiveHeight);
  CHECK_THROWS_AS(check_weak_mixing(pi, {fe(1), fe(1), fe(1), el(b, 1)}), BasisMismatch);
  CHECK_THROWS_AS(check_weak_mixing(Permutation({1, 2}), {fe(1), fe(1)}), ReducibleInput);
}

TEST_CASE("eigenvalue exclusion by non-integer pairings") {
  const Permutation pi({4, 2, 3, 1});
  const std::vector<FieldElement> ones = {fe(1), fe(1), fe(1), fe(1)};

  EigenvalueVerdict half = exclude_eigenvalue(pi, ones, fe(1, 2));
  CHECK(half.status == EigenvalueStatus::Excluded);
  CHECK(half.witness_cycle == 0);
  CHECK(half.witness_value == fe(1, 2));

  CHECK(exclude_eigenvalue(pi, ones, fe(1)).status == EigenvalueStatus::NotExcluded);
  CHECK(exclude_eigenvalue(pi, ones, fe(3)).status == EigenvalueStatus::NotExcluded);
  CHECK(exclude_eigenvalue(pi, ones, fe(0)).status == EigenvalueStatus::NotExcluded);

  // pairings here are (3, -3, 0), so denominators up to 3 survive
  const std::vector<FieldElement> t2 = {fe(2), fe(1), fe(1), fe(2)};
  CHECK(exclude_eigenvalue(pi, t2, fe(1, 3)).status == EigenvalueStatus::NotExcluded);
  EigenvalueVerdict v2 = exclude_eigenvalue(pi, t2, fe(1, 2));
  CHECK(v2.status == EigenvalueStatus::Excluded);
  CHECK(v2.witness_value == fe(3, 2));
}

TEST_CASE("symbolic eigenvalues against rational times") {
  const auto b = beta_basis();
  const Permutation pi({4, 2, 3, 1});
  const std::vector<FieldElement> ones = {el(b, 1), el(b, 1), el(b, 1), el(b, 1)};

  const FieldElement alpha = FieldElement::scaled_symbol(b, 1, Rational(1, 2));
  EigenvalueVerdict v = exclude_eigenvalue(pi, ones, alpha);
  CHECK(v.status == EigenvalueStatus::Excluded);
  CHECK(v.witness_cycle == 0);
  CHECK(v.witness_value == el(b, 0, Rational(1, 2)));

  // alpha and the times cannot both be irrational
  const std::vector<FieldElement> tb = {el(b, 1), el(b, 0, 1), el(b, 0, 0, 1), el(b, 1)};
  CHECK_THROWS_AS(exclude_eigenvalue(pi, tb, alpha), UnrepresentableProduct);

  // with independent times even alpha = 1 pairs to the non-integer 2 - beta2
  EigenvalueVerdict one = exclude_eigenvalue(pi, tb, el(b, 1));
  CHECK(one.status == EigenvalueStatus::Excluded);
  CHECK(one.witness_value == el(b, 2, 0, -1));
}

TEST_CASE("surface verdict composes the return map and the certificate") {
  const auto b = beta_basis();
  IET iet({el(b, Rational(1, 2)), el(b, 0, 1), el(b, 0, 0, 1), el(b, Rational(1, 3))},
          Permutation({4, 2, 3, 1}));
  const std::vector<FieldElement> h = {el(b, 1), el(b, 0, 1), el(b, 0, 0, 1), el(b, 1)};
  auto s = suspend(iet, h);

  SurfaceWeakMixResult r = check_surface_weak_mixing(s, {el(b, 0), el(b, 1)}, el(b, 0));
  CHECK(r.return_map.iet == iet);
  CHECK(r.return_map.times == h);
  CHECK(r.verdict.status == WeakMixStatus::WeaklyMixingAE);
  CHECK(r.verdict.rank_pair == 2);

  // the vertical flow on the staircase splits over the bottom section
  auto hv = build_hv_surface(fe(1), fe(2));
  CHECK_THROWS_AS(check_surface_weak_mixing(hv, {fe(0), fe(1)}, fe(0)), ReducibleInput);

  // a plain cylinder drift has one cycle and proves nothing
  auto t = unit_torus(b);
  SurfaceWeakMixResult rt = check_surface_weak_mixing(t, {el(b, 0, 1), el(b, 1)}, el(b, 0));
  CHECK(rt.verdict.status == WeakMixStatus::Inconclusive);
  CHECK(has_caveat(rt.verdict, "single invariant cycle"));
}

TEST_CASE("fig1 preset certifies weak mixing for the vertical flow") {
  const auto b = beta_basis();
  TranslationSurface s = build_fig1_default(b);
  SurfaceWeakMixResult r = check_surface_weak_mixing(s, {el(b, 0), el(b, 1)}, el(b, 0));

  IET expected({el(b, Rational(1, 2)), el(b, Rational(1, 6)), el(b, Rational(1, 6)),
                el(b, Rational(1, 6))},
               Permutation({4, 2, 3, 1}));
  CHECK(r.return_map.iet == expected);

  REQUIRE(r.return_map.times.size() == 4);
  CHECK(r.return_map.times[0] == el(b, Rational(1, 16)));
  CHECK(r.return_map.times[1] == el(b, Rational(33, 16), 0, Rational(-1, 16)));
  CHECK(r.return_map.times[2] == el(b, 2, Rational(-1, 16), Rational(1, 16)));
  CHECK(r.return_map.times[3] == el(b, Rational(7, 4), Rational(1, 16)));

  // mean return time one: the section sweeps the whole surface
  FieldElement swept = FieldElement::zero(b);
  for (std::size_t j = 0; j < 4; ++j)
    swept += expected.lengths()[j] * r.return_map.times[j];
  CHECK(swept == el(b, 1));

  CHECK(r.verdict.status == WeakMixStatus::WeaklyMixingAE);
  CHECK(r.verdict.rank_pair == 2);
  CHECK(r.verdict.rank_with_one == 3);
}

}  // TEST_SUITE
