#include <doctest.h>

#include <random>
#include <vector>

#include "veechmix/builders.hpp"
#include "veechmix/errors.hpp"
#include "veechmix/flow.hpp"
#include "veechmix/iet.hpp"
#include "veechmix/real_basis.hpp"
#include "veechmix/surface.hpp"

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

// Square torus with the diagonal cut in, so its edges are not axis-aligned.
TranslationSurface diagonal_torus() {
  std::vector<std::vector<Vec2>> polys = {
      {{fe(0), fe(0)}, {fe(1), fe(0)}, {fe(1), fe(1)}},
      {{fe(0), fe(0)}, {fe(1), fe(1)}, {fe(0), fe(1)}}};
  std::vector<Pairing> pairings = {Pairing{EdgeRef{0, 2}, EdgeRef{1, 0}},
                                   Pairing{EdgeRef{0, 0}, EdgeRef{1, 1}},
                                   Pairing{EdgeRef{0, 1}, EdgeRef{1, 2}}};
  return TranslationSurface(std::move(polys), std::move(pairings));
}

}  // namespace

TEST_SUITE("flow") {

TEST_CASE("rational-slope trace on the square torus") {
  auto t = unit_torus(fe(1).basis());

  // slope 1/2, one full unit of rise lands back on the bottom edge
  TraceResult r = trace(t, {0, {fe(1, 3), fe(0)}}, {fe(1), fe(2)}, fe(1));
  CHECK(r.end.poly == 0);
  CHECK(r.end.position == Vec2{fe(5, 6), fe(0)});
  CHECK(r.crossings == 1);
  CHECK(r.rise == fe(1));

  // stopping mid-polygon
  r = trace(t, {0, {fe(1, 3), fe(0)}}, {fe(1), fe(2)}, fe(1, 2));
  CHECK(r.end.position == Vec2{fe(7, 12), fe(1, 2)});
  CHECK(r.crossings == 0);

  // slope 2 crosses the side wall twice and closes up after rise 1
  r = trace(t, {0, {fe(1, 3), fe(0)}}, {fe(2), fe(1)}, fe(1));
  CHECK(r.end.position == Vec2{fe(1, 3), fe(0)});
  CHECK(r.crossings == 3);

  // zero rise is a no-op
  r = trace(t, {0, {fe(1, 3), fe(1, 5)}}, {fe(1), fe(2)}, fe(0));
  CHECK(r.end.position == Vec2{fe(1, 3), fe(1, 5)});
  CHECK(r.crossings == 0);
}

TEST_CASE("symbolic-slope trace wraps the cylinder exactly") {
  const auto b = beta_basis();
  auto t = unit_torus(b);
  const Direction d{el(b, 0, 1), el(b, 1)};  // (beta1, 1)

  TraceResult r = trace(t, {0, {el(b, Rational(1, 3)), el(b, 0)}}, d, el(b, 3));
  CHECK(r.end.poly == 0);
  // 1/3 + 3*beta1 ~ 1.957, reduced once by the side wall
  CHECK(r.end.position.x == el(b, Rational(-2, 3), 3));
  CHECK(r.end.position.y == el(b, 0));
  CHECK(r.crossings == 4);  // three top crossings plus one side wrap

  // partial rise that wraps inside the polygon
  r = trace(t, {0, {el(b, Rational(1, 3)), el(b, 0)}}, d, el(b, Rational(3, 2)));
  CHECK(r.end.position.x == el(b, Rational(-2, 3), Rational(3, 2)));
  CHECK(r.end.position.y == el(b, Rational(1, 2)));
  CHECK(r.crossings == 2);
}

TEST_CASE("trace error paths") {
  auto t = unit_torus(fe(1).basis());

  // straight through the corner
  CHECK_THROWS_AS(trace(t, {0, {fe(0), fe(0)}}, {fe(0), fe(1)}, fe(1)), SingularOrbit);
  CHECK_THROWS_AS(trace(t, {0, {fe(0), fe(0)}}, {fe(1), fe(1)}, fe(1)), SingularOrbit);

  CHECK_THROWS_AS(trace(t, {0, {fe(1, 3), fe(0)}}, {fe(0), fe(1)}, fe(10), 3),
                  TimeBudgetExceeded);
  CHECK_THROWS_AS(trace(t, {0, {fe(1, 3), fe(0)}}, {fe(1), fe(0)}, fe(1)), BadParameters);
  CHECK_THROWS_AS(trace(t, {0, {fe(1, 3), fe(0)}}, {fe(0), fe(1)}, fe(-1)), BadParameters);
  CHECK_THROWS_AS(trace(t, {7, {fe(1, 3), fe(0)}}, {fe(0), fe(1)}, fe(1)), BadParameters);

  // slope 1/beta1 leaves the span
  const auto b = beta_basis();
  auto tb = unit_torus(b);
  CHECK_THROWS_AS(trace(tb, {0, {el(b, Rational(1, 3)), el(b, 0)}},
                        {el(b, 1), el(b, 0, 1)}, el(b, 1)),
                  UnrepresentableProduct);

  CHECK_THROWS_AS(trace(diagonal_torus(), {0, {fe(1, 2), fe(1, 4)}}, {fe(0), fe(1)}, fe(1)),
                  UnrepresentableProduct);
}

TEST_CASE("float trace follows the hint geometry") {
  auto t = unit_torus(fe(1).basis());

  FloatTraceResult r = trace_hint(t, 0, {0.25, 0.0}, {1.0, 2.0}, 1.0);
  CHECK(r.poly == 0);
  CHECK(r.position.x == doctest::Approx(0.75).epsilon(1e-12));
  CHECK(r.position.y == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(r.crossings == 1);
  CHECK(r.rise == doctest::Approx(1.0));
  CHECK(r.arclength == doctest::Approx(std::sqrt(1.25)));

  CHECK_THROWS_AS(trace_hint(t, 0, {0.0, 0.0}, {1.0, 1.0}, 1.0), SingularOrbit);
  CHECK_THROWS_AS(trace_hint(t, 0, {0.25, 0.0}, {1.0, -1.0}, 1.0), BadParameters);

  // works on the non-axis-aligned surface where exact tracing refuses
  FloatTraceResult d = trace_hint(diagonal_torus(), 0, {0.5, 0.1}, {1.0, 3.0}, 0.6);
  CHECK(d.position.y == doctest::Approx(0.7).epsilon(1e-9));
}

TEST_CASE("horizontal sections collect the bottom edges") {
  auto t = unit_torus(fe(1).basis());
  Section sec = horizontal_section(t, fe(0));
  REQUIRE(sec.pieces.size() == 1);
  CHECK(sec.width() == fe(1));
  CHECK(sec.locate(fe(1, 3)).poly == 0);
  CHECK(sec.locate(fe(1, 3)).position == Vec2{fe(1, 3), fe(0)});
  CHECK_THROWS_AS(sec.locate(fe(1)), OutOfDomain);
  CHECK_THROWS_AS(horizontal_section(t, fe(5)), BadParameters);

  // suspension bottoms tile the interval in order
  IET iet({fe(2, 5), fe(3, 5)}, Permutation({2, 1}));
  auto s = suspend(iet, {fe(1), fe(2)});
  Section ss = horizontal_section(s, fe(0));
  CHECK(ss.width() == fe(1));
  CHECK(ss.x0() == fe(0));
  CHECK(ss.pieces.size() >= 2);
}

TEST_CASE("vertical return map on the torus is the identity") {
  auto t = unit_torus(fe(1).basis());
  ReturnMapResult r = first_return_map(t, {fe(0), fe(1)}, fe(0));
  CHECK(r.iet.size() == 1);
  CHECK(r.iet.lengths() == std::vector<FieldElement>{fe(1)});
  CHECK(r.iet.perm() == Permutation::identity(1));
  CHECK(r.times == std::vector<FieldElement>{fe(1)});
  CHECK(return_times_vector(r) == r.times);
}

TEST_CASE("drift direction on the torus gives the rotation exchange") {
  const auto b = beta_basis();
  auto t = unit_torus(b);
  ReturnMapResult r = first_return_map(t, {el(b, 0, 1), el(b, 1)}, el(b, 0));
  REQUIRE(r.iet.size() == 2);
  CHECK(r.iet.lengths()[0] == el(b, 1, -1));  // 1 - beta1
  CHECK(r.iet.lengths()[1] == el(b, 0, 1));
  CHECK(r.iet.perm() == Permutation({2, 1}));
  CHECK(r.times == std::vector<FieldElement>{el(b, 1), el(b, 1)});

  // geometry and exchange agree pointwise
  std::mt19937_64 rng(20260816u);
  std::uniform_int_distribution<long long> num(1, 1008);
  for (int k = 0; k < 100; ++k) {
    const FieldElement u = el(b, Rational(num(rng), 1009));
    const FieldElement image = apply(r.iet, u);
    TraceResult tr = trace(t, {0, {u, el(b, 0)}}, {el(b, 0, 1), el(b, 1)}, el(b, 1));
    CHECK(tr.end.position.x == image);
  }
}

TEST_CASE("horizontal-ish directions go through the transpose") {
  const auto b = beta_basis();
  auto t = unit_torus(b).transposed();
  ReturnMapResult r = first_return_map(t, {el(b, 0, 1), el(b, 1)}, el(b, 0));
  REQUIRE(r.iet.size() == 2);
  CHECK(r.iet.perm() == Permutation({2, 1}));
  CHECK(r.iet.lengths()[1] == el(b, 0, 1));

  // the rotation by beta1 never returns to the origin
  auto orb = orbit(r.iet, el(b, 0), 10000);
  for (std::size_t i = 1; i < orb.size(); ++i) REQUIRE_FALSE(orb[i].is_zero());

  // long exact trace agrees with iterating the exchange
  TraceResult tr = trace(t, {0, {el(b, 0), el(b, 0)}}, {el(b, 0, 1), el(b, 1)}, el(b, 10000));
  CHECK(tr.end.position.x == orb.back());
  CHECK(tr.end.position.y == el(b, 0));
}

TEST_CASE("vertical return map on the staircase surface") {
  auto s = build_hv_surface(fe(1), fe(2));
  ReturnMapResult r = first_return_map(s, {fe(0), fe(1)}, fe(0));
  REQUIRE(r.iet.size() == 2);
  CHECK(r.iet.lengths() == std::vector<FieldElement>({fe(1), fe(1)}));
  CHECK(r.iet.perm() == Permutation::identity(2));
  CHECK(r.times == std::vector<FieldElement>({fe(2), fe(1)}));
}

TEST_CASE("suspension round-trip recovers the exchange and heights") {
  IET iet({fe(1, 10), fe(2, 10), fe(3, 10), fe(4, 10)}, Permutation({4, 2, 3, 1}));
  const std::vector<FieldElement> h = {fe(1), fe(2), fe(3), fe(4)};
  auto s = suspend(iet, h);
  ReturnMapResult r = first_return_map(s, {fe(0), fe(1)}, fe(0));
  CHECK(r.iet == iet);
  CHECK(r.times == h);

  // two-interval rotation over a genus-two suspension
  IET rot({fe(2, 5), fe(3, 5)}, Permutation({2, 1}));
  const std::vector<FieldElement> h2 = {fe(1), fe(2)};
  ReturnMapResult r2 = first_return_map(suspend(rot, h2), {fe(0), fe(1)}, fe(0));
  CHECK(r2.iet == rot);
  CHECK(r2.times == h2);
}

TEST_CASE("suspension round-trip with symbolic lengths and heights") {
  // lambda_1 != lambda_4, otherwise the middle rectangles of this permutation
  // glue to themselves and the suspension falls apart
  const auto b = beta_basis();
  IET iet({el(b, Rational(1, 2)), el(b, 0, 1), el(b, 0, 0, 1), el(b, Rational(1, 3))},
          Permutation({4, 2, 3, 1}));
  const std::vector<FieldElement> h = {el(b, 1), el(b, 0, 1), el(b, 0, 0, 1), el(b, 2)};
  ReturnMapResult r = first_return_map(suspend(iet, h), {el(b, 0), el(b, 1)}, el(b, 0));
  CHECK(r.iet == iet);
  CHECK(r.times == h);
}

TEST_CASE("equal translations stay separate exactly when the heights differ") {
  // pi = (3,1,2) forces intervals 2 and 3 to share a translation
  IET iet({fe(1, 2), fe(1, 4), fe(1, 4)}, Permutation({3, 1, 2}));
  REQUIRE(iet.translations()[1] == iet.translations()[2]);

  const std::vector<FieldElement> distinct = {fe(1), fe(2), fe(3)};
  ReturnMapResult r = first_return_map(suspend(iet, distinct), {fe(0), fe(1)}, fe(0));
  CHECK(r.iet == iet);
  CHECK(r.times == distinct);

  // with equal heights the two pieces are indistinguishable and coalesce
  const std::vector<FieldElement> equal = {fe(1), fe(1), fe(1)};
  ReturnMapResult rm = first_return_map(suspend(iet, equal), {fe(0), fe(1)}, fe(0));
  CHECK(rm.iet.size() == 2);
  CHECK(rm.iet.lengths() == std::vector<FieldElement>({fe(1, 2), fe(1, 2)}));
  CHECK(rm.iet.perm() == Permutation({2, 1}));
}

TEST_CASE("return map error paths") {
  auto t = unit_torus(fe(1).basis());
  CHECK_THROWS_AS(first_return_map(t, {fe(0), fe(-1)}, fe(0)), BadParameters);
  CHECK_THROWS_AS(first_return_map(t, {fe(0), fe(1)}, fe(0), 0), NoReturn);
  CHECK_THROWS_AS(first_return_map(diagonal_torus(), {fe(0), fe(1)}, fe(0)),
                  UnrepresentableProduct);

  // float surfaces only support trace_hint
  std::vector<std::vector<Vec2d>> fsq = {{{0.0, 0.0}, {1.0, 0.0}, {1.0, 1.0}, {0.0, 1.0}}};
  TranslationSurface fs(fsq, {Pairing{EdgeRef{0, 0}, EdgeRef{0, 2}},
                              Pairing{EdgeRef{0, 1}, EdgeRef{0, 3}}});
  CHECK_THROWS_AS(first_return_map(fs, {fe(0), fe(1)}, fe(0)), OutOfDomain);
  CHECK_THROWS_AS(trace(fs, {0, {fe(0), fe(0)}}, {fe(0), fe(1)}, fe(1)), OutOfDomain);
  CHECK_THROWS_AS(horizontal_section(fs, fe(0)), OutOfDomain);
}

}  // TEST_SUITE
