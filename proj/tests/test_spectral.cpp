#include <doctest.h>

#include <cmath>
#include <complex>
#include <utility>
#include <vector>

#include "veechmix/builders.hpp"
#include "veechmix/contfrac.hpp"
#include "veechmix/errors.hpp"
#include "veechmix/iet.hpp"
#include "veechmix/real_basis.hpp"
#include "veechmix/spectral.hpp"

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

IET fifth_rotation() {
  return IET({fe(2, 5), fe(3, 5)}, Permutation({2, 1}));
}

IET beta_rotation(const BasisPtr& b) {
  return IET({el(b, 1, -1), el(b, 0, 1)}, Permutation({2, 1}));
}

}  // namespace

TEST_SUITE("spectral") {

TEST_CASE("identity exchange has constant correlations") {
  IET id({fe(1, 2), fe(1, 2)}, Permutation({1, 2}));
  auto rep = birkhoff_correlation(id, Observable::fourier(1), Observable::fourier(1), 10, 50, 7);
  REQUIRE(rep.correlations.size() == 11);
  for (const auto& c : rep.correlations) {
    CHECK(std::abs(c - rep.correlations[0]) < 1e-14);
  }
  CHECK(std::abs(rep.correlations[0]) == doctest::Approx(1.0));
}

TEST_CASE("periodic rotation repeats its correlations") {
  auto rep = birkhoff_correlation(fifth_rotation(), Observable::indicator(0),
                                  Observable::indicator(0), 20, 1000, 7);
  for (std::size_t n = 0; n + 5 < rep.correlations.size(); ++n) {
    CHECK(std::abs(rep.correlations[n + 5] - rep.correlations[n]) < 1e-9);
  }
  // time average of the indicator matches the interval measure
  CHECK(std::abs(rep.correlations[0]) == doctest::Approx(0.4).epsilon(0.01));
}

TEST_CASE("autocorrelation peaks at lag zero") {
  IET iet({fe(3, 10), fe(1, 5), fe(1, 4), fe(1, 4)}, Permutation({4, 2, 3, 1}));
  auto rep = birkhoff_correlation(iet, Observable::fourier(1), Observable::fourier(1), 50,
                                  2000, 99);
  const double c0 = std::abs(rep.correlations[0]);
  for (const auto& c : rep.correlations) CHECK(std::abs(c) <= c0 + 1e-12);
}

TEST_CASE("constant observable gives zero cesaro") {
  auto rep = birkhoff_correlation(fifth_rotation(), Observable::fourier(0),
                                  Observable::fourier(0), 10, 100, 7);
  for (double m : rep.cesaro) CHECK(m == 0.0);
}

TEST_CASE("eigen-observable of a rotation never decays") {
  auto rep = birkhoff_correlation(beta_rotation(beta_basis()), Observable::fourier(1),
                                  Observable::fourier(1), 2000, 500, 11);
  CHECK(rep.cesaro.front() > 0.99);
  CHECK(rep.cesaro.back() > 0.99);
}

TEST_CASE("certified suspension decorrelates where the rotation does not") {
  const auto b = beta_basis();
  IET base({el(b, Rational(1, 2)), el(b, 0, 1), el(b, 0, 0, 1), el(b, Rational(1, 3))},
           Permutation({4, 2, 3, 1}));
  const std::vector<FieldElement> roof = {el(b, 1), el(b, 0, 1), el(b, 0, 0, 1), el(b, 1)};
  auto rep = special_flow_correlation(base, roof, Observable::fourier_fiber(1),
                                      Observable::fourier_fiber(1), 0.309, 20000, 256, 11);
  CHECK(rep.cesaro.front() == doctest::Approx(1.0).epsilon(0.01));
  CHECK(rep.cesaro.back() < rep.cesaro.front() / 3.0);
}

TEST_CASE("cesaro indicator arithmetic") {
  std::vector<std::complex<double>> corr = {{1.0, 0.0}, {0.5, 0.0}, {0.0, 0.5}};
  auto m = cesaro_mixing_indicator(corr, {0.0, 0.0}, {0.0, 0.0});
  REQUIRE(m.size() == 3);
  CHECK(m[0] == doctest::Approx(1.0));
  CHECK(m[1] == doctest::Approx(0.75));
  CHECK(m[2] == doctest::Approx((1.0 + 0.5 + 0.5) / 3.0));
  // subtracting the product of the means
  auto shifted = cesaro_mixing_indicator(corr, {1.0, 0.0}, {1.0, 0.0});
  CHECK(shifted[0] == doctest::Approx(0.0));
  CHECK_THROWS_AS(cesaro_mixing_indicator({}, {0.0, 0.0}, {0.0, 0.0}), EmptyInput);
}

TEST_CASE("weyl detector locks onto the rotation frequency") {
  const auto rot = fifth_rotation();
  CHECK(weyl_sum(rot, Observable::fourier(1), 0.6, 1000, 2, 5) > 0.99);
  CHECK(weyl_sum(rot, Observable::fourier(1), 0.6 + 0.1234, 1000, 2, 5) < 0.01);
  // constant observable at frequency zero keeps its full mass
  CHECK(weyl_sum(rot, Observable::fourier(0), 0.0, 100, 1, 5) == doctest::Approx(1.0));
  // mean-zero observable at frequency zero loses it
  CHECK(weyl_sum(beta_rotation(beta_basis()), Observable::fourier(1), 0.0, 10000, 2, 5) < 0.05);
}

TEST_CASE("constant roof flow is a product with the circle") {
  const auto b = beta_basis();
  const auto rot = beta_rotation(b);
  const std::vector<FieldElement> one = {el(b, 1), el(b, 1)};
  const double dt = 0.4714045207910317;
  CHECK(flow_weyl_sum(rot, one, Observable::fourier_fiber(1), 1.0, dt, 2000, 2, 17) > 0.95);
  CHECK(flow_weyl_sum(rot, one, Observable::fourier_fiber(1), 1.37, dt, 2000, 2, 17) < 0.05);
}

TEST_CASE("excluded frequency stays quiet along the flow") {
  const auto b = beta_basis();
  IET base({el(b, Rational(1, 2)), el(b, 0, 1), el(b, 0, 0, 1), el(b, Rational(1, 3))},
           Permutation({4, 2, 3, 1}));
  // roof (1, 1/2, 1/3, 1) pairs to 5/3 on the first cycle, so 1/2 is excluded
  const std::vector<FieldElement> roof = {el(b, 1), el(b, Rational(1, 2)),
                                          el(b, Rational(1, 3)), el(b, 1)};
  const double w = flow_weyl_sum(base, roof, Observable::fourier_fiber(1), 0.5,
                                 0.4714045207910317, 10000, 2, 17);
  CHECK(w < 0.05);
}

TEST_CASE("spectral input validation") {
  const auto rot = fifth_rotation();
  const auto f = Observable::fourier(1);
  CHECK_THROWS_AS(birkhoff_correlation(rot, f, f, 0, 10, 1), BadParameters);
  CHECK_THROWS_AS(birkhoff_correlation(rot, f, f, 10, 0, 1), BadParameters);
  CHECK_THROWS_AS(birkhoff_correlation(rot, Observable::indicator(2), f, 10, 10, 1),
                  BadParameters);
  CHECK_THROWS_AS(birkhoff_correlation(rot, Observable::fourier_chart(1, 1), f, 10, 10, 1),
                  BadParameters);
  CHECK_THROWS_AS(birkhoff_correlation(rot, Observable::fourier_fiber(1), f, 10, 10, 1),
                  BadParameters);
  CHECK_THROWS_AS(weyl_sum(rot, Observable::fourier_fiber(1), 0.5, 10, 1, 1), BadParameters);

  const std::vector<FieldElement> roof = {fe(1), fe(1)};
  CHECK_THROWS_AS(special_flow_correlation(rot, {fe(1)}, f, f, 0.3, 10, 10, 1), BadParameters);
  CHECK_THROWS_AS(special_flow_correlation(rot, {fe(1), fe(0)}, f, f, 0.3, 10, 10, 1),
                  NonPositiveHeight);
  CHECK_THROWS_AS(special_flow_correlation(rot, roof, f, f, 0.0, 10, 10, 1), BadParameters);
  CHECK_THROWS_AS(flow_weyl_sum(rot, roof, f, 0.5, -1.0, 10, 1, 1), BadParameters);

  // seeded runs are reproducible
  auto a = birkhoff_correlation(rot, f, f, 20, 100, 42);
  auto b = birkhoff_correlation(rot, f, f, 20, 100, 42);
  CHECK(a.correlations == b.correlations);
  CHECK(a.mean_f == b.mean_f);
  CHECK(a.seed == 42);
  CHECK(a.sample_count == 100);
  auto c = birkhoff_correlation(rot, f, f, 20, 100, 43);
  CHECK(a.mean_f != c.mean_f);
}

TEST_CASE("ratio classification is exact") {
  const auto b = beta_basis();
  CHECK(hv_classify(fe(1), fe(2)) == HvClass::AlmostIntegrable);
  CHECK(hv_classify(fe(2, 3), fe(4, 3)) == HvClass::AlmostIntegrable);
  CHECK(hv_classify(el(b, 0, 1), el(b, 0, 2)) == HvClass::AlmostIntegrable);
  CHECK(hv_classify(el(b, 1), el(b, 1, 1)) == HvClass::WeakMixing);
  CHECK(hv_classify(el(b, 0, 1), el(b, 0, 0, 1)) == HvClass::WeakMixing);
  CHECK(hv_classify(el(b, 0, 1), el(b, 0, 1, 1)) == HvClass::WeakMixing);
  CHECK_THROWS_AS(hv_classify(fe(0), fe(1)), BadParameters);
  CHECK_THROWS_AS(hv_classify(fe(1), fe(1)), BadParameters);
  CHECK_THROWS_AS(hv_classify(fe(2), fe(1)), BadParameters);
  CHECK_THROWS_AS(hv_classify(fe(1), el(b, 2)), BasisMismatch);
}

TEST_CASE("eigenvalue grid follows the direction") {
  auto vertical = hv_eigenvalues(1.5707963267948966, 3, 3);
  REQUIRE(vertical.size() == 49);
  CHECK(vertical.front().j == -3);
  CHECK(vertical.front().k == -3);
  for (const auto& e : vertical) CHECK(e.alpha == doctest::Approx(e.k).epsilon(1e-12));

  auto diagonal = hv_eigenvalues(0.7853981633974483, 1, 1);
  const double inv_rt2 = 0.7071067811865476;
  for (const auto& e : diagonal) {
    CHECK(e.alpha == doctest::Approx((e.j + e.k) * inv_rt2));
    if (e.j == 0 && e.k == 0) CHECK(e.alpha == 0.0);
  }
  CHECK_THROWS_AS(hv_eigenvalues(1.0, -1, 0), BadParameters);
}

TEST_CASE("staircase eigenfunctions hold along the flow") {
  auto s = build_hv_surface(fe(1), fe(2));
  const double theta = 1.0471975511965976;
  for (auto [j, k] : std::vector<std::pair<int, int>>{{1, 0}, {0, 1}, {2, -1}, {-3, 3}}) {
    CHECK(verify_hv_eigenfunction(s, j, k, theta, 20, 10.0, 23) < 1e-9);
  }
  CHECK(verify_hv_eigenfunction(s, 0, 0, theta, 5, 10.0, 23) == 0.0);

  // an irrational side ratio breaks the chart periodicity
  const auto b = beta_basis();
  auto si = build_hv_surface(el(b, 1), el(b, 1, 1));
  CHECK(verify_hv_eigenfunction(si, 1, 0, theta, 20, 10.0, 23) > 0.1);

  CHECK_THROWS_AS(verify_hv_eigenfunction(s, 1, 0, -0.5, 5, 10.0, 1), BadParameters);
  CHECK_THROWS_AS(verify_hv_eigenfunction(s, 1, 0, theta, 0, 10.0, 1), BadParameters);
  CHECK_THROWS_AS(verify_hv_eigenfunction(s, 1, 0, theta, 5, 0.0, 1), BadParameters);
}

TEST_CASE("rectangle counts follow the convergents") {
  CHECK(fundamental_rectangle_count(1, 2) == 3);
  CHECK(fundamental_rectangle_count(2, 3) == 5);
  CHECK(fundamental_rectangle_count(3, 5) == 16);
  CHECK(fundamental_rectangle_count(5, 7) == 24);
  CHECK(fundamental_rectangle_count(12, 17) == 145);
  CHECK(fundamental_rectangle_count(29, 41) == 840);
  CHECK_THROWS_AS(fundamental_rectangle_count(0, 2), BadConvergent);
  CHECK_THROWS_AS(fundamental_rectangle_count(2, 2), BadConvergent);
  CHECK_THROWS_AS(fundamental_rectangle_count(3, 2), BadConvergent);
  CHECK_THROWS_AS(fundamental_rectangle_count(2, 4), BadConvergent);
  CHECK_THROWS_AS(fundamental_rectangle_count(-1, 3), BadConvergent);

  CHECK(fundamental_rectangle_side(fe(2), 5) == fe(2, 5));
  CHECK_THROWS_AS(fundamental_rectangle_side(fe(2), 0), BadConvergent);
  CHECK_THROWS_AS(fundamental_rectangle_side(fe(0), 5), BadParameters);

  // counts blow up along the convergents of an irrational ratio
  auto conv = continued_fraction_convergents(std::sqrt(2.0) / 2.0, 12);
  long long prev = 0;
  int admissible = 0;
  for (const auto& c : conv) {
    const long long n = static_cast<long long>(c.n);
    const long long m = static_cast<long long>(c.m);
    if (n <= 0 || n >= m) continue;
    const long long count = fundamental_rectangle_count(n, m);
    CHECK(count > prev);
    prev = count;
    ++admissible;
  }
  CHECK(admissible >= 10);
}

}  // TEST_SUITE
