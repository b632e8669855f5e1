#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "veechmix/field_element.hpp"
#include "veechmix/iet.hpp"
#include "veechmix/surface.hpp"

namespace veechmix {

// Observables sampled along orbits. All Fourier kinds have unit modulus;
// mean-zero behaviour comes from subtracting the sampled means downstream.
struct Observable {
  enum class Kind {
    FourierCircle,  // x -> e(j * x / total_length) on an exchange
    Indicator,      // 1 on interval j, 0 elsewhere
    FourierChart,   // (x, y) -> e(j*x + k*y) on a flow state or surface chart
    FourierFiber,   // (x, y) -> e(j * y / roof(x)) over a suspension roof
  };

  Kind kind = Kind::FourierCircle;
  int j = 0;
  int k = 0;

  static Observable fourier(int j) { return {Kind::FourierCircle, j, 0}; }
  static Observable indicator(int interval) { return {Kind::Indicator, interval, 0}; }
  static Observable fourier_chart(int j, int k) { return {Kind::FourierChart, j, k}; }
  static Observable fourier_fiber(int j) { return {Kind::FourierFiber, j, 0}; }
};

// Double shadow of an exact exchange for long orbits. Exact maps never leave
// [0, total); the clamp in apply_at only absorbs last-bit float drift.
struct FloatIET {
  std::vector<double> left;   // m+1 breakpoints, left.back() == total
  std::vector<double> shift;  // m translations
  double total = 0.0;

  explicit FloatIET(const IET& iet);
  int interval_of(double x) const;
  double apply_at(double x, int interval) const;
  double apply(double x) const { return apply_at(x, interval_of(x)); }
};

// Time-dt sampling of the special flow over an exchange under a piecewise
// constant roof. State is (x, fiber height y) with 0 <= y < roof(interval).
class SpecialFlowSampler {
 public:
  SpecialFlowSampler(const IET& iet, const std::vector<FieldElement>& roof);

  void seed_state(double x0, double y0);
  void advance(double dt);

  double x() const { return x_; }
  double y() const { return y_; }
  int interval() const { return interval_; }
  double roof_at_state() const { return roof_[static_cast<std::size_t>(interval_)]; }
  const FloatIET& base() const { return base_; }

 private:
  FloatIET base_;
  std::vector<double> roof_;
  double x_ = 0.0;
  double y_ = 0.0;
  int interval_ = 0;
};

struct MixingReport {
  std::vector<std::size_t> lags;                   // 0..max_lag
  std::vector<std::complex<double>> correlations;  // C(n) per lag
  std::vector<double> cesaro;                      // M(N) for N = 1..max_lag+1
  std::complex<double> mean_f;
  std::complex<double> mean_g;
  std::size_t sample_count = 0;
  std::uint64_t seed = 0;
};

// C(n) = (1/samples) sum_k f(T^{n+k} x0) conj(g(T^k x0)) along one seeded
// orbit of length max_lag + samples.
MixingReport birkhoff_correlation(const IET& iet, const Observable& f, const Observable& g,
                                  std::size_t max_lag, std::size_t samples, std::uint64_t seed);

// Same estimator for the time-dt map of the special flow under `roof`.
MixingReport special_flow_correlation(const IET& iet, const std::vector<FieldElement>& roof,
                                      const Observable& f, const Observable& g, double dt,
                                      std::size_t max_lag, std::size_t samples,
                                      std::uint64_t seed);

// M(N) = (1/N) sum_{n<N} |C(n) - mean_f * conj(mean_g)|.
std::vector<double> cesaro_mixing_indicator(const std::vector<std::complex<double>>& correlations,
                                            std::complex<double> mean_f,
                                            std::complex<double> mean_g);

// |(1/N) sum_{n<N} e(-alpha n) f(T^n x0)|, averaged over seeded restarts.
// Near 1 when alpha is an eigenvalue carried by f, near 0 otherwise.
double weyl_sum(const IET& iet, const Observable& f, double alpha, std::size_t n_steps,
                std::size_t samples, std::uint64_t seed);

// Same detector sampled along the special flow at time step dt; alpha is a
// flow frequency, so the phase advances by alpha * dt per step.
double flow_weyl_sum(const IET& iet, const std::vector<FieldElement>& roof, const Observable& f,
                     double alpha, double dt, std::size_t n_steps, std::size_t samples,
                     std::uint64_t seed);

enum class HvClass { AlmostIntegrable, WeakMixing };

// Exact rationality test of a/b in the shared basis; needs 0 < a < b.
HvClass hv_classify(const FieldElement& a, const FieldElement& b);

struct HvEigenvalue {
  int j = 0;
  int k = 0;
  double alpha = 0.0;
};

// alpha_{jk} = j cos(theta) + k sin(theta) over the grid |j| <= j_max,
// |k| <= k_max, in row-major (j, k) order.
std::vector<HvEigenvalue> hv_eigenvalues(double theta, int j_max, int k_max);

// Max over seeded samples of |f(flow_t p) - e(alpha_{jk} t) f(p)| with
// f(x, y) = e(j x + k y) and t up to t_max at unit speed. Singular samples
// are redrawn. Small only when the chart translations keep j x + k y
// well defined modulo 1.
double verify_hv_eigenfunction(const TranslationSurface& surface, int j, int k, double theta,
                               std::size_t sample_count, double t_max, std::uint64_t seed);

// Fundamental-domain rectangle count m^2 - n^2 for a convergent n/m; needs
// 0 < n < m coprime.
long long fundamental_rectangle_count(long long n, long long m);

// Side length b/m of those rectangles.
FieldElement fundamental_rectangle_side(const FieldElement& b, long long m);

}  // namespace veechmix
