#include "veechmix/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "veechmix/errors.hpp"
#include "veechmix/flow.hpp"

namespace veechmix {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

std::complex<double> unit_phase(double turns) {
  return std::polar(1.0, kTwoPi * turns);
}

void require_counts(std::size_t max_lag, std::size_t samples) {
  if (max_lag < 1) throw BadParameters("need max_lag of at least 1");
  if (samples < 1) throw BadParameters("need at least one averaging sample");
}

void require_iet_observable(const Observable& f, std::size_t m) {
  switch (f.kind) {
    case Observable::Kind::FourierCircle:
      return;
    case Observable::Kind::Indicator:
      if (f.j < 0 || static_cast<std::size_t>(f.j) >= m) {
        throw BadParameters("indicator interval out of range");
      }
      return;
    default:
      throw BadParameters("this observable needs a flow state, not an exchange orbit");
  }
}

void require_flow_observable(const Observable& f, std::size_t m) {
  if (f.kind == Observable::Kind::Indicator &&
      (f.j < 0 || static_cast<std::size_t>(f.j) >= m)) {
    throw BadParameters("indicator interval out of range");
  }
}

std::complex<double> eval_iet(const Observable& f, double x, double total, int interval) {
  switch (f.kind) {
    case Observable::Kind::FourierCircle:
      return unit_phase(f.j * x / total);
    case Observable::Kind::Indicator:
      return interval == f.j ? 1.0 : 0.0;
    default:
      throw BadParameters("this observable needs a flow state, not an exchange orbit");
  }
}

std::complex<double> eval_flow(const Observable& f, const SpecialFlowSampler& s) {
  switch (f.kind) {
    case Observable::Kind::FourierCircle:
      return unit_phase(f.j * s.x() / s.base().total);
    case Observable::Kind::Indicator:
      return s.interval() == f.j ? 1.0 : 0.0;
    case Observable::Kind::FourierChart:
      return unit_phase(f.j * s.x() + f.k * s.y());
    case Observable::Kind::FourierFiber:
      return unit_phase(f.j * s.y() / s.roof_at_state());
  }
  throw InternalError("unhandled observable kind");
}

std::vector<double> roof_hints(const IET& iet, const std::vector<FieldElement>& roof) {
  if (roof.size() != iet.size()) {
    throw BadParameters("need one roof value per exchanged interval");
  }
  std::vector<double> out;
  out.reserve(roof.size());
  for (const auto& r : roof) {
    if (r.sign() <= 0) throw NonPositiveHeight("roof values must be positive");
    out.push_back(r.hint());
  }
  return out;
}

MixingReport report_from_orbit(const std::vector<std::complex<double>>& fs,
                               const std::vector<std::complex<double>>& gs,
                               std::size_t max_lag, std::size_t samples, std::uint64_t seed) {
  MixingReport rep;
  rep.sample_count = samples;
  rep.seed = seed;

  std::complex<double> sf = 0.0, sg = 0.0;
  for (std::size_t i = 0; i < fs.size(); ++i) {
    sf += fs[i];
    sg += gs[i];
  }
  rep.mean_f = sf / static_cast<double>(fs.size());
  rep.mean_g = sg / static_cast<double>(gs.size());

  rep.lags.resize(max_lag + 1);
  rep.correlations.resize(max_lag + 1);
  for (std::size_t n = 0; n <= max_lag; ++n) {
    rep.lags[n] = n;
    std::complex<double> acc = 0.0;
    for (std::size_t k = 0; k < samples; ++k) acc += fs[n + k] * std::conj(gs[k]);
    rep.correlations[n] = acc / static_cast<double>(samples);
  }
  rep.cesaro = cesaro_mixing_indicator(rep.correlations, rep.mean_f, rep.mean_g);
  return rep;
}

// Even-odd crossing test on the float vertices.
bool inside_polygon_hint(const TranslationSurface& s, int p, double px, double py) {
  const std::size_t n = s.vertex_count(p);
  bool in = false;
  for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
    const Vec2d a = s.vertex_hint(p, static_cast<int>(i));
    const Vec2d b = s.vertex_hint(p, static_cast<int>(j));
    if ((a.y > py) != (b.y > py)) {
      const double xint = a.x + (py - a.y) * (b.x - a.x) / (b.y - a.y);
      if (px < xint) in = !in;
    }
  }
  return in;
}

}  // namespace

FloatIET::FloatIET(const IET& iet) {
  for (const auto& e : iet.left_endpoints()) left.push_back(e.hint());
  for (const auto& w : iet.translations()) shift.push_back(w.hint());
  total = left.back();
}

int FloatIET::interval_of(double x) const {
  const int m = static_cast<int>(shift.size());
  int j = static_cast<int>(std::upper_bound(left.begin(), left.end(), x) - left.begin()) - 1;
  if (j < 0) j = 0;
  if (j >= m) j = m - 1;
  return j;
}

double FloatIET::apply_at(double x, int interval) const {
  double y = x + shift[static_cast<std::size_t>(interval)];
  if (y < 0.0) y = 0.0;
  if (y >= total) y = std::nextafter(total, 0.0);
  return y;
}

SpecialFlowSampler::SpecialFlowSampler(const IET& iet, const std::vector<FieldElement>& roof)
    : base_(iet), roof_(roof_hints(iet, roof)) {}

void SpecialFlowSampler::seed_state(double x0, double y0) {
  x_ = x0;
  interval_ = base_.interval_of(x0);
  const double r = roof_[static_cast<std::size_t>(interval_)];
  y_ = y0;
  if (y_ < 0.0) y_ = 0.0;
  if (y_ >= r) y_ = std::nextafter(r, 0.0);
}

void SpecialFlowSampler::advance(double dt) {
  y_ += dt;
  while (y_ >= roof_[static_cast<std::size_t>(interval_)]) {
    y_ -= roof_[static_cast<std::size_t>(interval_)];
    x_ = base_.apply_at(x_, interval_);
    interval_ = base_.interval_of(x_);
  }
}

MixingReport birkhoff_correlation(const IET& iet, const Observable& f, const Observable& g,
                                  std::size_t max_lag, std::size_t samples, std::uint64_t seed) {
  require_counts(max_lag, samples);
  require_iet_observable(f, iet.size());
  require_iet_observable(g, iet.size());

  const FloatIET T(iet);
  std::mt19937_64 rng(seed);
  double x = std::uniform_real_distribution<double>(0.0, T.total)(rng);

  const std::size_t n_pts = max_lag + samples;
  std::vector<std::complex<double>> fs(n_pts), gs(n_pts);
  for (std::size_t i = 0; i < n_pts; ++i) {
    const int interval = T.interval_of(x);
    fs[i] = eval_iet(f, x, T.total, interval);
    gs[i] = eval_iet(g, x, T.total, interval);
    x = T.apply_at(x, interval);
  }
  return report_from_orbit(fs, gs, max_lag, samples, seed);
}

MixingReport special_flow_correlation(const IET& iet, const std::vector<FieldElement>& roof,
                                      const Observable& f, const Observable& g, double dt,
                                      std::size_t max_lag, std::size_t samples,
                                      std::uint64_t seed) {
  require_counts(max_lag, samples);
  require_flow_observable(f, iet.size());
  require_flow_observable(g, iet.size());
  if (!(dt > 0.0) || !std::isfinite(dt)) throw BadParameters("time step must be positive");

  SpecialFlowSampler flow(iet, roof);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double x0 = unit(rng) * flow.base().total;
  flow.seed_state(x0, 0.0);
  flow.seed_state(x0, unit(rng) * flow.roof_at_state());

  const std::size_t n_pts = max_lag + samples;
  std::vector<std::complex<double>> fs(n_pts), gs(n_pts);
  for (std::size_t i = 0; i < n_pts; ++i) {
    fs[i] = eval_flow(f, flow);
    gs[i] = eval_flow(g, flow);
    flow.advance(dt);
  }
  return report_from_orbit(fs, gs, max_lag, samples, seed);
}

std::vector<double> cesaro_mixing_indicator(const std::vector<std::complex<double>>& correlations,
                                            std::complex<double> mean_f,
                                            std::complex<double> mean_g) {
  if (correlations.empty()) throw EmptyInput("need at least one correlation value");
  const std::complex<double> product = mean_f * std::conj(mean_g);
  std::vector<double> out(correlations.size());
  double cum = 0.0;
  for (std::size_t n = 0; n < correlations.size(); ++n) {
    cum += std::abs(correlations[n] - product);
    out[n] = cum / static_cast<double>(n + 1);
  }
  return out;
}

namespace {

// Shared Weyl accumulator. next_value() yields f at the current state and
// advances it; the phase rotates by -freq turns per step.
template <typename NextValue>
double weyl_magnitude(double freq, std::size_t n_steps, NextValue next_value) {
  std::complex<double> acc = 0.0;
  std::complex<double> phase = 1.0;
  const std::complex<double> rot = unit_phase(-freq);
  for (std::size_t n = 0; n < n_steps; ++n) {
    acc += phase * next_value();
    phase *= rot;
    if ((n & 1023u) == 1023u) phase /= std::abs(phase);
  }
  return std::abs(acc) / static_cast<double>(n_steps);
}

}  // namespace

double weyl_sum(const IET& iet, const Observable& f, double alpha, std::size_t n_steps,
                std::size_t samples, std::uint64_t seed) {
  require_counts(n_steps, samples);
  require_iet_observable(f, iet.size());

  const FloatIET T(iet);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  double total_mag = 0.0;
  for (std::size_t s = 0; s < samples; ++s) {
    double x = unit(rng) * T.total;
    total_mag += weyl_magnitude(alpha, n_steps, [&]() {
      const int interval = T.interval_of(x);
      const std::complex<double> v = eval_iet(f, x, T.total, interval);
      x = T.apply_at(x, interval);
      return v;
    });
  }
  return total_mag / static_cast<double>(samples);
}

double flow_weyl_sum(const IET& iet, const std::vector<FieldElement>& roof, const Observable& f,
                     double alpha, double dt, std::size_t n_steps, std::size_t samples,
                     std::uint64_t seed) {
  require_counts(n_steps, samples);
  require_flow_observable(f, iet.size());
  if (!(dt > 0.0) || !std::isfinite(dt)) throw BadParameters("time step must be positive");

  SpecialFlowSampler flow(iet, roof);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  double total_mag = 0.0;
  for (std::size_t s = 0; s < samples; ++s) {
    const double x0 = unit(rng) * flow.base().total;
    flow.seed_state(x0, 0.0);
    flow.seed_state(x0, unit(rng) * flow.roof_at_state());
    total_mag += weyl_magnitude(alpha * dt, n_steps, [&]() {
      const std::complex<double> v = eval_flow(f, flow);
      flow.advance(dt);
      return v;
    });
  }
  return total_mag / static_cast<double>(samples);
}

HvClass hv_classify(const FieldElement& a, const FieldElement& b) {
  if (a.basis() != b.basis()) throw BasisMismatch("side lengths must share a basis");
  if (a.sign() <= 0 || FieldElement::compare(a, b) >= 0) {
    throw BadParameters("need 0 < a < b");
  }
  // a/b is rational iff the coordinate vectors are proportional over Q.
  for (std::size_t i = 0; i < b.coords().size(); ++i) {
    if (b.coord(i) != 0) {
      const Rational ratio = a.coord(i) / b.coord(i);
      return a == b * ratio ? HvClass::AlmostIntegrable : HvClass::WeakMixing;
    }
  }
  throw InternalError("positive element with zero coordinates");
}

std::vector<HvEigenvalue> hv_eigenvalues(double theta, int j_max, int k_max) {
  if (j_max < 0 || k_max < 0) throw BadParameters("mode ranges must be nonnegative");
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  std::vector<HvEigenvalue> out;
  out.reserve(static_cast<std::size_t>(2 * j_max + 1) * static_cast<std::size_t>(2 * k_max + 1));
  for (int j = -j_max; j <= j_max; ++j) {
    for (int k = -k_max; k <= k_max; ++k) {
      out.push_back({j, k, j * c + k * s});
    }
  }
  return out;
}

double verify_hv_eigenfunction(const TranslationSurface& surface, int j, int k, double theta,
                               std::size_t sample_count, double t_max, std::uint64_t seed) {
  if (sample_count < 1) throw BadParameters("need at least one sample");
  if (!(t_max > 0.0) || !std::isfinite(t_max)) throw BadParameters("need a positive time budget");
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  if (s <= 0.0) throw BadParameters("direction must point upward; transpose or reflect first");
  const double alpha = j * c + k * s;

  // Area-weighted polygon choice, then rejection sampling in the bounding box.
  std::vector<double> areas;
  double area_total = 0.0;
  for (std::size_t p = 0; p < surface.polygon_count(); ++p) {
    std::vector<Vec2d> verts;
    for (std::size_t i = 0; i < surface.vertex_count(static_cast<int>(p)); ++i) {
      verts.push_back(surface.vertex_hint(static_cast<int>(p), static_cast<int>(i)));
    }
    areas.push_back(polygon_area_hint(verts));
    area_total += areas.back();
  }

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  double max_residual = 0.0;
  for (std::size_t sample = 0; sample < sample_count; ++sample) {
    bool done = false;
    for (int attempt = 0; attempt < 64 && !done; ++attempt) {
      double pick = unit(rng) * area_total;
      int poly = 0;
      for (std::size_t p = 0; p < areas.size(); ++p) {
        if (pick < areas[p] || p + 1 == areas.size()) {
          poly = static_cast<int>(p);
          break;
        }
        pick -= areas[p];
      }
      double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
      for (std::size_t i = 0; i < surface.vertex_count(poly); ++i) {
        const Vec2d v = surface.vertex_hint(poly, static_cast<int>(i));
        xmin = std::min(xmin, v.x);
        xmax = std::max(xmax, v.x);
        ymin = std::min(ymin, v.y);
        ymax = std::max(ymax, v.y);
      }
      const double px = xmin + unit(rng) * (xmax - xmin);
      const double py = ymin + unit(rng) * (ymax - ymin);
      if (!inside_polygon_hint(surface, poly, px, py)) continue;
      const double t = unit(rng) * t_max;

      try {
        const FloatTraceResult r = trace_hint(surface, poly, {px, py}, {c, s}, t * s);
        const std::complex<double> f0 = unit_phase(j * px + k * py);
        const std::complex<double> f1 = unit_phase(j * r.position.x + k * r.position.y);
        const double residual = std::abs(f1 - unit_phase(alpha * t) * f0);
        max_residual = std::max(max_residual, residual);
        done = true;
      } catch (const SingularOrbit&) {
        // hit a cone point; redraw the sample
      }
    }
    if (!done) {
      throw SingularOrbit("could not find a nonsingular sample orbit; direction too special");
    }
  }
  return max_residual;
}

long long fundamental_rectangle_count(long long n, long long m) {
  if (n <= 0 || m <= n) throw BadConvergent("need 0 < n < m");
  if (std::gcd(n, m) != 1) throw BadConvergent("convergent n/m must be in lowest terms");
  return m * m - n * n;
}

FieldElement fundamental_rectangle_side(const FieldElement& b, long long m) {
  if (m <= 0) throw BadConvergent("denominator must be positive");
  if (b.sign() <= 0) throw BadParameters("outer side must be positive");
  return b / Rational(m);
}

}  // namespace veechmix
