#include "veechmix/contfrac.hpp"

#include <cmath>

#include "veechmix/errors.hpp"

namespace veechmix {

namespace {

constexpr std::size_t kMaxTerms = 40;
constexpr double kFloatTail = 1e-12;

// Shared recurrence. Consumes partial quotients until `next` runs dry.
// Leading zero convergents (from x < 1, a0 = 0) are not reported; the first
// reported convergent of 1/2 is 1/2 itself.
template <typename NextQuotient>
std::vector<Convergent> expand(NextQuotient next, std::size_t max_count) {
  const std::size_t cap = std::min(max_count, kMaxTerms);
  std::vector<Convergent> out;
  if (cap == 0) return out;
  BigInt h_prev = 1, h_prev2 = 0;  // numerators
  BigInt k_prev = 0, k_prev2 = 1;  // denominators
  BigInt a;
  // cap + 1 quotients suffice: only the a0 = 0 convergent 0/1 is skipped.
  for (std::size_t terms = 0; terms < cap + 1 && next(a); ++terms) {
    BigInt h = a * h_prev + h_prev2;
    BigInt k = a * k_prev + k_prev2;
    h_prev2 = h_prev;
    h_prev = h;
    k_prev2 = k_prev;
    k_prev = k;
    if (h == 0) continue;
    out.push_back(Convergent{h, k});
    if (out.size() == cap) break;
  }
  return out;
}

}  // namespace

std::vector<Convergent> continued_fraction_convergents(const Rational& x,
                                                       std::size_t max_count) {
  if (x <= 0) throw NonPositiveInput("continued fraction of a non-positive value");
  BigInt p = num(x), q = den(x);
  auto next = [&](BigInt& a) {
    if (q == 0) return false;
    a = p / q;
    BigInt r = p - a * q;
    p = q;
    q = r;
    return true;
  };
  return expand(next, max_count);
}

std::vector<Convergent> continued_fraction_convergents(double x, std::size_t max_count) {
  if (!(x > 0) || !std::isfinite(x))
    throw NonPositiveInput("continued fraction of a non-positive value");
  double y = x;
  bool done = false;
  auto next = [&](BigInt& a) {
    if (done) return false;
    double fl = std::floor(y);
    if (fl > 9e15) return false;  // past integer resolution of a double
    a = BigInt(static_cast<long long>(fl));
    double frac = y - fl;
    if (frac < kFloatTail) {
      done = true;  // exhausted the hint's precision (or the value is rational)
    } else {
      y = 1.0 / frac;
    }
    return true;
  };
  return expand(next, max_count);
}

std::vector<Convergent> continued_fraction_convergents(const FieldElement& x,
                                                       std::size_t max_count) {
  if (x.is_rational()) return continued_fraction_convergents(x.as_rational(), max_count);
  if (x.sign() <= 0) throw NonPositiveInput("continued fraction of a non-positive value");
  return continued_fraction_convergents(x.hint(), max_count);
}

}  // namespace veechmix
