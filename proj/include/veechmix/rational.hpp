#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

#include "veechmix/errors.hpp"

namespace veechmix {

using BigInt = boost::multiprecision::cpp_int;

// Exact rational. cpp_rational keeps the invariants we need: always reduced,
// denominator > 0, arbitrary precision.
using Rational = boost::multiprecision::cpp_rational;

inline Rational make_rational(long long num, long long den = 1) {
  if (den == 0) throw NonPositiveInput("rational with zero denominator");
  return Rational(BigInt(num), BigInt(den));
}

inline BigInt num(const Rational& r) { return boost::multiprecision::numerator(r); }
inline BigInt den(const Rational& r) { return boost::multiprecision::denominator(r); }

inline double to_double(const Rational& r) { return r.template convert_to<double>(); }

inline bool is_integer(const Rational& r) { return den(r) == 1; }

// Largest integer <= r.
inline BigInt floor_int(const Rational& r) {
  BigInt q = num(r) / den(r);
  if (r < 0 && q * den(r) != num(r)) --q;
  return q;
}

std::string to_string(const Rational& r);

// Accepts "p", "p/q", and leading minus signs. Throws ParseError otherwise.
Rational parse_rational(const std::string& text);

}  // namespace veechmix
