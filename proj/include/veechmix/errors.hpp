#pragma once

#include <stdexcept>
#include <string>

namespace veechmix {

// Base for everything this library throws on purpose. The CLI maps these to
// exit code 65 (bad input data) unless a subclass says otherwise.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Arithmetic between field elements declared over different bases.
class BasisMismatch : public Error {
 public:
  using Error::Error;
};

// Two exact values whose float hints collide and whose exact difference is
// not zero. Callers must not guess; they see this instead.
class AmbiguousComparison : public Error {
 public:
  using Error::Error;
};

class EmptyInput : public Error {
 public:
  using Error::Error;
};

class NonPositiveInput : public Error {
 public:
  using Error::Error;
};

// A product that would leave the declared Q-span (e.g. symbol * symbol).
class UnrepresentableProduct : public Error {
 public:
  using Error::Error;
};

class OutOfDomain : public Error {
 public:
  using Error::Error;
};

// Permutation fixes a proper prefix; the construction needs irreducibility.
class ReducibleInput : public Error {
 public:
  using Error::Error;
};

class NonPositiveHeight : public Error {
 public:
  using Error::Error;
};

class NonRationalAngle : public Error {
 public:
  using Error::Error;
};

class NonIntegerGenus : public Error {
 public:
  using Error::Error;
};

class OverlappingSlits : public Error {
 public:
  using Error::Error;
};

class SlitOutsideSquare : public Error {
 public:
  using Error::Error;
};

class BadParameters : public Error {
 public:
  using Error::Error;
};

// Trajectory ran into a cone point (or an exact vertex hit).
class SingularOrbit : public Error {
 public:
  using Error::Error;
};

class TimeBudgetExceeded : public Error {
 public:
  using Error::Error;
};

class NoReturn : public Error {
 public:
  using Error::Error;
};

// A cut point of a return map could not be certified.
class SingularSection : public Error {
 public:
  using Error::Error;
};

class BadConvergent : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

// Filesystem trouble reading an input or writing an output.
class IoError : public Error {
 public:
  using Error::Error;
};

// Internal invariant violation; CLI maps this to exit code 70.
class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace veechmix
