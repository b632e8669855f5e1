#include "veechmix/field_element.hpp"

#include <cmath>
#include <sstream>

namespace veechmix {

namespace {
constexpr double kTieGuard = 1e-9;
}

FieldElement::FieldElement() : basis_(RealBasis::rationals()), coords_(1, Rational(0)) {}

FieldElement::FieldElement(Rational r)
    : basis_(RealBasis::rationals()), coords_(1, std::move(r)) {}

FieldElement::FieldElement(BasisPtr basis, std::vector<Rational> coords)
    : basis_(std::move(basis)), coords_(std::move(coords)) {
  if (!basis_) throw BadParameters("field element without a basis");
  if (coords_.size() != basis_->size())
    throw BasisMismatch("coordinate count does not match basis size");
}

FieldElement FieldElement::zero(const BasisPtr& basis) {
  return FieldElement(basis, std::vector<Rational>(basis->size(), Rational(0)));
}

FieldElement FieldElement::one(const BasisPtr& basis) {
  return from_rational(basis, Rational(1));
}

FieldElement FieldElement::from_rational(const BasisPtr& basis, const Rational& r) {
  std::vector<Rational> c(basis->size(), Rational(0));
  c[0] = r;
  return FieldElement(basis, std::move(c));
}

FieldElement FieldElement::scaled_symbol(const BasisPtr& basis, std::size_t index,
                                         const Rational& coefficient) {
  if (index >= basis->size()) throw OutOfDomain("basis symbol index out of range");
  std::vector<Rational> c(basis->size(), Rational(0));
  c[index] = coefficient;
  return FieldElement(basis, std::move(c));
}

double FieldElement::hint() const {
  double v = 0.0;
  for (std::size_t i = 0; i < coords_.size(); ++i)
    v += to_double(coords_[i]) * basis_->hint(i);
  return v;
}

bool FieldElement::is_zero() const {
  for (const auto& c : coords_)
    if (c != 0) return false;
  return true;
}

bool FieldElement::is_rational() const {
  for (std::size_t i = 1; i < coords_.size(); ++i)
    if (coords_[i] != 0) return false;
  return true;
}

Rational FieldElement::as_rational() const {
  if (!is_rational()) throw OutOfDomain("field element is not rational: " + to_string());
  return coords_[0];
}

bool FieldElement::is_integral() const {
  return is_rational() && is_integer(coords_[0]);
}

void FieldElement::require_same_basis(const FieldElement& other) const {
  if (!basis_->same(*other.basis_))
    throw BasisMismatch("arithmetic between elements over different bases");
}

FieldElement FieldElement::operator-() const {
  FieldElement r = *this;
  for (auto& c : r.coords_) c = -c;
  return r;
}

FieldElement& FieldElement::operator+=(const FieldElement& rhs) {
  require_same_basis(rhs);
  for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] += rhs.coords_[i];
  return *this;
}

FieldElement& FieldElement::operator-=(const FieldElement& rhs) {
  require_same_basis(rhs);
  for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] -= rhs.coords_[i];
  return *this;
}

FieldElement& FieldElement::operator*=(const Rational& s) {
  for (auto& c : coords_) c *= s;
  return *this;
}

FieldElement& FieldElement::operator/=(const Rational& s) {
  if (s == 0) throw NonPositiveInput("division by zero");
  for (auto& c : coords_) c /= s;
  return *this;
}

FieldElement operator*(const FieldElement& a, const FieldElement& b) {
  if (a.is_rational()) {
    FieldElement r = b;
    return r *= a.coords()[0];
  }
  if (b.is_rational()) {
    FieldElement r = a;
    return r *= b.coords()[0];
  }
  throw UnrepresentableProduct("product of two irrational elements leaves the Q-span: (" +
                               a.to_string() + ") * (" + b.to_string() + ")");
}

int FieldElement::compare(const FieldElement& a, const FieldElement& b) {
  a.require_same_basis(b);
  FieldElement d = a;
  d -= b;
  if (d.is_rational()) {
    const Rational& r = d.coords_[0];
    if (r < 0) return -1;
    if (r > 0) return 1;
    return 0;
  }
  double h = d.hint();
  double scale = std::max({1.0, std::fabs(a.hint()), std::fabs(b.hint())});
  if (std::fabs(h) >= kTieGuard * scale) return h < 0 ? -1 : 1;
  // Irrational coordinates present but the hints collide: refusing beats
  // guessing, because the declared hints cannot certify the sign.
  throw AmbiguousComparison("cannot order " + a.to_string() + " and " + b.to_string() +
                            " (hint gap below guard)");
}

bool FieldElement::operator==(const FieldElement& rhs) const {
  require_same_basis(rhs);
  return coords_ == rhs.coords_;
}

std::string FieldElement::to_string() const {
  std::ostringstream out;
  bool wrote = false;
  for (std::size_t i = 0; i < coords_.size(); ++i) {
    if (coords_[i] == 0) continue;
    Rational c = coords_[i];
    if (wrote) {
      out << (c < 0 ? " - " : " + ");
      if (c < 0) c = -c;
    }
    if (i == 0) {
      out << veechmix::to_string(c);
    } else {
      out << veechmix::to_string(c) << "*" << basis_->label(i);
    }
    wrote = true;
  }
  if (!wrote) out << "0";
  return out.str();
}

}  // namespace veechmix
