#include "veechmix/iet.hpp"

#include "veechmix/errors.hpp"
#include "veechmix/linalg.hpp"

namespace veechmix {

IET::IET(std::vector<FieldElement> lengths, Permutation perm)
    : lengths_(std::move(lengths)), perm_(std::move(perm)) {
  if (lengths_.empty()) throw EmptyInput("exchange with no intervals");
  if (lengths_.size() != perm_.size())
    throw BadParameters("length count does not match permutation size");
  const BasisPtr& b = lengths_[0].basis();
  for (const auto& len : lengths_) {
    if (!len.basis()->same(*b)) throw BasisMismatch("interval lengths over different bases");
    if (len.sign() <= 0) throw NonPositiveInput("interval length must be positive");
  }

  const std::size_t m = lengths_.size();
  lefts_.reserve(m + 1);
  lefts_.push_back(FieldElement::zero(b));
  for (std::size_t j = 0; j < m; ++j) lefts_.push_back(lefts_.back() + lengths_[j]);

  // M_j = sum of lambda_i over pi(i) < pi(j); w_j = M_j - L_j.
  translations_.reserve(m);
  for (std::size_t j = 1; j <= m; ++j) {
    FieldElement image_left = FieldElement::zero(b);
    for (std::size_t i = 1; i <= m; ++i)
      if (perm_.image(static_cast<int>(i)) < perm_.image(static_cast<int>(j)))
        image_left += lengths_[i - 1];
    translations_.push_back(image_left - lefts_[j - 1]);
  }
}

int IET::interval_index(const FieldElement& x) const {
  if (x.sign() < 0 || FieldElement::compare(x, total_length()) >= 0)
    throw OutOfDomain("point outside the exchange domain: " + x.to_string());
  // lefts_ is increasing; find the last L_j <= x.
  int j = 1;
  while (j < static_cast<int>(lengths_.size()) &&
         FieldElement::compare(lefts_[j], x) <= 0)
    ++j;
  return j;
}

IET IET::inverse() const {
  const std::size_t m = lengths_.size();
  std::vector<FieldElement> inv_lengths;
  inv_lengths.reserve(m);
  for (std::size_t k = 1; k <= m; ++k)
    inv_lengths.push_back(lengths_[perm_.preimage(static_cast<int>(k)) - 1]);
  return IET(std::move(inv_lengths), perm_.inverse());
}

FieldElement apply(const IET& iet, const FieldElement& x) {
  return x + iet.translations()[iet.interval_index(x) - 1];
}

std::vector<FieldElement> orbit(const IET& iet, const FieldElement& x, std::size_t n) {
  std::vector<FieldElement> out;
  out.reserve(n + 1);
  out.push_back(x);
  for (std::size_t k = 0; k < n; ++k) out.push_back(apply(iet, out.back()));
  return out;
}

bool lengths_rationally_independent(const IET& iet) {
  std::vector<std::vector<Rational>> rows;
  rows.reserve(iet.size());
  for (const auto& len : iet.lengths()) rows.push_back(len.coords());
  return rank_over_q(std::move(rows)) == iet.size();
}

}  // namespace veechmix
