#include "veechmix/real_basis.hpp"

#include <cmath>
#include <set>

namespace veechmix {

std::shared_ptr<const RealBasis> RealBasis::make(std::vector<std::string> labels,
                                                 std::vector<double> hints) {
  if (labels.empty()) throw EmptyInput("basis needs at least the unit slot");
  if (labels.size() != hints.size())
    throw BadParameters("basis labels and hints differ in length");
  if (labels[0] != "1" || hints[0] != 1.0)
    throw BadParameters("basis slot 0 must be \"1\" with hint 1.0");
  std::set<std::string> seen;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i].empty()) throw BadParameters("empty basis label");
    if (!seen.insert(labels[i]).second)
      throw BadParameters("duplicate basis label: " + labels[i]);
    if (!std::isfinite(hints[i]))
      throw BadParameters("non-finite hint for basis label " + labels[i]);
  }
  return std::shared_ptr<const RealBasis>(
      new RealBasis(std::move(labels), std::move(hints)));
}

const std::shared_ptr<const RealBasis>& RealBasis::rationals() {
  static const std::shared_ptr<const RealBasis> instance = make({"1"}, {1.0});
  return instance;
}

int RealBasis::index_of(const std::string& label) const {
  for (std::size_t i = 0; i < labels_.size(); ++i)
    if (labels_[i] == label) return static_cast<int>(i);
  return -1;
}

bool RealBasis::same(const RealBasis& other) const {
  if (this == &other) return true;
  return labels_ == other.labels_ && hints_ == other.hints_;
}

}  // namespace veechmix
