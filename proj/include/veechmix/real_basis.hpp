#pragma once

#include <memory>
#include <string>
#include <vector>

#include "veechmix/errors.hpp"

namespace veechmix {

// A declared Q-basis of real numbers. Slot 0 is always the rational unit "1"
// with hint exactly 1.0; the remaining labels name symbols that the caller
// asserts are Q-linearly independent (e.g. "sqrt2", "sqrt3"). Hints exist so
// values can be ordered and plotted; every verdict-grade decision uses the
// exact coordinates instead.
class RealBasis {
 public:
  static std::shared_ptr<const RealBasis> make(std::vector<std::string> labels,
                                               std::vector<double> hints);

  // The trivial basis {"1"}. Shared singleton.
  static const std::shared_ptr<const RealBasis>& rationals();

  std::size_t size() const { return labels_.size(); }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::vector<double>& hints() const { return hints_; }
  const std::string& label(std::size_t i) const { return labels_.at(i); }
  double hint(std::size_t i) const { return hints_.at(i); }

  // -1 when the label is absent.
  int index_of(const std::string& label) const;

  // Content equality; pointer identity is an accepted fast path.
  bool same(const RealBasis& other) const;

 private:
  RealBasis(std::vector<std::string> labels, std::vector<double> hints)
      : labels_(std::move(labels)), hints_(std::move(hints)) {}

  std::vector<std::string> labels_;
  std::vector<double> hints_;
};

using BasisPtr = std::shared_ptr<const RealBasis>;

}  // namespace veechmix
