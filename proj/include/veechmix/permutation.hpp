#pragma once

#include <cstddef>
#include <vector>

namespace veechmix {

// Permutation of {1..m}, stored 1-indexed: images()[j-1] = pi(j).
class Permutation {
 public:
  explicit Permutation(std::vector<int> images);

  static Permutation identity(std::size_t m);

  std::size_t size() const { return images_.size(); }
  int image(int j) const;     // pi(j), 1 <= j <= m
  int preimage(int k) const;  // pi^{-1}(k), 1 <= k <= m
  const std::vector<int>& images() const { return images_; }

  bool is_identity() const;
  Permutation inverse() const;

  bool operator==(const Permutation& rhs) const { return images_ == rhs.images_; }
  bool operator!=(const Permutation& rhs) const { return !(*this == rhs); }

 private:
  std::vector<int> images_;
  std::vector<int> preimages_;
};

// True iff no proper prefix {1..k}, k < m, is invariant under pi. Reducible
// permutations split the interval exchange into independent blocks.
bool is_irreducible(const Permutation& pi);

// The successor permutation on {0..m}: sigma(i) = pi^{-1}(pi(i)+1) - 1 under
// the extension pi(0) = 0, pi(m+1) = m+1. Returned as a flat array indexed by i.
std::vector<int> sigma_pi(const Permutation& pi);

// Orbit partition of {0..m} under sigma. Cycles are listed by ascending
// minimum, each cycle in orbit order starting from its smallest element.
std::vector<std::vector<int>> invariant_sets(const std::vector<int>& sigma);

// For each cycle S the integer vector b_S of length m with
// b_{S,i} = chi_S(i-1) - chi_S(i), 1 <= i <= m. Entries lie in {-1, 0, 1} and
// the vectors sum to zero over all cycles. Throws BadParameters unless the
// cycles partition {0..m}.
std::vector<std::vector<int>> b_vectors(const std::vector<std::vector<int>>& cycles,
                                        std::size_t m);

// sigma_pi + invariant_sets + b_vectors in one pass.
struct SigmaDecomposition {
  std::vector<int> sigma;
  std::vector<std::vector<int>> cycles;
  std::vector<std::vector<int>> b;
};

SigmaDecomposition sigma_decomposition(const Permutation& pi);

}  // namespace veechmix
