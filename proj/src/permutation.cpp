#include "veechmix/permutation.hpp"

#include <numeric>

#include "veechmix/errors.hpp"

namespace veechmix {

Permutation::Permutation(std::vector<int> images) : images_(std::move(images)) {
  if (images_.empty()) throw EmptyInput("permutation of zero symbols");
  const int m = static_cast<int>(images_.size());
  preimages_.assign(m, 0);
  for (int j = 1; j <= m; ++j) {
    int k = images_[j - 1];
    if (k < 1 || k > m) throw BadParameters("permutation image out of range");
    if (preimages_[k - 1] != 0) throw BadParameters("permutation image repeated");
    preimages_[k - 1] = j;
  }
}

Permutation Permutation::identity(std::size_t m) {
  std::vector<int> v(m);
  std::iota(v.begin(), v.end(), 1);
  return Permutation(std::move(v));
}

int Permutation::image(int j) const {
  if (j < 1 || j > static_cast<int>(images_.size()))
    throw OutOfDomain("permutation argument out of range");
  return images_[j - 1];
}

int Permutation::preimage(int k) const {
  if (k < 1 || k > static_cast<int>(preimages_.size()))
    throw OutOfDomain("permutation argument out of range");
  return preimages_[k - 1];
}

bool Permutation::is_identity() const {
  for (std::size_t j = 0; j < images_.size(); ++j)
    if (images_[j] != static_cast<int>(j) + 1) return false;
  return true;
}

Permutation Permutation::inverse() const { return Permutation(preimages_); }

bool is_irreducible(const Permutation& pi) {
  const int m = static_cast<int>(pi.size());
  // pi{1..k} = {1..k} iff max(pi(1..k)) == k.
  int max_image = 0;
  for (int j = 1; j < m; ++j) {
    max_image = std::max(max_image, pi.image(j));
    if (max_image == j) return false;
  }
  return true;
}

std::vector<int> sigma_pi(const Permutation& pi) {
  const int m = static_cast<int>(pi.size());
  // Extended permutation on {0..m+1} with 0 and m+1 fixed.
  auto ext_image = [&](int j) { return (j == 0 || j == m + 1) ? j : pi.image(j); };
  auto ext_preimage = [&](int k) { return (k == 0 || k == m + 1) ? k : pi.preimage(k); };
  std::vector<int> sigma(m + 1);
  for (int i = 0; i <= m; ++i) sigma[i] = ext_preimage(ext_image(i) + 1) - 1;
  return sigma;
}

std::vector<std::vector<int>> invariant_sets(const std::vector<int>& sigma) {
  if (sigma.empty()) throw EmptyInput("empty sigma array");
  const int n = static_cast<int>(sigma.size());
  for (int v : sigma)
    if (v < 0 || v >= n) throw BadParameters("sigma image out of range");

  std::vector<bool> seen(n, false);
  std::vector<std::vector<int>> cycles;
  for (int start = 0; start < n; ++start) {
    if (seen[start]) continue;
    std::vector<int> cycle;
    int i = start;
    do {
      if (seen[i]) throw BadParameters("sigma is not a bijection");
      seen[i] = true;
      cycle.push_back(i);
      i = sigma[i];
    } while (i != start);
    cycles.push_back(std::move(cycle));
  }
  return cycles;
}

std::vector<std::vector<int>> b_vectors(const std::vector<std::vector<int>>& cycles,
                                        std::size_t m) {
  std::vector<int> owner(m + 1, -1);
  for (std::size_t c = 0; c < cycles.size(); ++c) {
    for (int i : cycles[c]) {
      if (i < 0 || i > static_cast<int>(m) || owner[i] != -1)
        throw BadParameters("cycles do not partition {0..m}");
      owner[i] = static_cast<int>(c);
    }
  }
  for (int o : owner)
    if (o == -1) throw BadParameters("cycles do not partition {0..m}");

  std::vector<std::vector<int>> b(cycles.size(), std::vector<int>(m, 0));
  for (std::size_t c = 0; c < cycles.size(); ++c)
    for (std::size_t i = 1; i <= m; ++i)
      b[c][i - 1] = (owner[i - 1] == static_cast<int>(c)) -
                    (owner[i] == static_cast<int>(c));
  return b;
}

SigmaDecomposition sigma_decomposition(const Permutation& pi) {
  SigmaDecomposition d;
  d.sigma = sigma_pi(pi);
  d.cycles = invariant_sets(d.sigma);
  d.b = b_vectors(d.cycles, pi.size());
  return d;
}

}  // namespace veechmix
