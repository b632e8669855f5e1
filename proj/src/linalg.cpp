#include "veechmix/linalg.hpp"

#include "veechmix/errors.hpp"

namespace veechmix {

std::size_t rank_over_q(std::vector<std::vector<Rational>> rows) {
  if (rows.empty()) throw EmptyInput("rank of an empty vector list");
  const std::size_t dim = rows[0].size();
  for (const auto& r : rows)
    if (r.size() != dim) throw BadParameters("rank input vectors differ in dimension");

  std::size_t rank = 0;
  for (std::size_t col = 0; col < dim && rank < rows.size(); ++col) {
    std::size_t pivot = rank;
    while (pivot < rows.size() && rows[pivot][col] == 0) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[rank], rows[pivot]);
    const Rational lead = rows[rank][col];
    for (std::size_t r = rank + 1; r < rows.size(); ++r) {
      if (rows[r][col] == 0) continue;
      const Rational f = rows[r][col] / lead;
      for (std::size_t c = col; c < dim; ++c) rows[r][c] -= f * rows[rank][c];
    }
    ++rank;
  }
  return rank;
}

bool integrally_independent(const FieldElement& u, const FieldElement& v) {
  if (!u.basis()->same(*v.basis()))
    throw BasisMismatch("independence test across different bases");
  if (u.is_zero() || v.is_zero()) return false;
  return rank_over_q({u.coords(), v.coords()}) == 2;
}

}  // namespace veechmix
