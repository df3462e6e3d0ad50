#include "gammadepth/linalg.hpp"

#include <utility>

namespace gd {

std::vector<int> row_reduce(const PrimeField& F, DenseMatrix& rows, int ncols) {
  std::vector<int> pivots;
  std::size_t r = 0;
  for (int c = 0; c < ncols && r < rows.size(); ++c) {
    std::size_t p = r;
    while (p < rows.size() && rows[p][static_cast<std::size_t>(c)] == 0) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[r], rows[p]);
    Coeff inv = F.inv(rows[r][static_cast<std::size_t>(c)]);
    for (auto& v : rows[r]) v = F.mul(v, inv);
    for (std::size_t q = 0; q < rows.size(); ++q) {
      if (q == r) continue;
      Coeff f = rows[q][static_cast<std::size_t>(c)];
      if (f == 0) continue;
      for (std::size_t k = 0; k < rows[q].size(); ++k) rows[q][k] = F.sub(rows[q][k], F.mul(f, rows[r][k]));
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

int rank(const PrimeField& field, DenseMatrix rows) {
  if (rows.empty()) return 0;
  return static_cast<int>(row_reduce(field, rows, static_cast<int>(rows.front().size())).size());
}

}  // namespace gd
