#include "ttlab/linalg.hpp"

#include <utility>

namespace ttlab {

IntMatrix zero_matrix(int rows, int cols) { return IntMatrix(rows, std::vector<mpz_class>(cols, 0)); }

IntMatrix transpose(const IntMatrix& m) {
  if (m.empty()) return {};
  IntMatrix t = zero_matrix(static_cast<int>(m[0].size()), static_cast<int>(m.size()));
  for (size_t i = 0; i < m.size(); ++i)
    for (size_t j = 0; j < m[i].size(); ++j) t[j][i] = m[i][j];
  return t;
}

int rank(IntMatrix m) {
  const int rows = static_cast<int>(m.size());
  if (rows == 0) return 0;
  const int cols = static_cast<int>(m[0].size());
  mpz_class prev = 1;
  int r = 0;
  for (int c = 0; c < cols && r < rows; ++c) {
    int pivot = -1;
    for (int i = r; i < rows; ++i)
      if (m[i][c] != 0) {
        pivot = i;
        break;
      }
    if (pivot < 0) continue;
    std::swap(m[r], m[pivot]);
    for (int i = r + 1; i < rows; ++i) {
      for (int j = c + 1; j < cols; ++j) {
        m[i][j] = m[r][c] * m[i][j] - m[i][c] * m[r][j];
        mpz_divexact(m[i][j].get_mpz_t(), m[i][j].get_mpz_t(), prev.get_mpz_t());
      }
      m[i][c] = 0;
    }
    prev = m[r][c];
    ++r;
  }
  return r;
}

int rank_mod2(BitMatrix m) {
  const int rows = static_cast<int>(m.size());
  if (rows == 0) return 0;
  const int cols = static_cast<int>(m[0].size());
  int r = 0;
  for (int c = 0; c < cols && r < rows; ++c) {
    int pivot = -1;
    for (int i = r; i < rows; ++i)
      if (m[i][c] & 1) {
        pivot = i;
        break;
      }
    if (pivot < 0) continue;
    std::swap(m[r], m[pivot]);
    for (int i = 0; i < rows; ++i)
      if (i != r && (m[i][c] & 1))
        for (int j = c; j < cols; ++j) m[i][j] ^= m[r][j];
    ++r;
  }
  return r;
}

}  // namespace ttlab
