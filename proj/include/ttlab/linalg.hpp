#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <vector>

namespace ttlab {

/// Dense integer matrix, row-major.
using IntMatrix = std::vector<std::vector<mpz_class>>;

IntMatrix zero_matrix(int rows, int cols);
IntMatrix transpose(const IntMatrix& m);

/// Rank over the rationals by fraction-free (Bareiss) elimination.
int rank(IntMatrix m);

/// Z/2 linear algebra on byte matrices (each entry 0 or 1).
using BitMatrix = std::vector<std::vector<uint8_t>>;
int rank_mod2(BitMatrix m);

}  // namespace ttlab
