#pragma once

#include <array>
#include <cstdint>
#include <utility>
#include <vector>

namespace pascalforge {

// Residue census of row n of Pascal's triangle mod k: counts[r] is the number
// of 0 <= m <= n with C(n, m) congruent to r. Sum of counts is n + 1.
struct RowResidueCensus {
  uint64_t n = 0;
  uint64_t k = 2;
  std::vector<uint64_t> counts;

  uint64_t total() const;
};

// Dense census by folding the row scanner; 2 <= k <= 65536.
RowResidueCensus census_row(uint64_t n, uint64_t k);

// Glaisher: number of odd entries in row n, 2^(count of 1s in binary n).
uint64_t glaisher_count(uint64_t n);

// Fine: number of entries of row n not divisible by p, product of (n_i + 1)
// over base-p digits.
uint64_t fine_count(uint64_t n, uint64_t p);

// Hexel-Sachs mod 3 counts (a_1, a_2), digit counts taken in base 3:
// 2^(|n|_1 - 1) * (3^|n|_2 +- 1). Evaluated in exact rational arithmetic and
// asserted integral.
std::pair<uint64_t, uint64_t> hexel_sachs_mod3(uint64_t n);

// Davis-Webb mod 4 counts (a_1, a_2, a_3) from binary word counts; n >= 1
// (row 0 is the trivial single-entry row and is handled by callers).
std::array<uint64_t, 3> davis_webb_mod4(uint64_t n);

// Granville: true iff every odd-residue count of row n mod 8 is 0 or a power
// of 2.
bool granville_mod8_check(uint64_t n);

}  // namespace pascalforge
