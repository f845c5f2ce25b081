#include "pascalforge/census.hpp"

#include <gmpxx.h>

#include <bit>
#include <stdexcept>

#include "pascalforge/digits.hpp"
#include "pascalforge/row_scan.hpp"

namespace pascalforge {

namespace {

constexpr uint64_t kMaxCensusModulus = 1ull << 16;

uint64_t to_u64_checked(const mpz_class& v, const char* who) {
  if (v < 0 || !v.fits_ulong_p()) throw std::overflow_error(std::string(who) + ": count exceeds 64 bits");
  return v.get_ui();
}

}  // namespace

uint64_t RowResidueCensus::total() const {
  uint64_t t = 0;
  for (uint64_t c : counts) t += c;
  return t;
}

RowResidueCensus census_row(uint64_t n, uint64_t k) {
  if (k < 2) throw std::domain_error("census_row: modulus must be >= 2");
  if (k > kMaxCensusModulus) throw std::domain_error("census_row: modulus must be <= 65536");
  RowResidueCensus census;
  census.n = n;
  census.k = k;
  census.counts.assign(k, 0);
  for (RowScanner scan = row_residues(n, k); !scan.done(); scan.advance()) {
    ++census.counts[scan.value()];
  }
  return census;
}

uint64_t glaisher_count(uint64_t n) {
  return 1ull << std::popcount(n);
}

uint64_t fine_count(uint64_t n, uint64_t p) {
  uint64_t result = 1;
  for (uint32_t d : to_base(n, p).digits) result *= d + 1;
  return result;
}

std::pair<uint64_t, uint64_t> hexel_sachs_mod3(uint64_t n) {
  uint64_t ones = count_word(n, 3, "1");
  uint64_t twos = count_word(n, 3, "2");
  mpz_class pow3;
  mpz_ui_pow_ui(pow3.get_mpz_t(), 3, twos);
  mpq_class half_pow2;  // 2^(ones - 1), possibly 1/2
  if (ones >= 1) {
    mpz_class pow2;
    mpz_ui_pow_ui(pow2.get_mpz_t(), 2, ones - 1);
    half_pow2 = mpq_class(pow2);
  } else {
    half_pow2 = mpq_class(1, 2);
  }
  mpz_class plus = pow3 + 1;
  mpz_class minus = pow3 - 1;
  mpq_class a1 = half_pow2 * mpq_class(plus);
  mpq_class a2 = half_pow2 * mpq_class(minus);
  a1.canonicalize();
  a2.canonicalize();
  if (a1.get_den() != 1 || a2.get_den() != 1) {
    throw std::logic_error("hexel_sachs_mod3: non-integral count");
  }
  return {to_u64_checked(a1.get_num(), "hexel_sachs_mod3"),
          to_u64_checked(a2.get_num(), "hexel_sachs_mod3")};
}

std::array<uint64_t, 3> davis_webb_mod4(uint64_t n) {
  if (n < 1) throw std::domain_error("davis_webb_mod4: n must be >= 1");
  uint64_t ones = count_word(n, 2, "1");  // >= 1 for n >= 1
  uint64_t w11 = count_word(n, 2, "11");
  uint64_t w10 = count_word(n, 2, "10");
  uint64_t half = 1ull << (ones - 1);
  uint64_t a1 = w11 == 0 ? 1ull << ones : half;
  uint64_t a2 = half * w10;
  uint64_t a3 = w11 == 0 ? 0 : half;
  return {a1, a2, a3};
}

bool granville_mod8_check(uint64_t n) {
  RowResidueCensus census = census_row(n, 8);
  for (uint64_t r = 1; r < 8; r += 2) {
    uint64_t v = census.counts[r];
    if (v != 0 && !std::has_single_bit(v)) return false;
  }
  return true;
}

}  // namespace pascalforge
