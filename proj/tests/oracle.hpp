#pragma once

// Test-only oracles. Everything here goes through exact big-integer
// arithmetic and stays independent of the digit-based implementations it
// checks.

#include <gmpxx.h>

#include <cstdint>
#include <vector>

namespace testsupport {

// C(n, m) for m = 0..n via the exact multiply/divide recurrence.
class OracleRow {
 public:
  explicit OracleRow(uint64_t n) : n_(n) {}

  bool done() const { return m_ > n_; }
  uint64_t m() const { return m_; }
  const mpz_class& value() const { return value_; }

  void advance() {
    if (m_ >= n_) {
      ++m_;
      return;
    }
    value_ *= static_cast<unsigned long>(n_ - m_);
    ++m_;
    mpz_divexact_ui(value_.get_mpz_t(), value_.get_mpz_t(), static_cast<unsigned long>(m_));
  }

 private:
  uint64_t n_;
  uint64_t m_ = 0;
  mpz_class value_{1};
};

inline uint64_t oracle_mod(const mpz_class& v, uint64_t k) {
  return mpz_fdiv_ui(v.get_mpz_t(), static_cast<unsigned long>(k));
}

inline std::vector<uint64_t> oracle_census(uint64_t n, uint64_t k) {
  std::vector<uint64_t> counts(k, 0);
  for (OracleRow row(n); !row.done(); row.advance()) {
    ++counts[oracle_mod(row.value(), k)];
  }
  return counts;
}

// Exponent of p in v, via GMP's own factor removal.
inline uint64_t oracle_valuation(uint64_t p, const mpz_class& v) {
  mpz_class reduced;
  mpz_class prime(static_cast<unsigned long>(p));
  return mpz_remove(reduced.get_mpz_t(), v.get_mpz_t(), prime.get_mpz_t());
}

// Smallest T <= max_period with window[i + T] == window[i] wherever both
// sides exist; 0 when none qualifies. The window should cover several copies
// of any candidate period.
template <class T>
uint64_t minimal_window_period(const std::vector<T>& window, uint64_t max_period) {
  for (uint64_t t = 1; t <= max_period; ++t) {
    if (window.size() <= t) return 0;
    bool ok = true;
    for (size_t i = 0; i + t < window.size(); ++i) {
      if (!(window[i] == window[i + t])) {
        ok = false;
        break;
      }
    }
    if (ok) return t;
  }
  return 0;
}

}  // namespace testsupport
