#pragma once

#include <cstdint>
#include <vector>

namespace pascalforge {

// One prime-power coordinate of C(n, m): the residue mod prime^exponent_cap
// is unit * prime^valuation, or 0 once valuation reaches the cap.
//
// The stored valuation is min(true valuation, exponent_cap). While it sits at
// the cap it may understate the true valuation; the unit always tracks the
// exact p-free part of C(n, m) mod p^cap, so residues stay exact. A step that
// would lower a capped valuation recomputes the true value from borrow counts
// (kummer_valuation) before re-clamping.
struct FactoredResidue {
  uint64_t prime = 2;
  uint32_t exponent_cap = 1;
  uint64_t modulus = 2;  // prime^exponent_cap
  uint32_t valuation = 0;
  uint64_t unit = 1;

  uint64_t residue() const;
};

// Streams C(n, m) mod k for m = 0..n without materializing the row. Each
// advance multiplies by (n - m) and divides by (m + 1) in factored form per
// prime power of k, then recombines by CRT (skipped when k is a single prime
// power, which keeps the mod-16 path in plain machine words).
class RowScanner {
 public:
  RowScanner(uint64_t n, uint64_t k);  // k >= 2, else domain error

  uint64_t row() const { return n_; }
  uint64_t modulus() const { return k_; }
  uint64_t column() const { return m_; }
  bool done() const { return m_ > n_; }

  // C(n, column()) mod k.
  uint64_t value() const { return value_; }
  void advance();

  const std::vector<FactoredResidue>& factors() const { return factors_; }

 private:
  void recombine();

  uint64_t n_;
  uint64_t k_;
  uint64_t m_ = 0;
  uint64_t value_ = 1;
  std::vector<FactoredResidue> factors_;
  std::vector<uint64_t> crt_coeff_;  // empty when k is a single prime power
};

inline RowScanner row_residues(uint64_t n, uint64_t k) { return RowScanner(n, k); }

}  // namespace pascalforge
