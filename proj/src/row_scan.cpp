#include "pascalforge/row_scan.hpp"

#include <bit>
#include <stdexcept>

#include "pascalforge/binomial.hpp"
#include "pascalforge/modmath.hpp"

namespace pascalforge {

namespace {

// Inverse of odd x modulo 2^64 by Newton steps; mask down to the target power.
uint64_t inv_pow2(uint64_t x) {
  uint64_t inv = x;  // correct mod 2^3
  for (int i = 0; i < 5; ++i) inv *= 2 - x * inv;
  return inv;
}

}  // namespace

uint64_t FactoredResidue::residue() const {
  if (valuation >= exponent_cap) return 0;
  uint64_t r = unit;
  for (uint32_t i = 0; i < valuation; ++i) r = mul_mod(r, prime, modulus);
  return r;
}

RowScanner::RowScanner(uint64_t n, uint64_t k) : n_(n), k_(k) {
  if (k < 2) throw std::domain_error("row_residues: modulus must be >= 2");
  for (const PrimePower& pp : factorize(k)) {
    FactoredResidue f;
    f.prime = pp.prime;
    f.exponent_cap = pp.exponent;
    f.modulus = pp.value;
    f.valuation = 0;
    f.unit = 1;
    factors_.push_back(f);
  }
  if (factors_.size() > 1) {
    for (const FactoredResidue& f : factors_) {
      uint64_t rest = k_ / f.modulus;
      crt_coeff_.push_back(mul_mod(rest % k_, inv_mod(rest % f.modulus, f.modulus), k_));
    }
  }
  recombine();
}

void RowScanner::advance() {
  uint64_t mul = n_ - m_;  // done() guards m_ <= n_; the final advance just moves past the row
  uint64_t div = m_ + 1;
  ++m_;
  if (m_ > n_) return;
  for (FactoredResidue& f : factors_) {
    uint32_t e_mul, e_div;
    uint64_t u_mul, u_div;
    if (f.prime == 2) {
      e_mul = static_cast<uint32_t>(std::countr_zero(mul));
      e_div = static_cast<uint32_t>(std::countr_zero(div));
      uint64_t mask = f.modulus - 1;
      u_mul = (mul >> e_mul) & mask;
      u_div = (div >> e_div) & mask;
      f.unit = (f.unit * u_mul) & mask;
      f.unit = (f.unit * (inv_pow2(u_div | 1) & mask)) & mask;
    } else {
      uint64_t t = mul;
      e_mul = 0;
      while (t % f.prime == 0) {
        t /= f.prime;
        ++e_mul;
      }
      u_mul = t % f.modulus;
      t = div;
      e_div = 0;
      while (t % f.prime == 0) {
        t /= f.prime;
        ++e_div;
      }
      u_div = t % f.modulus;
      f.unit = mul_mod(f.unit, u_mul, f.modulus);
      f.unit = mul_mod(f.unit, inv_mod(u_div, f.modulus), f.modulus);
    }
    if (f.valuation < f.exponent_cap) {
      // exact below the cap: the incremental delta is the true delta
      uint32_t v = f.valuation + e_mul;
      v -= e_div;  // true valuations never go negative
      f.valuation = v > f.exponent_cap ? f.exponent_cap : v;
    } else if (e_div > e_mul) {
      // capped value may understate; a net downward step needs the truth
      uint32_t v = kummer_valuation(n_, m_, f.prime);
      f.valuation = v > f.exponent_cap ? f.exponent_cap : v;
    }
  }
  recombine();
}

void RowScanner::recombine() {
  if (factors_.size() == 1) {
    value_ = factors_[0].residue();
    return;
  }
  uint64_t acc = 0;
  for (size_t i = 0; i < factors_.size(); ++i) {
    acc = (acc + mul_mod(factors_[i].residue(), crt_coeff_[i], k_)) % k_;
  }
  value_ = acc;
}

}  // namespace pascalforge
