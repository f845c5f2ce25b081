#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace pascalforge {

// Exact fractional part of a rational: a reduced fraction in [0, 1).
// Invariants: gcd(num, den) = 1, 0 <= num < den, den >= 1. Construction goes
// through frac(), which applies the true floor (negative numerators included).
class Fraction {
 public:
  Fraction() : num_(0), den_(1) {}

  const mpz_class& num() const { return num_; }
  const mpz_class& den() const { return den_; }
  bool is_zero() const { return num_ == 0; }

  std::string str() const { return num_.get_str() + "/" + den_.get_str(); }

  friend bool operator==(const Fraction&, const Fraction&) = default;

  friend Fraction frac(const mpz_class& numerator, const mpz_class& denominator);

 private:
  Fraction(mpz_class n, mpz_class d) : num_(std::move(n)), den_(std::move(d)) {}

  mpz_class num_;
  mpz_class den_;
};

// Frac(numerator/denominator) = x - floor(x); denominator >= 1, else domain
// error.
Fraction frac(const mpz_class& numerator, const mpz_class& denominator);
Fraction frac(int64_t numerator, int64_t denominator);

}  // namespace pascalforge
