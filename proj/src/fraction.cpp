#include "pascalforge/fraction.hpp"

#include <stdexcept>

namespace pascalforge {

Fraction frac(const mpz_class& numerator, const mpz_class& denominator) {
  if (denominator < 1) throw std::domain_error("frac: denominator must be >= 1");
  mpz_class r;
  // floor-division remainder: r in [0, den) regardless of the numerator sign
  mpz_fdiv_r(r.get_mpz_t(), numerator.get_mpz_t(), denominator.get_mpz_t());
  mpz_class g = gcd(r, denominator);
  return Fraction(r / g, denominator / g);
}

Fraction frac(int64_t numerator, int64_t denominator) {
  return frac(mpz_class(numerator), mpz_class(denominator));
}

}  // namespace pascalforge
