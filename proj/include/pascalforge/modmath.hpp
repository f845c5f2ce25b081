#pragma once

#include <cstdint>
#include <vector>

namespace pascalforge {

// a*b mod m without overflow; m >= 1.
uint64_t mul_mod(uint64_t a, uint64_t b, uint64_t m);

uint64_t pow_mod(uint64_t base, uint64_t exp, uint64_t m);

// Inverse of a modulo m; throws std::domain_error when gcd(a, m) != 1.
uint64_t inv_mod(uint64_t a, uint64_t m);

// Deterministic Miller-Rabin over the full uint64 range.
bool is_prime(uint64_t n);

struct PrimePower {
  uint64_t prime;
  uint32_t exponent;
  uint64_t value;  // prime^exponent
};

// Prime-power factorization with primes ascending; k >= 2.
std::vector<PrimePower> factorize(uint64_t k);

// base^exp, throwing std::overflow_error if the result exceeds uint64.
uint64_t checked_pow(uint64_t base, uint32_t exp);

// Largest e with base^e <= x; base >= 2, x >= 1.
uint32_t floor_log(uint64_t base, uint64_t x);

}  // namespace pascalforge
