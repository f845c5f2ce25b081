#pragma once

#include <gmpxx.h>

#include <cstdint>

namespace pascalforge {

// Exact C(n, m); 0 when m < 0 or m > n.
mpz_class binom_exact(uint64_t n, int64_t m);

// Number of borrows when subtracting m from n in base p; by Kummer's theorem
// this is the exponent of p in C(n, m). Requires m <= n (p assumed prime).
uint32_t kummer_valuation(uint64_t n, uint64_t m, uint64_t p);

// C(n, m) mod p as the product of digit binomials C(n_i, m_i) mod p.
// Requires m <= n.
uint64_t lucas_residue(uint64_t n, uint64_t m, uint64_t p);

// The p-free residue of C(n, m): the product of digit factorial ratios
// n_i! / (m_i! (n-m)_i!) in Z/pZ, so that C(n, m) equals
// (-p)^kummer_valuation times this, mod p. Requires m <= n.
uint64_t anton_unit(uint64_t n, uint64_t m, uint64_t p);

// C(n, m) mod p^alpha in O(log n) digit windows for a fixed prime power,
// using cached tables of factorials with their p parts removed and the
// generalized Wilson sign. Requires m <= n, alpha >= 1.
uint64_t binom_mod_pk(uint64_t n, uint64_t m, uint64_t p, uint32_t alpha);

}  // namespace pascalforge
