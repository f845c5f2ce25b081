#include "pascalforge/binomial.hpp"

#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

#include "pascalforge/modmath.hpp"

namespace pascalforge {

namespace {

constexpr uint64_t kMaxTableSize = 1ull << 22;

void require_range(uint64_t n, uint64_t m, const char* who) {
  if (m > n) throw std::domain_error(std::string(who) + ": m > n");
}

// x! with multiples of p skipped, reduced mod p^alpha, for all x < p^alpha.
// Entries are units mod p^alpha.
const std::vector<uint64_t>& p_removed_factorials(uint64_t p, uint32_t alpha, uint64_t pk) {
  thread_local std::map<std::pair<uint64_t, uint32_t>, std::vector<uint64_t>> cache;
  auto [it, inserted] = cache.try_emplace({p, alpha});
  if (inserted) {
    std::vector<uint64_t>& t = it->second;
    t.resize(pk);
    uint64_t acc = 1;
    t[0] = 1;
    for (uint64_t x = 1; x < pk; ++x) {
      if (x % p != 0) acc = mul_mod(acc, x, pk);
      t[x] = acc;
    }
  }
  return it->second;
}

}  // namespace

mpz_class binom_exact(uint64_t n, int64_t m) {
  if (m < 0 || static_cast<uint64_t>(m) > n) return 0;
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), n, static_cast<uint64_t>(m));
  return r;
}

uint32_t kummer_valuation(uint64_t n, uint64_t m, uint64_t p) {
  require_range(n, m, "kummer_valuation");
  if (p < 2) throw std::domain_error("kummer_valuation: p must be >= 2");
  uint32_t borrows = 0;
  uint32_t borrow = 0;
  while (m > 0 || borrow > 0) {
    uint64_t nd = n % p;
    uint64_t md = m % p;
    if (nd < md + borrow) {
      borrow = 1;
      ++borrows;
    } else {
      borrow = 0;
    }
    n /= p;
    m /= p;
  }
  return borrows;
}

uint64_t lucas_residue(uint64_t n, uint64_t m, uint64_t p) {
  require_range(n, m, "lucas_residue");
  if (p < 2) throw std::domain_error("lucas_residue: p must be >= 2");
  uint64_t result = 1;
  while (m > 0 || n > 0) {
    uint64_t nd = n % p;
    uint64_t md = m % p;
    if (md > nd) return 0;
    // C(nd, md) mod p via the falling product; every divisor < p is a unit
    uint64_t digit_binom = 1;
    for (uint64_t i = 1; i <= md; ++i) {
      digit_binom = mul_mod(digit_binom, nd - md + i, p);
      digit_binom = mul_mod(digit_binom, inv_mod(i, p), p);
    }
    result = mul_mod(result, digit_binom, p);
    n /= p;
    m /= p;
  }
  return result;
}

uint64_t anton_unit(uint64_t n, uint64_t m, uint64_t p) {
  require_range(n, m, "anton_unit");
  if (p < 2) throw std::domain_error("anton_unit: p must be >= 2");
  auto factorial_mod = [p](uint64_t x) {
    uint64_t f = 1;
    for (uint64_t i = 2; i <= x; ++i) f = mul_mod(f, i, p);
    return f;
  };
  uint64_t r = n - m;
  uint64_t result = 1;
  while (n > 0) {
    result = mul_mod(result, factorial_mod(n % p), p);
    result = mul_mod(result, inv_mod(factorial_mod(m % p), p), p);
    result = mul_mod(result, inv_mod(factorial_mod(r % p), p), p);
    n /= p;
    m /= p;
    r /= p;
  }
  return result;
}

uint64_t binom_mod_pk(uint64_t n, uint64_t m, uint64_t p, uint32_t alpha) {
  require_range(n, m, "binom_mod_pk");
  if (p < 2) throw std::domain_error("binom_mod_pk: p must be >= 2");
  if (alpha < 1) throw std::domain_error("binom_mod_pk: alpha must be >= 1");
  uint64_t pk = checked_pow(p, alpha);
  if (pk > kMaxTableSize) throw std::domain_error("binom_mod_pk: p^alpha too large");

  // borrow flags of n - m in base p, lowest digit first
  uint64_t r = n - m;
  std::vector<uint8_t> borrow_at;
  {
    uint64_t nn = n, mm = m;
    uint32_t borrow = 0;
    while (nn > 0) {
      uint64_t nd = nn % p;
      uint64_t md = mm % p;
      borrow = nd < md + borrow ? 1 : 0;
      borrow_at.push_back(static_cast<uint8_t>(borrow));
      nn /= p;
      mm /= p;
    }
  }
  uint32_t nu = 0;
  for (uint8_t b : borrow_at) nu += b;
  if (nu >= alpha) return 0;

  const std::vector<uint64_t>& table = p_removed_factorials(p, alpha, pk);

  // product over alpha-digit windows of n, m and n-m
  uint64_t result = 1;
  uint64_t nn = n, mm = m, rr = r;
  while (nn > 0) {
    result = mul_mod(result, table[nn % pk], pk);
    result = mul_mod(result, inv_mod(table[mm % pk], pk), pk);
    result = mul_mod(result, inv_mod(table[rr % pk], pk), pk);
    nn /= p;
    mm /= p;
    rr /= p;
  }

  // generalized Wilson sign: (p^alpha!)_p is -1 mod p^alpha except for
  // p = 2, alpha >= 3 where it is +1; the exponent counts borrows at digit
  // index >= alpha - 1
  if (!(p == 2 && alpha >= 3)) {
    uint32_t high_borrows = 0;
    for (size_t i = alpha - 1; i < borrow_at.size(); ++i) high_borrows += borrow_at[i];
    if (high_borrows & 1) result = pk - result;
  }

  for (uint32_t i = 0; i < nu; ++i) result = mul_mod(result, p, pk);
  return result;
}

}  // namespace pascalforge
