#include "pascalforge/modmath.hpp"

#include <stdexcept>

namespace pascalforge {

uint64_t mul_mod(uint64_t a, uint64_t b, uint64_t m) {
  return static_cast<uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

uint64_t pow_mod(uint64_t base, uint64_t exp, uint64_t m) {
  if (m == 1) return 0;
  uint64_t r = 1;
  base %= m;
  while (exp) {
    if (exp & 1) r = mul_mod(r, base, m);
    base = mul_mod(base, base, m);
    exp >>= 1;
  }
  return r;
}

uint64_t inv_mod(uint64_t a, uint64_t m) {
  // extended Euclid on (a mod m, m)
  int64_t t = 0, new_t = 1;
  uint64_t r = m, new_r = a % m;
  while (new_r != 0) {
    uint64_t q = r / new_r;
    int64_t tmp_t = t - static_cast<int64_t>(q) * new_t;
    t = new_t;
    new_t = tmp_t;
    uint64_t tmp_r = r - q * new_r;
    r = new_r;
    new_r = tmp_r;
  }
  if (r != 1) throw std::domain_error("inv_mod: argument not invertible");
  return t < 0 ? static_cast<uint64_t>(t + static_cast<int64_t>(m)) : static_cast<uint64_t>(t);
}

bool is_prime(uint64_t n) {
  if (n < 2) return false;
  for (uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n % p == 0) return n == p;
  }
  uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    uint64_t x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 0; i + 1 < s; ++i) {
      x = mul_mod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

std::vector<PrimePower> factorize(uint64_t k) {
  if (k < 2) throw std::domain_error("factorize: k must be >= 2");
  std::vector<PrimePower> out;
  auto strip = [&](uint64_t p) {
    if (k % p != 0) return;
    PrimePower pp{p, 0, 1};
    while (k % p == 0) {
      k /= p;
      ++pp.exponent;
      pp.value *= p;
    }
    out.push_back(pp);
  };
  strip(2);
  strip(3);
  for (uint64_t p = 5; p * p <= k; p += 6) {
    strip(p);
    strip(p + 2);
  }
  if (k > 1) out.push_back({k, 1, k});
  return out;
}

uint64_t checked_pow(uint64_t base, uint32_t exp) {
  uint64_t r = 1;
  for (uint32_t i = 0; i < exp; ++i) {
    unsigned __int128 wide = static_cast<unsigned __int128>(r) * base;
    if (wide > ~0ull) throw std::overflow_error("checked_pow: result exceeds 64 bits");
    r = static_cast<uint64_t>(wide);
  }
  return r;
}

uint32_t floor_log(uint64_t base, uint64_t x) {
  if (base < 2 || x < 1) throw std::domain_error("floor_log: base >= 2 and x >= 1 required");
  uint32_t e = 0;
  while (x >= base) {
    x /= base;
    ++e;
  }
  return e;
}

}  // namespace pascalforge
