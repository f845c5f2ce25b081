#include "pascalforge/conjectures.hpp"

#include <gmpxx.h>

#include <bit>
#include <chrono>
#include <stdexcept>

#include "pascalforge/binomial.hpp"
#include "pascalforge/census.hpp"
#include "pascalforge/digits.hpp"
#include "pascalforge/modmath.hpp"

namespace pascalforge {

namespace {

void require_odd_prime(uint64_t p, const char* who) {
  if (p == 2 || !is_prime(p)) throw std::domain_error(std::string(who) + ": p must be an odd prime");
}

// base-p digit of n at position 1, as a signed value for (n_1 - 1) terms
int64_t digit_one(uint64_t n, uint64_t p) { return static_cast<int64_t>((n / p) % p); }

uint64_t shift_sum_unchecked(uint64_t p, uint64_t j) {
  uint64_t two_p = 2 * p;
  BaseDigits bits = to_base(two_p, 2);
  unsigned __int128 sum = 0;
  for (size_t i = 0; i < bits.length(); ++i) {
    if (bits.digits[i] == 0) continue;
    uint64_t window = two_p & ((2ull << i) - 1);  // 2p mod 2^(i+1)
    int64_t exponent = static_cast<int64_t>(count_word(window, 2, "0")) - (i == 1 ? 1 : 0);
    if (exponent < 0) throw std::logic_error("conj2_shift_sum: negative truncation exponent");
    uint64_t truncated = exponent >= 64 ? 0 : j >> exponent;
    sum += static_cast<unsigned __int128>(truncated) << i;
  }
  if (sum > ~0ull) throw std::overflow_error("conj2_shift_sum: sum exceeds 64 bits");
  return static_cast<uint64_t>(sum);
}

// 2 C(n, 2p)/n minus scale*(n_1 - 1)/p when p | n; integral whenever the
// two fractional parts agree, which both formulations assert.
mpz_class parity_difference(uint64_t n, uint64_t p, uint64_t scale) {
  mpz_class two_binom = 2 * binom_exact(n, static_cast<int64_t>(2 * p));
  mpq_class diff(two_binom, mpz_class(n));
  diff.canonicalize();
  if (n % p == 0) {
    mpq_class correction(mpz_class(scale) * (digit_one(n, p) - 1), mpz_class(p));
    correction.canonicalize();
    diff -= correction;
  }
  if (diff.get_den() != 1) {
    throw std::logic_error("parity_difference: difference is not an integer");
  }
  return diff.get_num();
}

}  // namespace

void AuditReport::merge(const AuditReport& later) {
  checked += later.checked;
  violations.insert(violations.end(), later.violations.begin(), later.violations.end());
  value_set.insert(later.value_set.begin(), later.value_set.end());
  elapsed_seconds += later.elapsed_seconds;
}

void conj1_fold_row(uint64_t n, AuditReport& report) {
  RowResidueCensus census = census_row(n, 16);
  for (uint64_t r = 1; r < 16; r += 2) {
    uint64_t v = census.counts[r];
    report.value_set.insert(v);
    for (auto [q, e] : conj1_exponent_table) {
      if (v % q == 0 && v % (1ull << e) != 0) {
        report.violations.push_back({n, r, "divisibility",
                                     "count divisible by " + std::to_string(q) +
                                         " is divisible by 2^" + std::to_string(e),
                                     std::to_string(v)});
      }
    }
    if (v > 0) {
      uint64_t rest = v;
      for (uint64_t q : conj1_allowed_primes) {
        while (rest % q == 0) rest /= q;
      }
      if (rest > 1) {
        report.violations.push_back({n, r, "foreign_prime",
                                     "prime factors within {2 3 5 7 11 13 17 31}",
                                     std::to_string(v) + " has factor " + std::to_string(rest)});
      }
    }
    if (n >= 1 && v % 2 == 1) {
      report.violations.push_back({n, r, "odd_count", "even count", std::to_string(v)});
    }
  }
}

std::vector<Violation> conj1_audit_row(uint64_t n) {
  AuditReport scratch;
  conj1_fold_row(n, scratch);
  return std::move(scratch.violations);
}

AuditReport conj1_scan(uint64_t from, uint64_t to) {
  auto start = std::chrono::steady_clock::now();
  AuditReport report;
  report.from = from;
  report.to = to;
  for (uint64_t n = from; n <= to; ++n) {
    conj1_fold_row(n, report);
    ++report.checked;
    if (n == to) break;  // avoid wrap when to is the maximum value
  }
  report.elapsed_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

uint64_t lu_tsai_period(uint64_t k, uint64_t m) {
  if (k < 1 || m < 1) throw std::domain_error("lu_tsai_period: k >= 1 and m >= 1 required");
  uint64_t period = m;
  if (m > 1) {
    for (const PrimePower& pp : factorize(m)) {
      uint64_t factor = checked_pow(pp.prime, floor_log(pp.prime, k));
      unsigned __int128 wide = static_cast<unsigned __int128>(period) * factor;
      if (wide > ~0ull) throw std::overflow_error("lu_tsai_period: period exceeds 64 bits");
      period = static_cast<uint64_t>(wide);
    }
  }
  return period;
}

uint64_t frac_period(uint64_t m) {
  if (m < 1) throw std::domain_error("frac_period: m must be >= 1");
  if (m == 1) return 1;
  return lu_tsai_period(m - 1, m);
}

Fraction frac_binom(uint64_t n, uint64_t m) {
  if (n == 0) throw std::domain_error("frac_binom: n must be >= 1");
  if (m > static_cast<uint64_t>(INT64_MAX) || m > n) return Fraction{};
  return frac(binom_exact(n, static_cast<int64_t>(m)), mpz_class(n));
}

Fraction prop_frac_p(uint64_t n, uint64_t p) {
  if (n == 0) throw std::domain_error("prop_frac_p: n must be >= 1");
  if (n % p != 0) return Fraction{};
  return frac(1, static_cast<int64_t>(p));
}

Fraction prop_frac2_2p(uint64_t n, uint64_t p) {
  if (n == 0) throw std::domain_error("prop_frac2_2p: n must be >= 1");
  if (n % p != 0) return Fraction{};
  return frac(digit_one(n, p) - 1, static_cast<int64_t>(p));
}

uint64_t conj2_shift_sum(uint64_t p, uint64_t j) {
  require_odd_prime(p, "conj2_shift_sum");
  return shift_sum_unchecked(p, j);
}

ExceptionalClassSet conj2_exceptional_set(uint64_t p) {
  require_odd_prime(p, "conj2_exceptional_set");
  uint64_t two_p = 2 * p;
  ExceptionalClassSet set;
  set.p = p;
  set.s = static_cast<uint32_t>(std::bit_width(two_p));
  set.modulus = 1ull << set.s;
  uint64_t zero_digits = count_word(two_p, 2, "0");
  for (uint64_t j = 0; j < (1ull << zero_digits); ++j) {
    uint64_t residue = (two_p + shift_sum_unchecked(p, j)) % set.modulus;
    set.j_to_residue.emplace_back(j, residue);
    set.residues.insert(residue);
  }
  return set;
}

Fraction conj2_predicted_frac(uint64_t n, uint64_t p) {
  return conj2_predicted_frac(n, p, conj2_exceptional_set(p));
}

Fraction conj2_predicted_frac(uint64_t n, uint64_t p, const ExceptionalClassSet& exceptional) {
  if (n == 0) throw std::domain_error("conj2_predicted_frac: n must be >= 1");
  // common denominator 2p: (p+1)(n_1 - 1)[p | n]/(2p) + p[n exceptional]/(2p)
  mpz_class num = 0;
  if (n % p == 0) num += mpz_class(p + 1) * (digit_one(n, p) - 1);
  if (exceptional.contains(n)) num += p;
  return frac(num, mpz_class(2 * p));
}

AuditReport conj2_verify(uint64_t p) {
  require_odd_prime(p, "conj2_verify");
  auto start = std::chrono::steady_clock::now();
  ExceptionalClassSet exceptional = conj2_exceptional_set(p);
  uint64_t period = frac_period(2 * p);
  AuditReport report;
  report.prime = p;
  report.from = 1;
  report.to = period;
  for (uint64_t n = 1; n <= period; ++n) {
    ++report.checked;
    Fraction predicted = conj2_predicted_frac(n, p, exceptional);
    Fraction exact = frac_binom(n, 2 * p);
    if (!(predicted == exact)) {
      report.violations.push_back({n, 2 * p, "frac_mismatch", predicted.str(), exact.str()});
    }
    bool odd = parity_difference(n, p, p + 1) % 2 != 0;
    if (odd != exceptional.contains(n)) {
      report.violations.push_back({n, 2 * p, "parity_mismatch",
                                   exceptional.contains(n) ? "odd difference" : "even difference",
                                   odd ? "odd" : "even"});
    }
  }
  report.elapsed_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

std::set<uint64_t> conj2_first_form_exceptions(uint64_t p) {
  require_odd_prime(p, "conj2_first_form_exceptions");
  uint64_t period = frac_period(2 * p);
  std::set<uint64_t> classes;
  for (uint64_t n = 1; n <= period; ++n) {
    if (parity_difference(n, p, 1) % 2 != 0) classes.insert(n % period);
  }
  return classes;
}

}  // namespace pascalforge
