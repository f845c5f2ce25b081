#pragma once

#include <array>
#include <cstdint>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "pascalforge/fraction.hpp"

namespace pascalforge {

struct Violation {
  uint64_t n = 0;
  uint64_t index = 0;  // residue class r for census audits, column m otherwise
  std::string kind;
  std::string expected;
  std::string observed;

  friend bool operator==(const Violation&, const Violation&) = default;
};

// Outcome of an audit over a range of rows or one full period of a prime.
// Violations are empty iff the audited statement held everywhere in scope.
struct AuditReport {
  uint64_t from = 0;
  uint64_t to = 0;
  uint64_t prime = 0;  // nonzero for per-prime audits
  uint64_t checked = 0;
  std::vector<Violation> violations;
  std::set<uint64_t> value_set;   // census scans: every odd-class count seen
  double elapsed_seconds = 0.0;   // diagnostics only, never serialized

  bool clean() const { return violations.empty(); }
  // Fold in the report for the rows immediately after this one.
  void merge(const AuditReport& later);
};

// If q divides an odd-class count mod 16, then so does 2^e.
inline constexpr std::array<std::pair<uint64_t, uint32_t>, 7> conj1_exponent_table{
    {{3, 1}, {5, 2}, {7, 3}, {11, 5}, {13, 6}, {17, 4}, {31, 5}}};

// The only primes that divide any odd-class count mod 16 (2 plus the seven
// above); anything else is reported as a foreign prime.
inline constexpr std::array<uint64_t, 8> conj1_allowed_primes{2, 3, 5, 7, 11, 13, 17, 31};

// Audits one row's mod-16 census: the seven divisibility implications, the
// foreign-prime condition, and (for n >= 1) evenness of odd-class counts.
std::vector<Violation> conj1_audit_row(uint64_t n);

// Audit a row and accumulate its odd-class counts into report.value_set.
void conj1_fold_row(uint64_t n, AuditReport& report);

// Sequential scan of rows [from, to].
AuditReport conj1_scan(uint64_t from, uint64_t to);

// Minimal period of n -> C(n, k) mod m: m times the product over p | m of the
// largest power of p not exceeding k.
uint64_t lu_tsai_period(uint64_t k, uint64_t m);

// Minimal period of n -> Frac(C(n, m)/n); equals lu_tsai_period(m-1, m) for
// m >= 2, and 1 for the constant m = 1 sequence.
uint64_t frac_period(uint64_t m);

// Frac(C(n, m)/n) via exact arithmetic; n >= 1. C(n, m) mod n is n times this.
Fraction frac_binom(uint64_t n, uint64_t m);

// Frac(C(n, p)/n) = (1/p) iff p | n, else 0.
Fraction prop_frac_p(uint64_t n, uint64_t p);

// Frac(2 C(n, 2p)/n) = Frac((n_1 - 1)/p) iff p | n, else 0, where n_1 is the
// base-p digit of n at position 1. Holds for p = 2 as well.
Fraction prop_frac2_2p(uint64_t n, uint64_t p);

// Residue classes of n modulo 2^s (s = floor(log2(2p)) + 1) on which the
// predicted Frac(C(n, 2p)/n) carries an extra 1/2. Enumerated from the
// truncated-shift sum over 0 <= j < 2^(zeros in binary 2p).
struct ExceptionalClassSet {
  uint64_t p = 3;
  uint32_t s = 3;
  uint64_t modulus = 8;  // 2^s
  std::set<uint64_t> residues;
  std::vector<std::pair<uint64_t, uint64_t>> j_to_residue;  // kept for diagnostics

  bool contains(uint64_t n) const { return residues.count(n % modulus) > 0; }
};

// The sum over binary digits m_i of 2p of floor(j / 2^e_i) * m_i * 2^i, where
// e_i counts the zeros of 2p mod 2^(i+1) in binary, less one at i = 1. This is
// binary long multiplication of 2p by j with each shifted copy of j truncated
// by a digit budget. p odd prime.
uint64_t conj2_shift_sum(uint64_t p, uint64_t j);

// p odd prime, else domain error.
ExceptionalClassSet conj2_exceptional_set(uint64_t p);

// Frac((p+1)(n_1 - 1)/(2p) * [p | n] + 1/2 * [n exceptional]); n >= 1.
Fraction conj2_predicted_frac(uint64_t n, uint64_t p);
Fraction conj2_predicted_frac(uint64_t n, uint64_t p, const ExceptionalClassSet& exceptional);

// Checks every n in one full period of Frac(C(n, 2p)/n) against the exact
// value, and checks that 2 C(n, 2p)/n - (p+1)(n_1 - 1)/p * [p | n] is odd
// exactly on the exceptional classes.
AuditReport conj2_verify(uint64_t p);

// Residues mod frac_period(2p) of the n where the first-formulation
// difference 2 C(n, 2p)/n - (n_1 - 1)/p * [p | n] is odd.
std::set<uint64_t> conj2_first_form_exceptions(uint64_t p);

}  // namespace pascalforge
