#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace pascalforge {

// Positional digits of a nonnegative integer, least-significant first.
// Invariants: every digit lies in [0, base); a non-empty sequence ends in a
// nonzero top digit; zero is the empty sequence.
struct BaseDigits {
  uint64_t base = 2;
  std::vector<uint32_t> digits;

  size_t length() const { return digits.size(); }
  // Digit at position i; positions above the top digit read as 0.
  uint32_t digit(size_t i) const { return i < digits.size() ? digits[i] : 0; }
  uint64_t value() const;
};

// base >= 2, else domain error.
BaseDigits to_base(uint64_t n, uint64_t base);

// Number of (overlapping) occurrences of `word` in the most-significant-first
// digit string of n in base `base`. n = 0 has the empty digit string, so every
// count on it is zero. Word digits must lie in [0, base).
uint64_t count_word(uint64_t n, uint64_t base, std::span<const uint32_t> word);
// Convenience spelling with characters '0'..'9'.
uint64_t count_word(uint64_t n, uint64_t base, std::string_view word);

// Exponent of the largest power of p dividing n; n >= 1 (p assumed prime).
uint32_t valuation(uint64_t p, uint64_t n);

// Representative of a modulo b lying in [0, b); b >= 1.
int64_t mod_nonneg(int64_t a, int64_t b);

}  // namespace pascalforge
