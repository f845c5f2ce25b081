#include "pascalforge/digits.hpp"

#include <stdexcept>

namespace pascalforge {

uint64_t BaseDigits::value() const {
  uint64_t v = 0;
  for (size_t i = digits.size(); i-- > 0;) v = v * base + digits[i];
  return v;
}

BaseDigits to_base(uint64_t n, uint64_t base) {
  if (base < 2) throw std::domain_error("to_base: base must be >= 2");
  BaseDigits out;
  out.base = base;
  while (n > 0) {
    out.digits.push_back(static_cast<uint32_t>(n % base));
    n /= base;
  }
  return out;
}

uint64_t count_word(uint64_t n, uint64_t base, std::span<const uint32_t> word) {
  for (uint32_t d : word) {
    if (d >= base) throw std::domain_error("count_word: word digit out of range");
  }
  if (word.empty()) throw std::domain_error("count_word: empty word");
  BaseDigits rep = to_base(n, base);
  if (rep.length() < word.size()) return 0;
  // rep is least-significant first; the word is written most-significant
  // first, so it matches at offset i when word[j] == digit(i + |w| - 1 - j).
  uint64_t count = 0;
  for (size_t start = 0; start + word.size() <= rep.length(); ++start) {
    bool match = true;
    for (size_t j = 0; j < word.size(); ++j) {
      if (rep.digits[start + word.size() - 1 - j] != word[j]) {
        match = false;
        break;
      }
    }
    if (match) ++count;
  }
  return count;
}

uint64_t count_word(uint64_t n, uint64_t base, std::string_view word) {
  std::vector<uint32_t> digits;
  digits.reserve(word.size());
  for (char c : word) {
    if (c < '0' || c > '9') throw std::domain_error("count_word: word must use characters '0'..'9'");
    digits.push_back(static_cast<uint32_t>(c - '0'));
  }
  return count_word(n, base, digits);
}

uint32_t valuation(uint64_t p, uint64_t n) {
  if (n == 0) throw std::domain_error("valuation: undefined for n = 0");
  if (p < 2) throw std::domain_error("valuation: p must be >= 2");
  uint32_t v = 0;
  while (n % p == 0) {
    n /= p;
    ++v;
  }
  return v;
}

int64_t mod_nonneg(int64_t a, int64_t b) {
  if (b < 1) throw std::domain_error("mod_nonneg: modulus must be >= 1");
  int64_t r = a % b;
  return r < 0 ? r + b : r;
}

}  // namespace pascalforge
