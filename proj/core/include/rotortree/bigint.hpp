#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace rotortree {

using BigInt = mpz_class;

inline BigInt pow_ui(unsigned long base, unsigned long exp) {
  BigInt r;
  mpz_ui_pow_ui(r.get_mpz_t(), base, exp);
  return r;
}

inline BigInt binomial(unsigned long n, unsigned long k) {
  BigInt r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

inline std::string to_decimal_string(const BigInt& v) { return v.get_str(10); }

/// Parses a base-10 integer; throws Error(ParseError) on malformed input.
BigInt parse_bigint(const std::string& text);

}  // namespace rotortree
