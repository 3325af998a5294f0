#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <vector>

namespace ntrack {

using BigInt = mpz_class;

// log2(|x| + 1) with the mantissa of |x| + 1 truncated to 53 bits.
double log2p1(const BigInt& x);

// Binary log of a positive integer, same precision policy as log2p1.
double log2_of(const BigInt& x);

std::string to_string(const BigInt& x);

// Parses an optionally signed decimal integer; throws ParseError otherwise.
BigInt parse_bigint(std::string_view text);

inline BigInt big_abs(const BigInt& x) { return x < 0 ? BigInt(-x) : x; }
inline BigInt big_min(const BigInt& a, const BigInt& b) { return a < b ? a : b; }
inline BigInt big_max(const BigInt& a, const BigInt& b) { return a < b ? b : a; }

using BigVec = std::vector<BigInt>;

}  // namespace ntrack
