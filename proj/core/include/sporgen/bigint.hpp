#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

namespace sporgen {

using BigInt = mpz_class;
using Rational = mpq_class;

/// Parses an optionally signed decimal integer. Throws ParseError.
BigInt parse_bigint(std::string_view text);

/// Parses "a", "-a" or "a/b"; the result is canonicalized. Throws ParseError.
Rational parse_rational(std::string_view text);

std::string to_string(const BigInt& value);
std::string to_string(const Rational& value);

/// Decimal rendering with `places` digits after the point, rounding half away
/// from zero: 2/3 -> "0.66667", -1/8 at 2 places -> "-0.13".
std::string format_decimal(const Rational& value, int places);

/// Narrows to uint64; throws LimitExceeded when the value does not fit.
std::uint64_t to_u64(const BigInt& value);

BigInt from_u64(std::uint64_t value);

}  // namespace sporgen
