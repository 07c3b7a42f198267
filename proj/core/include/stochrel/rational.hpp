#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

namespace stochrel {

using Rational = mpq_class;
using BigInt = mpz_class;

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parses "p/q", "p" or "-p/q". Decimal or exponent notation is rejected
/// since exactness has to survive serialization.
Rational parse_rational(std::string_view text);

/// Canonical "p/q" form; integers are written without denominator.
std::string to_string(const Rational& value);

Rational rational(std::int64_t num, std::int64_t den = 1);

/// Least common multiple of the denominators in `values` (1 for an empty span).
BigInt common_denominator(std::span<const Rational> values);

/// Value of `value * scale` when it is an integer, otherwise throws.
BigInt scale_to_integer(const Rational& value, const BigInt& scale);

std::optional<std::int64_t> to_int64(const BigInt& value);

Rational sum(std::span<const Rational> values);

}  // namespace stochrel
