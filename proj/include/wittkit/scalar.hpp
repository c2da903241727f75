#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <string_view>

namespace wittkit {

// Exact rationals; gmpxx keeps results in lowest terms with a positive denominator.
using Scalar = mpq_class;
using Integer = mpz_class;

// Exponents of x and grades of integer-graded algebras.
using Exponent = long;

Scalar make_scalar(long num, long den = 1);

// Accepts "p" or "p/q" with optional sign; returns nullopt on malformed input or q == 0.
std::optional<Scalar> parse_scalar(std::string_view text);

std::string to_string(const Scalar& s);

bool is_integer(const Scalar& s);

// Requires is_integer(s) and that the value fits in a long.
long to_long(const Scalar& s);

Scalar floor_scalar(const Scalar& s);
Scalar ceil_scalar(const Scalar& s);

Integer binomial(unsigned long n, unsigned long k);

}  // namespace wittkit
