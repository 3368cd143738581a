#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace qjac {

using Rational = mpq_class;
using Integer = mpz_class;

/// Canonical text form "num/den"; the denominator is always written.
std::string to_string(const Rational &x);

/// Accepts "a/b", "a" or "-a/b" with optional surrounding whitespace.
Rational parse_rational(std::string_view text);

Integer floor(const Rational &x);
Integer ceil(const Rational &x);

/// x - floor(x), in [0, 1).
Rational frac(const Rational &x);

std::int64_t lcm(std::int64_t a, std::int64_t b);

/// Throws if the value does not fit in 64 bits.
std::int64_t to_int64(const Integer &z);

Rational factorial(unsigned n);

/// p/q in lowest terms. mpq_class(p, q) does not reduce, and unreduced values
/// compare incorrectly.
Rational ratio(const Integer &p, const Integer &q);

} // namespace qjac
