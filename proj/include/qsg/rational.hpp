#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace qsg {

/// Arbitrary-precision integer.
using Integer = mpz_class;

/// Arbitrary-precision rational. Every value produced by this library is
/// canonical: lowest terms, positive denominator.
using Rational = mpq_class;

using ModVector = std::vector<std::int64_t>;

Rational make_rational(const Integer& num, const Integer& den);

bool is_integer(const Rational& r);

/// Throws std::domain_error when `r` is not integral.
Integer to_integer(const Rational& r);

/// Throws std::overflow_error when `v` does not fit.
std::int64_t to_int64(const Integer& v);

/// Least nonnegative residue of `a` modulo `m` (m > 0).
Integer mod_floor(const Integer& a, const Integer& m);
std::int64_t mod_floor(std::int64_t a, std::int64_t m);

Integer gcd(const Integer& a, const Integer& b);
Integer pow(const Integer& base, unsigned long exponent);

std::string to_string(const Integer& v);
std::string to_string(const Rational& v);

}  // namespace qsg
