#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace hdensity {

using BigInt = mpz_class;
using Rational = mpq_class;

// Product of all factors via a balanced product tree. Empty input gives 1.
BigInt product(std::span<const BigInt> factors);

BigInt pow(const BigInt& base, std::uint64_t exponent);
Rational pow(const Rational& base, std::uint64_t exponent);

// num/den in lowest terms. If every prime factor of `den` is known to be
// `prime`, pass it to avoid a full gcd on very large operands.
Rational make_rational(BigInt num, BigInt den, unsigned long prime = 0);

// Significant-digit decimal rendering, rounded half up. Values with a decimal
// exponent outside [-5, digits] use scientific notation.
std::string to_decimal(const Rational& value, int digits = 12);

// Parses "a", "a/b" or a finite decimal literal such as "0.25".
Rational parse_rational(const std::string& text);

// Exact rational value of a finite double.
Rational from_double(double value);

inline std::string to_string(const BigInt& v) { return v.get_str(10); }

}  // namespace hdensity
