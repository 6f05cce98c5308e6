#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <cstdint>
#include <string>
#include <string_view>

namespace ncm {

using BigInt = boost::multiprecision::mpz_int;
// GMP keeps mpq values canonical: denominator > 0 and gcd(|num|, den) = 1.
using Rational = boost::multiprecision::mpq_rational;

Rational make_rational(std::int64_t num, std::int64_t den = 1);
Rational make_rational(const BigInt& num, const BigInt& den);

// Accepts "p/q" or "p". Throws Error(bad_input) on malformed text or q = 0.
Rational parse_rational(std::string_view text);

// Always "p/q", including q = 1.
std::string to_string(const Rational& r);

double to_double(const Rational& r);

// Sign of (b - a) x (c - a) for points given coordinate-wise. Uses 128-bit
// integer arithmetic when all coordinates are small integers.
int cross_sign(const Rational& ax, const Rational& ay, const Rational& bx, const Rational& by,
               const Rational& cx, const Rational& cy);

// floor(log2(v)) + 1 for v > 0, 0 for v = 0.
std::size_t bit_length(const BigInt& v);

BigInt binomial(unsigned n, unsigned k);

}  // namespace ncm
