#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace wgb {

// Exact arithmetic substrate. mpq_class already guarantees canonical form
// (lowest terms, positive denominator) after every operation.
using Rational = mpq_class;
using Integer = mpz_class;

Integer int_pow(const Integer& b, unsigned long e);

// x^n with x^0 = 1 for every x, including 0.
Rational rat_pow(const Rational& x, unsigned long n);

// Largest integer <= x. Exact for negative x (floor, not truncation).
Integer floor_div(const Rational& x);
Integer ceil_div(const Rational& x);

// Parses "p/q", "-3", "0.125", "1e-3" style inputs into an exact rational.
// Decimal strings are read literally (finite decimal = exact rational).
Rational rat_from_string(const std::string& s);

// Exact dyadic rational equal to the given double. Rejects NaN/Inf.
Rational rat_from_double(double x);

std::string to_fraction_string(const Rational& x);

// Fixed-point rendering with `places` digits after the point.
// to_decimal_string rounds to nearest (ties away from zero);
// to_decimal_string_ceil rounds toward +infinity, so "0" stays "0.000...".
std::string to_decimal_string(const Rational& x, int places);
std::string to_decimal_string_ceil(const Rational& x, int places);

}  // namespace wgb
