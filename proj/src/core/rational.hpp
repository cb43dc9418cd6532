#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <string>
#include <string_view>

namespace chronosynth {

// Exact time. Every timestamp, duration and scale in the library is one of
// these; there is no floating point on any semantic path.
using Rational = boost::multiprecision::mpq_rational;
using Integer = boost::multiprecision::mpz_int;

// Accepts "p", "p/q", "-p/q" and finite decimals such as "0.25".
Rational parse_rational(std::string_view text);
std::string to_string(const Rational& r);

Integer floor_div(const Rational& num, const Rational& den);
// r mod m in [0, m) for m > 0.
Rational rmod(const Rational& r, const Rational& m);
// Least positive common multiple of two positive rationals.
Rational rlcm(const Rational& a, const Rational& b);
bool is_integer(const Rational& r);
// 2^-i.
Rational pow2_neg(unsigned i);

} // namespace chronosynth
