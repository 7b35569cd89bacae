#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <string_view>

namespace ghx {

// All distances in this project are exact rationals; no floating point
// anywhere in the computational core.
using Rational = boost::multiprecision::cpp_rational;
using Integer = boost::multiprecision::cpp_int;

// Accepts "p", "p/q" and exact decimals like "-2.75" or "0.5".
// Whitespace is not trimmed; the whole string must be consumed.
Rational parse_rational(std::string_view text);

// Lowest-terms rendering: "p" when the denominator is 1, else "p/q".
std::string format_rational(const Rational& value);

}  // namespace ghx
