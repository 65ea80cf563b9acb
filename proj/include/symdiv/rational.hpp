#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace symdiv {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Accepts "p", "-p" or "p/q"; throws std::invalid_argument on anything else
// or on a zero denominator.
Rational parse_rational(const std::string& text);

// "p/q" in lowest terms, or "p" when the denominator is 1.
std::string to_string(const Rational& r);

}  // namespace symdiv
