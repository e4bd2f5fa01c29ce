#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <string>

namespace gmwin {

using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// "p/q" in lowest terms with q > 0; plain "p" when q == 1.
std::string rational_to_string(const Rational& r);

/// Accepts "p" and "p/q" with optional sign; rejects anything else.
Rational parse_rational(const std::string& text);

bool is_integer(const Rational& r);

/// Largest integer <= r.
Int floor_rational(const Rational& r);

/// Smallest integer >= r.
Int ceil_rational(const Rational& r);

std::string int_to_string(const Int& n);

}  // namespace gmwin
