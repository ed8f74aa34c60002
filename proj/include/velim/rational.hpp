#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <string_view>

namespace velim {

// Arc weights are exact rationals so weight-preservation checks are equality
// tests. Arbitrary-precision components: path products can grow quickly.
using Rational = boost::multiprecision::cpp_rational;

/// Parses "p/q" or a plain integer "p". Throws Error(ParseError) on malformed
/// input or a zero denominator.
Rational parse_rational(std::string_view text);

/// Canonical form "p/q" with q > 0 and gcd(p, q) = 1 (integers render as "p/1").
std::string format_rational(const Rational& value);

}  // namespace velim
