#pragma once

#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace poisrd {

/// Exact arbitrary-precision rational. Every geometric and group decision in
/// this library is made on these, never on floats.
using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

/// Parses "p/q", "p", or a plain decimal literal such as "0.125" or "-3.5e-1".
/// Decimals are converted exactly (0.1 becomes 1/10, not the nearest double).
Rational parse_rational(std::string_view text);

/// Canonical "p/q" form; integers print without a denominator.
std::string format_rational(const Rational& r);

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

/// Exact value of a binary double (every finite double is a dyadic rational).
inline Rational exact_from_double(double x) { return Rational(x); }

}  // namespace poisrd
