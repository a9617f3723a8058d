#pragma once

#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace rtcover {

/// Exact arbitrary-precision rational. All lengths, offsets and scales in the
/// library are carried in this type; nothing is ever rounded to floating point.
using Rational = boost::multiprecision::number<boost::multiprecision::cpp_rational_backend,
                                               boost::multiprecision::et_off>;

/// Parses "p/q", an integer, or a finite decimal such as "0.375" or "-2.5".
/// Throws std::invalid_argument on anything else (including a zero denominator).
Rational parse_rational(std::string_view text);

/// Canonical text form: "p/q" in lowest terms, or "p" when the denominator is 1.
std::string to_string(const Rational& value);

}  // namespace rtcover
