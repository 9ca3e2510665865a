#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace regmatch {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

// Accepts "a", "a/b" and plain decimals such as "0.125"; throws Error(kParseError).
Rational parse_rational(std::string_view text);

// "a/b", or "a" when the denominator is one.
std::string format_rational(const Rational& value);

double to_double(const Rational& value);

// Least common multiple of the denominators, or 0 when it does not fit in int64.
std::int64_t common_denominator(const std::vector<Rational>& values);

}  // namespace regmatch
