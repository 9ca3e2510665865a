#include "regmatch/rational.hpp"

#include <cctype>
#include <limits>
#include <numeric>

#include "regmatch/error.hpp"

namespace regmatch {
namespace {

BigInt parse_integer(std::string_view digits, std::string_view whole) {
  if (digits.empty()) throw Error(ErrorCode::kParseError, "bad number '" + std::string(whole) + "'");
  BigInt value = 0;
  for (char c : digits) {
    if (!std::isdigit(static_cast<unsigned char>(c))) {
      throw Error(ErrorCode::kParseError, "bad number '" + std::string(whole) + "'");
    }
    value = value * 10 + (c - '0');
  }
  return value;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  bool negative = false;
  std::string_view body = text;
  if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }
  Rational value;
  if (auto slash = body.find('/'); slash != std::string_view::npos) {
    BigInt num = parse_integer(body.substr(0, slash), text);
    BigInt den = parse_integer(body.substr(slash + 1), text);
    if (den == 0) throw Error(ErrorCode::kParseError, "zero denominator in '" + std::string(text) + "'");
    value = Rational(num, den);
  } else if (auto dot = body.find('.'); dot != std::string_view::npos) {
    std::string_view int_part = body.substr(0, dot);
    std::string_view frac_part = body.substr(dot + 1);
    BigInt num = int_part.empty() ? BigInt(0) : parse_integer(int_part, text);
    BigInt den = 1;
    if (!frac_part.empty()) {
      BigInt frac = parse_integer(frac_part, text);
      for (std::size_t i = 0; i < frac_part.size(); ++i) den *= 10;
      num = num * den + frac;
    } else if (int_part.empty()) {
      throw Error(ErrorCode::kParseError, "bad number '" + std::string(text) + "'");
    }
    value = Rational(num, den);
  } else {
    value = Rational(parse_integer(body, text));
  }
  return negative ? Rational(-value) : value;
}

std::string format_rational(const Rational& value) {
  const BigInt num = boost::multiprecision::numerator(value);
  const BigInt den = boost::multiprecision::denominator(value);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

double to_double(const Rational& value) { return value.convert_to<double>(); }

std::int64_t common_denominator(const std::vector<Rational>& values) {
  BigInt lcm = 1;
  for (const Rational& v : values) {
    const BigInt den = boost::multiprecision::denominator(v);
    lcm = lcm / boost::multiprecision::gcd(lcm, den) * den;
    if (lcm > std::numeric_limits<std::int64_t>::max()) return 0;
  }
  return lcm.convert_to<std::int64_t>();
}

}  // namespace regmatch
