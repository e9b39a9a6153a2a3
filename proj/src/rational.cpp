#include "netcfg/rational.hpp"

#include "netcfg/error.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>

namespace netcfg {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

BigInt parse_integer(std::string_view s, std::string_view whole) {
  s = trim(s);
  std::string_view digits = s;
  if (!digits.empty() && (digits.front() == '-' || digits.front() == '+')) digits.remove_prefix(1);
  if (digits.empty() || !std::all_of(digits.begin(), digits.end(),
                                     [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
    fail(ErrorCategory::input, "not a rational number: '" + std::string(whole) + "'");
  }
  return BigInt(std::string(s[0] == '+' ? s.substr(1) : s));
}

}  // namespace

std::string to_string(const Rational& r) {
  const BigInt num = boost::multiprecision::numerator(r);
  const BigInt den = boost::multiprecision::denominator(r);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

bool is_decimal_literal(std::string_view text) {
  return text.find_first_of(".eE") != std::string_view::npos;
}

Rational limit_denominator(const Rational& x, const BigInt& max_denominator) {
  if (max_denominator < 1) fail(ErrorCategory::usage, "max_denominator must be >= 1");
  if (boost::multiprecision::denominator(x) <= max_denominator) return x;
  const bool negative = x < 0;
  const Rational ax = negative ? Rational(-x) : x;

  BigInt p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  BigInt n = boost::multiprecision::numerator(ax);
  BigInt d = boost::multiprecision::denominator(ax);
  for (;;) {
    const BigInt a = n / d;
    const BigInt q2 = q0 + a * q1;
    if (q2 > max_denominator) break;
    const BigInt p2 = p0 + a * p1;
    p0 = p1;
    q0 = q1;
    p1 = p2;
    q1 = q2;
    const BigInt r = n - a * d;
    n = d;
    d = r;
  }
  const BigInt k = (max_denominator - q0) / q1;
  const Rational bound1(p0 + k * p1, q0 + k * q1);
  const Rational bound2(p1, q1);
  Rational best = abs(bound2 - ax) <= abs(bound1 - ax) ? bound2 : bound1;
  return negative ? Rational(-best) : best;
}

Rational parse_rational(std::string_view text, std::int64_t max_denominator) {
  const std::string_view s = trim(text);
  if (s.empty()) fail(ErrorCategory::input, "empty rational");
  if (const auto slash = s.find('/'); slash != std::string_view::npos) {
    const BigInt p = parse_integer(s.substr(0, slash), s);
    const BigInt q = parse_integer(s.substr(slash + 1), s);
    if (q == 0) fail(ErrorCategory::input, "zero denominator in '" + std::string(s) + "'");
    return Rational(p, q);
  }
  if (is_decimal_literal(s)) {
    double value = 0;
    const char* first = s.data();
    if (*first == '+') ++first;
    const auto [ptr, ec] = std::from_chars(first, s.data() + s.size(), value);
    if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(value)) {
      fail(ErrorCategory::input, "not a number: '" + std::string(s) + "'");
    }
    return limit_denominator(Rational(value), BigInt(max_denominator));
  }
  return Rational(parse_integer(s, s));
}

std::vector<double> to_doubles(const std::vector<Rational>& v) {
  std::vector<double> out;
  out.reserve(v.size());
  for (const auto& r : v) out.push_back(to_double(r));
  return out;
}

}  // namespace netcfg
