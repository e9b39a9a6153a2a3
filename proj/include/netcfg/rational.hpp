#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace netcfg {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

/// Renders "p/q", or just "p" when the denominator is 1.
std::string to_string(const Rational& r);

/// Parses "p/q", an integer, or a decimal literal. Decimals are mapped to the
/// closest rational with denominator at most `max_denominator`.
Rational parse_rational(std::string_view text, std::int64_t max_denominator = 1'000'000);

/// True if `text` is written as a decimal literal (contains '.', 'e' or 'E').
bool is_decimal_literal(std::string_view text);

/// Closest rational to `x` with denominator <= max_denominator (continued
/// fraction best approximation).
Rational limit_denominator(const Rational& x, const BigInt& max_denominator);

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

std::vector<double> to_doubles(const std::vector<Rational>& v);

}  // namespace netcfg
