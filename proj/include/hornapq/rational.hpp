#pragma once

// Exact rational scalars backed by GMP, plus the textual forms used on the
// command line and in JSON ("num/den").

#include <gmpxx.h>

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace hornapq {

using Rational = mpq_class;
using BigInt = mpz_class;

/// Canonical "num/den" text; integers keep the "/1" suffix.
inline std::string to_string(const Rational& q) {
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

namespace detail {

inline bool is_integer_token(std::string_view s) {
  std::size_t i = 0;
  if (i < s.size() && (s[i] == '-' || s[i] == '+')) ++i;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i)
    if (s[i] < '0' || s[i] > '9') return false;
  return true;
}

inline BigInt parse_bigint(std::string_view s) {
  if (!is_integer_token(s)) throw std::invalid_argument("malformed integer '" + std::string(s) + "'");
  std::string text(s.front() == '+' ? s.substr(1) : s);
  return BigInt(text, 10);
}

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

}  // namespace detail

/// Parses "a" or "a/b" with integer a, b (b != 0). Decimal points and
/// exponents are rejected so exact inputs never pass through a double.
inline Rational parse_rational(std::string_view text) {
  auto s = detail::trim(text);
  auto slash = s.find('/');
  if (slash == std::string_view::npos) return Rational(detail::parse_bigint(s));
  BigInt num = detail::parse_bigint(detail::trim(s.substr(0, slash)));
  BigInt den = detail::parse_bigint(detail::trim(s.substr(slash + 1)));
  if (den == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

/// Comma-separated list of rationals, e.g. "1,-1/2,0".
inline std::vector<Rational> parse_rational_list(std::string_view text) {
  std::vector<Rational> out;
  if (detail::trim(text).empty()) return out;
  std::size_t start = 0;
  while (true) {
    auto comma = text.find(',', start);
    out.push_back(parse_rational(text.substr(start, comma == std::string_view::npos ? text.npos : comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

/// Nearest rational with the given denominator (ties away from zero).
inline Rational rationalize(double x, std::int64_t denominator) {
  if (!std::isfinite(x)) throw std::invalid_argument("cannot rationalize a non-finite value");
  if (denominator <= 0) throw std::invalid_argument("denominator must be positive");
  double scaled = std::round(x * static_cast<double>(denominator));
  Rational q(BigInt(scaled), BigInt(static_cast<long>(denominator)));
  q.canonicalize();
  return q;
}

inline BigInt lcm_of_denominators(const std::vector<Rational>& v) {
  BigInt l = 1;
  for (const auto& q : v) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.get_den_mpz_t());
  return l;
}

}  // namespace hornapq
