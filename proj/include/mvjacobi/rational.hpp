#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <stdexcept>
#include <string>
#include <string_view>

namespace mvjacobi {

/// Exact arbitrary-precision rational (GMP backed, expression templates off so
/// that `auto` always yields a value).
using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;
using Integer = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                              boost::multiprecision::et_off>;

/// Parses "p", "-p" or "p/q". Throws std::invalid_argument on malformed input
/// or a zero denominator.
inline Rational parse_rational(std::string_view text) {
  auto is_int = [](std::string_view s) {
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
    if (s.empty()) return false;
    for (char c : s)
      if (c < '0' || c > '9') return false;
    return true;
  };
  const auto slash = text.find('/');
  std::string_view num = text.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view{"1"} : text.substr(slash + 1);
  if (!is_int(num) || !is_int(den) || den.front() == '-' || den.front() == '+')
    throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
  const Integer p{std::string(num.front() == '+' ? num.substr(1) : num)};
  const Integer q{std::string(den)};
  if (q == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
  return Rational(p, q);
}

/// Lowest terms, positive denominator; integers carry no "/1".
inline std::string to_string(const Rational& r) { return r.str(); }

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

inline Rational factorial(unsigned k) {
  Rational f = 1;
  for (unsigned i = 2; i <= k; ++i) f *= i;
  return f;
}

inline Rational binomial(unsigned n, unsigned k) {
  if (k > n) return 0;
  Rational b = 1;
  for (unsigned i = 0; i < k; ++i) b = b * (n - i) / (i + 1);
  return b;
}

/// a (a-1) ... (a-r+1), with ff(a, 0) = 1.
inline Rational falling_factorial(const Rational& a, unsigned r) {
  Rational f = 1;
  for (unsigned i = 0; i < r; ++i) f *= a - i;
  return f;
}

}  // namespace mvjacobi
