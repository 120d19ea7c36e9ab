#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cctype>
#include <cstdint>
#include <string>
#include <string_view>

#include "mds/error.hpp"

namespace mds {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Integer num(const Rational& q) { return boost::multiprecision::numerator(q); }
inline Integer den(const Rational& q) { return boost::multiprecision::denominator(q); }

inline Rational make_rational(const Integer& n, const Integer& d) {
  if (d == 0) throw Error(ErrorCode::InvalidArgument, "zero denominator");
  return Rational(n, d);
}

inline Integer floor_div(const Integer& a, const Integer& b) {
  Integer q = a / b;
  Integer r = a % b;
  if (r != 0 && ((r < 0) != (b < 0))) --q;
  return q;
}

inline Integer floor(const Rational& q) { return floor_div(num(q), den(q)); }
inline Integer ceil(const Rational& q) { return -floor_div(-num(q), den(q)); }
inline bool is_integer(const Rational& q) { return den(q) == 1; }

inline Integer gcd(Integer a, Integer b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    Integer t = a % b;
    a = std::move(b);
    b = std::move(t);
  }
  return a;
}

inline Integer lcm(const Integer& a, const Integer& b) {
  if (a == 0 || b == 0) return 0;
  Integer l = a / gcd(a, b) * b;
  return l < 0 ? Integer(-l) : l;
}

/// Generalized binomial coefficient n(n-1)...(n-k+1)/k!, valid for negative n.
/// It is the coefficient of u^k in (1+u)^n, which is what the shifted
/// expansion of a Laurent monomial around 1 needs.
inline Integer binomial(const Integer& n, std::int64_t k) {
  if (k < 0) return 0;
  if (n >= 0 && Integer(k) > n) return 0;
  Integer r = 1;
  for (std::int64_t i = 0; i < k; ++i) {
    r *= (n - i);
    r /= (i + 1);
  }
  return r;
}

inline std::string to_string(const Integer& z) { return z.str(); }

/// "num/den", or just "num" when the denominator is 1.
inline std::string to_string(const Rational& q) {
  if (den(q) == 1) return num(q).str();
  return num(q).str() + "/" + den(q).str();
}

inline Integer parse_integer(std::string_view s) {
  std::size_t pos = 0;
  while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  bool neg = false;
  if (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) neg = s[pos++] == '-';
  std::size_t digits = 0;
  Integer z = 0;
  for (; pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos])); ++pos, ++digits)
    z = z * 10 + (s[pos] - '0');
  while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  if (digits == 0 || pos != s.size())
    throw Error(ErrorCode::ParseError, "not an integer: '" + std::string(s) + "'");
  return neg ? Integer(-z) : z;
}

/// Accepts "n", "n/d" with optional sign; the result is reduced.
inline Rational parse_rational(std::string_view s) {
  auto slash = s.find('/');
  if (slash == std::string_view::npos) return Rational(parse_integer(s));
  Integer n = parse_integer(s.substr(0, slash));
  Integer d = parse_integer(s.substr(slash + 1));
  if (d == 0) throw Error(ErrorCode::ParseError, "zero denominator in '" + std::string(s) + "'");
  return Rational(n, d);
}

}  // namespace mds
