#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <string_view>
#include <variant>

#include "mds/error.hpp"
#include "mds/number.hpp"

namespace mds {

namespace detail {

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % p);
}

inline std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
  std::uint64_t r = 1 % p;
  a %= p;
  while (e) {
    if (e & 1) r = mulmod(r, a, p);
    a = mulmod(a, a, p);
    e >>= 1;
  }
  return r;
}

}  // namespace detail

/// Deterministic Miller-Rabin; the first twelve primes as bases are exact
/// for every 64-bit input.
inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n % q == 0) return n == q;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    std::uint64_t x = detail::powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = detail::mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

class RationalField {
 public:
  using value_type = Rational;
  static constexpr bool is_prime_field = false;

  std::uint64_t characteristic() const { return 0; }
  std::string name() const { return "Q"; }

  value_type zero() const { return 0; }
  value_type one() const { return 1; }
  value_type from_integer(const Integer& z) const { return Rational(z); }
  value_type from_rational(const Rational& q) const { return q; }
  Rational to_rational(const value_type& v) const { return v; }

  bool is_zero(const value_type& v) const { return v == 0; }
  value_type add(const value_type& a, const value_type& b) const { return a + b; }
  value_type sub(const value_type& a, const value_type& b) const { return a - b; }
  value_type mul(const value_type& a, const value_type& b) const { return a * b; }
  value_type neg(const value_type& a) const { return -a; }
  value_type inv(const value_type& a) const {
    if (a == 0) throw Error(ErrorCode::InvalidArgument, "division by zero");
    return 1 / a;
  }
  void add_product(value_type& acc, const value_type& a, const value_type& b) const { acc += a * b; }

  std::string format(const value_type& v) const { return to_string(v); }
  value_type parse(std::string_view s) const { return parse_rational(s); }

  bool operator==(const RationalField&) const = default;
};

/// The prime field F_p; elements are kept in [0, p).
class PrimeField {
 public:
  using value_type = std::uint64_t;
  static constexpr bool is_prime_field = true;

  explicit PrimeField(std::uint64_t p) : p_(p) {
    if (!is_prime(p)) throw Error(ErrorCode::InvalidField, std::to_string(p) + " is not prime");
  }

  std::uint64_t characteristic() const { return p_; }
  std::uint64_t prime() const { return p_; }
  std::string name() const { return "Fp:" + std::to_string(p_); }

  value_type zero() const { return 0; }
  value_type one() const { return 1; }
  value_type from_integer(const Integer& z) const {
    Integer r = z % p_;
    if (r < 0) r += p_;
    return static_cast<std::uint64_t>(r);
  }
  value_type from_rational(const Rational& q) const {
    value_type d = from_integer(den(q));
    if (d == 0)
      throw Error(ErrorCode::BadPrime, "denominator of " + to_string(q) + " is divisible by " + std::to_string(p_));
    return mul(from_integer(num(q)), inv(d));
  }
  Rational to_rational(const value_type& v) const { return Rational(v); }

  bool is_zero(const value_type& v) const { return v == 0; }
  value_type add(value_type a, value_type b) const {
    value_type s = a + b;
    return (s >= p_ || s < a) ? s - p_ : s;
  }
  value_type sub(value_type a, value_type b) const { return a >= b ? a - b : a + (p_ - b); }
  value_type mul(value_type a, value_type b) const { return detail::mulmod(a, b, p_); }
  value_type neg(value_type a) const { return a == 0 ? 0 : p_ - a; }
  value_type inv(value_type a) const {
    if (a == 0) throw Error(ErrorCode::InvalidArgument, "division by zero");
    return detail::powmod(a, p_ - 2, p_);
  }
  void add_product(value_type& acc, value_type a, value_type b) const { acc = add(acc, mul(a, b)); }

  std::string format(const value_type& v) const { return std::to_string(v); }
  value_type parse(std::string_view s) const { return from_rational(parse_rational(s)); }

  bool operator==(const PrimeField&) const = default;

 private:
  std::uint64_t p_;
};

using FieldSpec = std::variant<RationalField, PrimeField>;

/// "Q" or "Fp:<prime>".
inline FieldSpec parse_field_spec(std::string_view s) {
  if (s == "Q" || s == "QQ") return RationalField{};
  if (s.rfind("Fp:", 0) == 0) {
    Integer p = parse_integer(s.substr(3));
    if (p < 2 || p > Integer(std::numeric_limits<std::uint64_t>::max()))
      throw Error(ErrorCode::InvalidField, "prime out of range: " + std::string(s));
    return PrimeField(static_cast<std::uint64_t>(p));
  }
  throw Error(ErrorCode::ParseError, "unknown field '" + std::string(s) + "' (expected Q or Fp:<p>)");
}

inline std::string field_name(const FieldSpec& f) {
  return std::visit([](const auto& fld) { return fld.name(); }, f);
}

}  // namespace mds
