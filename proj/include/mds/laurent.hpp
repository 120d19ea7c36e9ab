#pragma once

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <string>
#include <string_view>
#include <type_traits>
#include <unordered_map>
#include <utility>
#include <vector>

#include "mds/error.hpp"
#include "mds/field.hpp"
#include "mds/lattice_geom.hpp"
#include "mds/number.hpp"

namespace mds {

/// Sparse Laurent polynomial in x, y over an exact field. Terms are kept
/// sorted by exponent (lexicographic) with no zero coefficients stored.
template <class Field>
class LaurentPoly {
 public:
  using field_type = Field;
  using value_type = typename Field::value_type;

  struct Term {
    LatticePoint exponent;
    value_type coeff;

    bool operator==(const Term&) const = default;
  };

  LaurentPoly()
    requires std::is_default_constructible_v<Field>
  = default;
  explicit LaurentPoly(Field field) : field_(std::move(field)) {}

  static LaurentPoly constant(const Field& field, const value_type& c) { return monomial(field, {0, 0}, c); }

  static LaurentPoly monomial(const Field& field, LatticePoint e, const value_type& c) {
    LaurentPoly out(field);
    if (!field.is_zero(c)) out.terms_.push_back({e, c});
    return out;
  }

  static LaurentPoly monomial(const Field& field, LatticePoint e) { return monomial(field, e, field.one()); }

  /// Combines repeated exponents and drops zeros.
  static LaurentPoly from_terms(const Field& field, std::vector<Term> terms) {
    std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) { return a.exponent < b.exponent; });
    LaurentPoly out(field);
    for (auto& t : terms) {
      if (!out.terms_.empty() && out.terms_.back().exponent == t.exponent)
        out.terms_.back().coeff = field.add(out.terms_.back().coeff, t.coeff);
      else
        out.terms_.push_back(std::move(t));
    }
    out.drop_zeros();
    return out;
  }

  const Field& field() const { return field_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  const std::vector<Term>& terms() const { return terms_; }

  value_type coefficient(LatticePoint p) const {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), p,
                               [](const Term& t, const LatticePoint& q) { return t.exponent < q; });
    if (it != terms_.end() && it->exponent == p) return it->coeff;
    return field_.zero();
  }

  std::vector<LatticePoint> support() const {
    std::vector<LatticePoint> s;
    s.reserve(terms_.size());
    for (const auto& t : terms_) s.push_back(t.exponent);
    return s;
  }

  bool operator==(const LaurentPoly& o) const { return field_ == o.field_ && terms_ == o.terms_; }

  LaurentPoly operator-() const {
    LaurentPoly out(*this);
    for (auto& t : out.terms_) t.coeff = field_.neg(t.coeff);
    return out;
  }

  LaurentPoly scaled(const value_type& c) const {
    LaurentPoly out(field_);
    if (field_.is_zero(c)) return out;
    out.terms_.reserve(terms_.size());
    for (const auto& t : terms_) out.terms_.push_back({t.exponent, field_.mul(t.coeff, c)});
    out.drop_zeros();
    return out;
  }

  /// Multiplication by the monomial x^e.i y^e.j.
  LaurentPoly shifted(LatticePoint e) const {
    LaurentPoly out(*this);
    for (auto& t : out.terms_) t.exponent = t.exponent + e;
    return out;
  }

  friend LaurentPoly operator+(const LaurentPoly& a, const LaurentPoly& b) { return a.merge(b, false); }
  friend LaurentPoly operator-(const LaurentPoly& a, const LaurentPoly& b) { return a.merge(b, true); }
  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) { return a.multiply(b); }

  LaurentPoly& operator+=(const LaurentPoly& b) { return *this = *this + b; }
  LaurentPoly& operator-=(const LaurentPoly& b) { return *this = *this - b; }
  LaurentPoly& operator*=(const LaurentPoly& b) { return *this = *this * b; }

 private:
  void require_same_field(const LaurentPoly& b) const {
    if (!(field_ == b.field_))
      throw Error(ErrorCode::FieldMismatch, "cannot combine polynomials over " + field_.name() + " and " + b.field_.name());
  }

  void drop_zeros() {
    std::erase_if(terms_, [&](const Term& t) { return field_.is_zero(t.coeff); });
  }

  LaurentPoly merge(const LaurentPoly& b, bool subtract) const {
    require_same_field(b);
    LaurentPoly out(field_);
    out.terms_.reserve(terms_.size() + b.terms_.size());
    auto i = terms_.begin();
    auto j = b.terms_.begin();
    while (i != terms_.end() || j != b.terms_.end()) {
      if (j == b.terms_.end() || (i != terms_.end() && i->exponent < j->exponent)) {
        out.terms_.push_back(*i++);
      } else if (i == terms_.end() || j->exponent < i->exponent) {
        out.terms_.push_back({j->exponent, subtract ? field_.neg(j->coeff) : j->coeff});
        ++j;
      } else {
        value_type c = subtract ? field_.sub(i->coeff, j->coeff) : field_.add(i->coeff, j->coeff);
        if (!field_.is_zero(c)) out.terms_.push_back({i->exponent, std::move(c)});
        ++i;
        ++j;
      }
    }
    return out;
  }

  LaurentPoly multiply(const LaurentPoly& b) const {
    require_same_field(b);
    LaurentPoly out(field_);
    if (is_zero() || b.is_zero()) return out;

    auto box = [](const LaurentPoly& p) {
      std::int64_t jmin = p.terms_.front().exponent.j, jmax = jmin;
      for (const auto& t : p.terms_) {
        jmin = std::min(jmin, t.exponent.j);
        jmax = std::max(jmax, t.exponent.j);
      }
      return std::array<std::int64_t, 4>{p.terms_.front().exponent.i, p.terms_.back().exponent.i, jmin, jmax};
    };
    const auto ba = box(*this);
    const auto bb = box(b);
    const std::int64_t i0 = ba[0] + bb[0];
    const std::int64_t j0 = ba[2] + bb[2];
    const std::uint64_t width = static_cast<std::uint64_t>(ba[1] - ba[0] + bb[1] - bb[0] + 1);
    const std::uint64_t height = static_cast<std::uint64_t>(ba[3] - ba[2] + bb[3] - bb[2] + 1);
    const double cells = static_cast<double>(width) * static_cast<double>(height);
    const double products = static_cast<double>(terms_.size()) * static_cast<double>(b.terms_.size());

    // Dense accumulation when the product box is not much bigger than the
    // number of partial products; otherwise hash by packed exponent.
    if (cells <= 4.0 * products + 4096.0 && cells <= double(1u << 26)) {
      std::vector<value_type> acc(width * height, field_.zero());
      std::vector<char> touched(width * height, 0);
      for (const auto& s : terms_)
        for (const auto& t : b.terms_) {
          const std::uint64_t key = static_cast<std::uint64_t>(s.exponent.i + t.exponent.i - i0) * height +
                                    static_cast<std::uint64_t>(s.exponent.j + t.exponent.j - j0);
          field_.add_product(acc[key], s.coeff, t.coeff);
          touched[key] = 1;
        }
      for (std::uint64_t key = 0; key < acc.size(); ++key) {
        if (!touched[key] || field_.is_zero(acc[key])) continue;
        out.terms_.push_back({{i0 + static_cast<std::int64_t>(key / height), j0 + static_cast<std::int64_t>(key % height)},
                              std::move(acc[key])});
      }
      return out;
    }

    std::unordered_map<std::uint64_t, value_type> acc;
    acc.reserve(terms_.size() * 2);
    for (const auto& s : terms_)
      for (const auto& t : b.terms_) {
        const std::uint64_t key = static_cast<std::uint64_t>(s.exponent.i + t.exponent.i - i0) * height +
                                  static_cast<std::uint64_t>(s.exponent.j + t.exponent.j - j0);
        auto [it, inserted] = acc.try_emplace(key, field_.zero());
        field_.add_product(it->second, s.coeff, t.coeff);
      }
    std::vector<Term> terms;
    terms.reserve(acc.size());
    for (auto& [key, c] : acc) {
      if (field_.is_zero(c)) continue;
      terms.push_back({{i0 + static_cast<std::int64_t>(key / height), j0 + static_cast<std::int64_t>(key % height)},
                       std::move(c)});
    }
    std::sort(terms.begin(), terms.end(), [](const Term& x, const Term& y) { return x.exponent < y.exponent; });
    out.terms_ = std::move(terms);
    return out;
  }

  Field field_;
  std::vector<Term> terms_;
};

using QPoly = LaurentPoly<RationalField>;
using FpPoly = LaurentPoly<PrimeField>;

/// f(x^p, y^p); over F_p this equals f^p.
template <class Field>
LaurentPoly<Field> frobenius(const LaurentPoly<Field>& f, std::int64_t p) {
  std::vector<typename LaurentPoly<Field>::Term> terms;
  terms.reserve(f.size());
  for (const auto& t : f.terms()) terms.push_back({p * t.exponent, t.coeff});
  return LaurentPoly<Field>::from_terms(f.field(), std::move(terms));
}

/// f^n by repeated squaring. Over F_p, factors of p in the exponent are
/// taken by the Frobenius substitution instead of squaring.
template <class Field>
LaurentPoly<Field> pow(LaurentPoly<Field> f, std::uint64_t n) {
  if constexpr (Field::is_prime_field) {
    const std::uint64_t p = f.field().prime();
    while (n != 0 && n % p == 0 && p <= std::uint64_t(1) << 20) {
      f = frobenius(f, static_cast<std::int64_t>(p));
      n /= p;
    }
  }
  auto result = LaurentPoly<Field>::constant(f.field(), f.field().one());
  while (n) {
    if (n & 1) result = result * f;
    n >>= 1;
    if (n) f = f * f;
  }
  return result;
}

/// Monotone chain hull of points sorted lexicographically (any order is
/// accepted; it is sorted first).
inline std::vector<LatticePoint> convex_hull(std::vector<LatticePoint> pts) {
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() <= 1) return pts;
  auto turn = [](const LatticePoint& o, const LatticePoint& a, const LatticePoint& b) {
    return static_cast<__int128>(a.i - o.i) * (b.j - o.j) - static_cast<__int128>(a.j - o.j) * (b.i - o.i);
  };
  std::vector<LatticePoint> hull(2 * pts.size());
  std::size_t k = 0;
  for (const auto& p : pts) {
    while (k >= 2 && turn(hull[k - 2], hull[k - 1], p) <= 0) --k;
    hull[k++] = p;
  }
  for (std::size_t i = pts.size() - 1, lower = k + 1; i-- > 0;) {
    while (k >= lower && turn(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);
  return hull;
}

/// Counterclockwise convex hull vertices of supp(f), starting at the
/// lexicographically smallest exponent; collinear points are dropped.
template <class Field>
std::vector<LatticePoint> newton_polygon(const LaurentPoly<Field>& f) {
  if (f.is_zero()) throw Error(ErrorCode::ZeroPolynomial, "Newton polygon of zero");
  return convex_hull(f.support());
}

/// Order of vanishing at t0 = (1,1): the least total degree of a nonzero
/// coefficient of f(1+u, 1+v). f is first multiplied by a monomial so all
/// exponents are nonnegative (a unit near t0), then Taylor-shifted row by
/// row in x and column by column in y. Valid in every characteristic.
template <class Field>
std::int64_t multiplicity_at_t0(const LaurentPoly<Field>& f) {
  if (f.is_zero()) throw Error(ErrorCode::ZeroPolynomial, "multiplicity of zero");
  const auto& fld = f.field();
  std::int64_t i0 = f.terms().front().exponent.i, i1 = f.terms().back().exponent.i;
  std::int64_t j0 = f.terms().front().exponent.j, j1 = j0;
  for (const auto& t : f.terms()) {
    j0 = std::min(j0, t.exponent.j);
    j1 = std::max(j1, t.exponent.j);
  }
  const std::size_t w = static_cast<std::size_t>(i1 - i0 + 1);
  const std::size_t h = static_cast<std::size_t>(j1 - j0 + 1);
  // grid[b * w + a]: coefficient of x^a y^b after the monomial shift.
  std::vector<typename Field::value_type> grid(w * h, fld.zero());
  for (const auto& t : f.terms())
    grid[static_cast<std::size_t>(t.exponent.j - j0) * w + static_cast<std::size_t>(t.exponent.i - i0)] = t.coeff;

  for (std::size_t b = 0; b < h; ++b) {
    auto* row = &grid[b * w];
    for (std::size_t k = 0; k + 1 < w; ++k)
      for (std::size_t t = w - 1; t-- > k;) row[t] = fld.add(row[t], row[t + 1]);
  }
  for (std::size_t a = 0; a < w; ++a)
    for (std::size_t k = 0; k + 1 < h; ++k)
      for (std::size_t t = h - 1; t-- > k;) grid[t * w + a] = fld.add(grid[t * w + a], grid[(t + 1) * w + a]);

  std::int64_t best = -1;
  for (std::size_t b = 0; b < h; ++b)
    for (std::size_t a = 0; a < w; ++a)
      if (!fld.is_zero(grid[b * w + a])) {
        const auto d = static_cast<std::int64_t>(a + b);
        if (best < 0 || d < best) best = d;
      }
  return best;
}

/// Termwise image of a rational polynomial in another field; throws BadPrime
/// when a denominator vanishes there.
template <class To>
LaurentPoly<To> convert(const QPoly& f, const To& field) {
  std::vector<typename LaurentPoly<To>::Term> terms;
  terms.reserve(f.size());
  for (const auto& t : f.terms()) terms.push_back({t.exponent, field.from_rational(t.coeff)});
  return LaurentPoly<To>::from_terms(field, std::move(terms));
}

inline FpPoly reduce_mod_p(const QPoly& f, std::uint64_t p) { return convert(f, PrimeField(p)); }

/// Exponent change (i,j) -> (a*i + b*j + s.i, c*i + d*j + s.j); the linear
/// part must be invertible over Z.
struct UnimodularMap {
  std::int64_t a = 1, b = 0, c = 0, d = 1;
  LatticePoint shift{0, 0};

  LatticePoint apply(LatticePoint p) const { return {a * p.i + b * p.j + shift.i, c * p.i + d * p.j + shift.j}; }
};

template <class Field>
LaurentPoly<Field> substitute_unimodular(const LaurentPoly<Field>& f, const UnimodularMap& map) {
  const std::int64_t det = map.a * map.d - map.b * map.c;
  if (det != 1 && det != -1) throw Error(ErrorCode::NonUnimodular, "determinant " + std::to_string(det));
  std::vector<typename LaurentPoly<Field>::Term> terms;
  terms.reserve(f.size());
  for (const auto& t : f.terms()) terms.push_back({map.apply(t.exponent), t.coeff});
  return LaurentPoly<Field>::from_terms(f.field(), std::move(terms));
}

// ---------------------------------------------------------------------------
// Text format: "1 + x - 3*x*y + x^2*y^3", exponents may be negative (x^-1).

namespace detail {

inline std::string monomial_text(LatticePoint e) {
  std::string s;
  auto var = [&](char name, std::int64_t k) {
    if (k == 0) return;
    if (!s.empty()) s += '*';
    s += name;
    if (k != 1) s += "^" + std::to_string(k);
  };
  var('x', e.i);
  var('y', e.j);
  return s;
}

}  // namespace detail

template <class Field>
std::string to_string(const LaurentPoly<Field>& f) {
  if (f.is_zero()) return "0";
  const auto& fld = f.field();
  std::string out;
  bool first = true;
  for (const auto& t : f.terms()) {
    std::string c;
    bool negative = false;
    if constexpr (std::is_same_v<Field, RationalField>) {
      negative = t.coeff < 0;
      c = to_string(negative ? Rational(-t.coeff) : t.coeff);
    } else {
      c = fld.format(t.coeff);
    }
    const std::string mono = detail::monomial_text(t.exponent);
    std::string body;
    if (mono.empty())
      body = c;
    else if (c == "1")
      body = mono;
    else
      body = c + "*" + mono;
    if (first)
      out += negative ? "-" + body : body;
    else
      out += (negative ? " - " : " + ") + body;
    first = false;
  }
  return out;
}

namespace detail {

class PolyParser {
 public:
  explicit PolyParser(std::string_view s) : s_(s) {}

  /// Returns the list of (exponent, rational coefficient) terms.
  std::vector<std::pair<LatticePoint, Rational>> parse() {
    std::vector<std::pair<LatticePoint, Rational>> out;
    skip_ws();
    if (pos_ == s_.size()) fail("empty polynomial");
    bool negative = false;
    if (peek() == '+' || peek() == '-') {
      negative = s_[pos_++] == '-';
      skip_ws();
    }
    for (;;) {
      auto term = parse_term();
      if (negative) term.second = -term.second;
      out.push_back(std::move(term));
      skip_ws();
      if (pos_ == s_.size()) break;
      if (peek() != '+' && peek() != '-') fail("expected '+' or '-'");
      negative = s_[pos_++] == '-';
      skip_ws();
    }
    return out;
  }

 private:
  char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }
  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  [[noreturn]] void fail(const std::string& why) const {
    throw Error(ErrorCode::ParseError, why + " at offset " + std::to_string(pos_) + " in '" + std::string(s_) + "'");
  }

  Integer parse_digits() {
    if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("expected digits");
    Integer z = 0;
    while (std::isdigit(static_cast<unsigned char>(peek()))) z = z * 10 + (s_[pos_++] - '0');
    return z;
  }

  std::int64_t parse_exponent() {
    skip_ws();
    bool paren = false;
    if (peek() == '(') {
      paren = true;
      ++pos_;
      skip_ws();
    }
    bool neg = false;
    if (peek() == '-' || peek() == '+') neg = s_[pos_++] == '-';
    Integer e = parse_digits();
    if (paren) {
      skip_ws();
      if (peek() != ')') fail("expected ')'");
      ++pos_;
    }
    if (e > Integer(std::int64_t(1) << 40)) fail("exponent too large");
    const auto v = static_cast<std::int64_t>(e);
    return neg ? -v : v;
  }

  std::pair<LatticePoint, Rational> parse_term() {
    Rational coeff = 1;
    LatticePoint e{0, 0};
    bool any = false;
    for (;;) {
      skip_ws();
      const char c = peek();
      if (std::isdigit(static_cast<unsigned char>(c))) {
        Integer n = parse_digits();
        Integer d = 1;
        if (peek() == '/') {
          ++pos_;
          d = parse_digits();
          if (d == 0) fail("zero denominator");
        }
        coeff *= Rational(n, d);
      } else if (c == 'x' || c == 'y') {
        ++pos_;
        std::int64_t k = 1;
        skip_ws();
        if (peek() == '^') {
          ++pos_;
          k = parse_exponent();
        }
        (c == 'x' ? e.i : e.j) += k;
      } else {
        if (!any) fail("expected a coefficient or variable");
        break;
      }
      any = true;
      skip_ws();
      if (peek() == '*') {
        ++pos_;
        continue;
      }
      const char n = peek();
      if (!(std::isdigit(static_cast<unsigned char>(n)) || n == 'x' || n == 'y')) break;
    }
    return {e, coeff};
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace detail

template <class Field>
LaurentPoly<Field> parse_poly(std::string_view text, const Field& field) {
  std::vector<typename LaurentPoly<Field>::Term> terms;
  for (auto& [e, c] : detail::PolyParser(text).parse()) terms.push_back({e, field.from_rational(c)});
  return LaurentPoly<Field>::from_terms(field, std::move(terms));
}

inline QPoly parse_poly(std::string_view text) { return parse_poly(text, RationalField{}); }

}  // namespace mds
