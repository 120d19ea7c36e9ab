#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "mds/error.hpp"
#include "mds/field.hpp"
#include "mds/laurent.hpp"
#include "mds/number.hpp"

namespace mds {

struct Fgh {
  QPoly f;  // 1 - xy
  QPoly g;  // 1 - xy^2
  QPoly h;  // 1 - y
};

inline Fgh fgh() {
  const RationalField q;
  const auto one = QPoly::constant(q, 1);
  return {one - QPoly::monomial(q, {1, 1}), one - QPoly::monomial(q, {1, 2}), one - QPoly::monomial(q, {0, 1})};
}

inline void require_positive_m(std::int64_t m) {
  if (m < 1) throw Error(ErrorCode::InvalidArgument, "m must be >= 1, got " + std::to_string(m));
}

/// The curve of multiplicity m at t0 with Newton polygon (0,0), (m-1,0),
/// (m,m+1): row j (0 <= j <= m-1) carries (-1)^j C(m+1,j) at x^j..x^(m-1),
/// plus the apex term (-1)^m x^m y^(m+1).
inline QPoly xi(std::int64_t m) {
  require_positive_m(m);
  std::vector<QPoly::Term> terms;
  for (std::int64_t j = 0; j < m; ++j) {
    Integer c = binomial(Integer(m + 1), j);
    if (j % 2) c = -c;
    for (std::int64_t i = j; i < m; ++i) terms.push_back({{i, j}, Rational(c)});
  }
  terms.push_back({{m, m + 1}, Rational(m % 2 ? -1 : 1)});
  return QPoly::from_terms(RationalField{}, std::move(terms));
}

template <class Field>
LaurentPoly<Field> xi(std::int64_t m, const Field& field) {
  return convert(xi(m), field);
}

/// xi_{m+1} == f xi_m + x^m h^{m+1}
template <class Field>
bool check_recursion_b(std::int64_t m, const Field& field) {
  require_positive_m(m);
  const auto base = fgh();
  const auto f = convert(base.f, field);
  const auto h = convert(base.h, field);
  const auto rhs = f * xi(m, field) + LaurentPoly<Field>::monomial(field, {m, 0}) * pow(h, static_cast<std::uint64_t>(m + 1));
  return rhs == xi(m + 1, field);
}

/// xi_{m+1} == x h xi_m + f^{m+1}
template <class Field>
bool check_recursion_c(std::int64_t m, const Field& field) {
  require_positive_m(m);
  const auto base = fgh();
  const auto f = convert(base.f, field);
  const auto h = convert(base.h, field);
  const auto rhs = LaurentPoly<Field>::monomial(field, {1, 0}) * h * xi(m, field) + pow(f, static_cast<std::uint64_t>(m + 1));
  return rhs == xi(m + 1, field);
}

inline bool check_recursion_b(std::int64_t m) { return check_recursion_b(m, RationalField{}); }
inline bool check_recursion_c(std::int64_t m) { return check_recursion_c(m, RationalField{}); }

/// f(x, 1) as a polynomial in x alone (exponents (i, 0)).
template <class Field>
LaurentPoly<Field> restrict_to_y1(const LaurentPoly<Field>& f) {
  std::vector<typename LaurentPoly<Field>::Term> terms;
  for (const auto& t : f.terms()) terms.push_back({{t.exponent.i, 0}, t.coeff});
  return LaurentPoly<Field>::from_terms(f.field(), std::move(terms));
}

/// xi_m(x, 1) == (-1)^m (x-1)^m.
inline bool check_line_restriction(std::int64_t m) {
  const RationalField q;
  const auto x_minus_1 = QPoly::monomial(q, {1, 0}) - QPoly::constant(q, 1);
  auto expected = pow(x_minus_1, static_cast<std::uint64_t>(m));
  if (m % 2) expected = -expected;
  return restrict_to_y1(xi(m)) == expected;
}

struct CertificateCondition {
  std::string name;
  bool holds = false;
};

struct IrreducibilityCertificate {
  std::int64_t m = 0;
  std::string field;
  std::string transformed;  // x * xi_m(x, y/x) in text form
  std::vector<CertificateCondition> conditions;

  bool holds() const {
    for (const auto& c : conditions)
      if (!c.holds) return false;
    return true;
  }
};

/// Eisenstein check at the prime x of K[x] for x * xi_m(x, y/x), viewed as a
/// polynomial in y. Throws CertificateFails naming the first violated
/// condition.
template <class Field>
IrreducibilityCertificate eisenstein_certificate(std::int64_t m, const Field& field) {
  require_positive_m(m);
  const auto p = xi(m, field);
  const auto tilde = substitute_unimodular(p, UnimodularMap{1, -1, 0, 1, {1, 0}});

  IrreducibilityCertificate cert;
  cert.m = m;
  cert.field = field.name();
  cert.transformed = to_string(tilde);

  auto add = [&](std::string name, bool ok) { cert.conditions.push_back({std::move(name), ok}); };

  bool x_free = false, y_free = false;
  for (const auto& t : p.terms()) {
    x_free = x_free || t.exponent.i == 0;
    y_free = y_free || t.exponent.j == 0;
  }
  add("x does not divide xi_m", x_free);
  add("y does not divide xi_m", y_free);

  bool polynomial = true;
  std::map<std::int64_t, std::vector<LatticePoint>> by_y;  // y-degree -> exponents of a_k(x)
  for (const auto& t : tilde.terms()) {
    polynomial = polynomial && t.exponent.i >= 0 && t.exponent.j >= 0;
    by_y[t.exponent.j].push_back(t.exponent);
  }
  add("transformed polynomial lies in K[x,y]", polynomial);

  const auto top = by_y.empty() ? -1 : by_y.rbegin()->first;
  const auto lead = tilde.coefficient({0, m + 1});
  const auto expected_lead = (m % 2) ? field.neg(field.one()) : field.one();
  add("y-degree is m+1", top == m + 1);
  add("leading coefficient is the unit (-1)^m",
      by_y.count(m + 1) && by_y[m + 1].size() == 1 && lead == expected_lead);

  for (std::int64_t k = 1; k <= m; ++k) {
    bool divisible = true;
    for (const auto& e : by_y[k]) divisible = divisible && e.i >= 1;
    add("x | a_" + std::to_string(k), divisible);
  }
  bool a0_div = !by_y[0].empty();
  bool a0_linear = false;
  for (const auto& e : by_y[0]) {
    a0_div = a0_div && e.i >= 1;
    a0_linear = a0_linear || e.i == 1;
  }
  add("x | a_0", a0_div);
  add("x^2 does not divide a_0", a0_linear);

  for (const auto& c : cert.conditions)
    if (!c.holds) throw Error(ErrorCode::CertificateFails, "Eisenstein certificate for m=" + std::to_string(m) + " over " + cert.field + ": " + c.name);
  return cert;
}

inline IrreducibilityCertificate eisenstein_certificate(std::int64_t m) { return eisenstein_certificate(m, RationalField{}); }

struct ParallelogramReport {
  bool support_in_parallelogram = false;  // (i), together with x, y not dividing f
  bool not_divisible_by_x_or_y = false;   // (i)
  bool basis = false;                      // (ii)
  bool prescribed_zeros = false;           // (iii)
  bool prescribed_nonzeros = false;        // (iv)

  bool holds() const {
    return support_in_parallelogram && not_divisible_by_x_or_y && basis && prescribed_zeros && prescribed_nonzeros;
  }
};

/// Sufficient irreducibility criterion for f supported in the lattice
/// parallelogram P = { w + a u + b v : 0 <= a <= m, 0 <= b <= n }. A false
/// result means the criterion is inconclusive, not that f factors.
template <class Field>
ParallelogramReport parallelogram_check(const LaurentPoly<Field>& f, LatticePoint u, LatticePoint v, LatticePoint w,
                                        std::int64_t m, std::int64_t n) {
  if (m < 1 || n < 1) throw Error(ErrorCode::InvalidArgument, "parallelogram sides must be positive");
  ParallelogramReport r;
  const std::int64_t d = u.i * v.j - u.j * v.i;
  r.basis = d == 1 || d == -1;

  if (d != 0) {
    r.support_in_parallelogram = true;
    for (const auto& t : f.terms()) {
      const LatticePoint q = t.exponent - w;
      // q = a u + b v, solved by Cramer's rule
      const std::int64_t an = q.i * v.j - q.j * v.i;
      const std::int64_t bn = u.i * q.j - u.j * q.i;
      if (an % d != 0 || bn % d != 0) {
        r.support_in_parallelogram = false;
        break;
      }
      const std::int64_t a = an / d, b = bn / d;
      if (a < 0 || a > m || b < 0 || b > n) {
        r.support_in_parallelogram = false;
        break;
      }
    }
  }

  bool nonneg = !f.is_zero(), has_i0 = false, has_j0 = false;
  for (const auto& t : f.terms()) {
    nonneg = nonneg && t.exponent.i >= 0 && t.exponent.j >= 0;
    has_i0 = has_i0 || t.exponent.i == 0;
    has_j0 = has_j0 || t.exponent.j == 0;
  }
  r.not_divisible_by_x_or_y = nonneg && has_i0 && has_j0;

  const auto& fld = f.field();
  bool zeros = true;
  for (std::int64_t b = 0; b < n; ++b) zeros = zeros && fld.is_zero(f.coefficient(w + b * v));
  const LatticePoint top = w + n * v;
  for (std::int64_t a = 1; a <= m; ++a) zeros = zeros && fld.is_zero(f.coefficient(top + a * u));
  r.prescribed_zeros = zeros;
  r.prescribed_nonzeros = !fld.is_zero(f.coefficient(w + u)) && !fld.is_zero(f.coefficient(top));
  return r;
}

template <class Field>
bool parallelogram_irreducible(const LaurentPoly<Field>& f, LatticePoint u, LatticePoint v, LatticePoint w,
                               std::int64_t m, std::int64_t n) {
  return parallelogram_check(f, u, v, w, m, n).holds();
}

}  // namespace mds
