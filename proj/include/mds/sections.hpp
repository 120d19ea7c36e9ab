#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mds/blowup.hpp"
#include "mds/curves.hpp"
#include "mds/error.hpp"
#include "mds/field.hpp"
#include "mds/lattice_geom.hpp"
#include "mds/laurent.hpp"
#include "mds/linalg.hpp"
#include "mds/number.hpp"

namespace mds {

/// Laurent polynomials with Newton polygon in `triangle` vanishing to order
/// `order` at t0; `vertex` marks the torus-fixed point of interest.
struct SectionProblem {
  RationalTriangle triangle;
  std::int64_t order = 0;
  RationalPoint vertex;

  SectionProblem(RationalTriangle t, std::int64_t n, RationalPoint p)
      : triangle(std::move(t)), order(n), vertex(std::move(p)) {
    if (order < 0) throw Error(ErrorCode::InvalidArgument, "order must be nonnegative");
    const auto& v = triangle.vertices();
    if (!(vertex == v[0] || vertex == v[1] || vertex == v[2]))
      throw Error(ErrorCode::InvalidArgument, "distinguished point is not a vertex of the triangle");
  }
};

/// Row labels (a, b) with a + b < order: by total degree, then a descending.
inline std::vector<LatticePoint> constraint_rows(std::int64_t order) {
  std::vector<LatticePoint> rows;
  for (std::int64_t d = 0; d < order; ++d)
    for (std::int64_t a = d; a >= 0; --a) rows.push_back({a, d - a});
  return rows;
}

/// Entry at row (a,b), column (i,j) is C(i,a) C(j,b), the coefficient of
/// u^a v^b in (1+u)^i (1+v)^j. Columns follow lattice_points(triangle).
inline IntMatrix constraint_matrix(const SectionProblem& problem) {
  const auto rows = constraint_rows(problem.order);
  const auto cols = lattice_points(problem.triangle);
  IntMatrix m(rows.size(), cols.size());
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < cols.size(); ++c)
      m(r, c) = binomial(Integer(cols[c].i), rows[r].i) * binomial(Integer(cols[c].j), rows[r].j);
  return m;
}

template <class Field>
struct SectionSpace {
  std::vector<LatticePoint> points;
  IntMatrix matrix;
  KernelBasis<Field> kernel;

  std::size_t dimension() const { return kernel.dimension(); }

  LaurentPoly<Field> polynomial(std::size_t k) const {
    std::vector<typename LaurentPoly<Field>::Term> terms;
    for (std::size_t c = 0; c < points.size(); ++c) terms.push_back({points[c], kernel.vectors.at(k)[c]});
    return LaurentPoly<Field>::from_terms(kernel.field, std::move(terms));
  }
};

template <class Field>
SectionSpace<Field> section_space(const SectionProblem& problem, const Field& field) {
  auto pts = lattice_points(problem.triangle);
  auto m = constraint_matrix(problem);
  auto k = kernel(m, field);
  return {std::move(pts), std::move(m), std::move(k)};
}

/// Direct check that f is a section of the problem avoiding its vertex.
struct WitnessCheck {
  bool support_in_triangle = false;
  std::int64_t multiplicity = 0;
  bool vanishes_to_order = false;
  bool vertex_coefficient_nonzero = false;

  bool holds() const { return support_in_triangle && vanishes_to_order && vertex_coefficient_nonzero; }
};

template <class Field>
WitnessCheck check_witness(const LaurentPoly<Field>& f, const SectionProblem& problem) {
  WitnessCheck w;
  if (f.is_zero()) return w;
  w.support_in_triangle = true;
  for (const auto& t : f.terms())
    if (!contains(problem.triangle, RationalPoint(t.exponent))) {
      w.support_in_triangle = false;
      break;
    }
  w.multiplicity = multiplicity_at_t0(f);
  w.vanishes_to_order = w.multiplicity >= problem.order;
  if (problem.vertex.is_lattice())
    w.vertex_coefficient_nonzero = !f.field().is_zero(f.coefficient(problem.vertex.to_lattice()));
  return w;
}

enum class HcReason { NonIntegralVertex, VertexCoordinateForcedZero, WitnessFound };

inline std::string to_string(HcReason r) {
  switch (r) {
    case HcReason::NonIntegralVertex: return "NonIntegralVertex";
    case HcReason::VertexCoordinateForcedZero: return "VertexCoordinateForcedZero";
    case HcReason::WitnessFound: return "WitnessFound";
  }
  return "?";
}

template <class Field>
struct HcReport {
  std::int64_t l = 0;
  std::string field;
  bool member = false;
  HcReason reason = HcReason::NonIntegralVertex;
  std::optional<LaurentPoly<Field>> witness;
  std::size_t lattice_points = 0;
  std::size_t constraints = 0;
  std::size_t kernel_dimension = 0;
};

/// Is l in HC_K for the class with triangle delta_prime and multiplicity n
/// at E? The witness, when found, is normalised to vertex coefficient 1.
template <class Field>
HcReport<Field> hc_member(std::int64_t l, const RationalTriangle& delta_prime, std::int64_t n,
                          const RationalPoint& p, const Field& field) {
  if (l < 1) throw Error(ErrorCode::InvalidArgument, "l must be >= 1");
  if (n < 0) throw Error(ErrorCode::InvalidArgument, "n must be >= 0");
  const SectionProblem problem(scaled(delta_prime, Rational(l)), l * n, Rational(l) * p);

  HcReport<Field> r;
  r.l = l;
  r.field = field.name();
  if (!problem.vertex.is_lattice()) {
    r.reason = HcReason::NonIntegralVertex;
    return r;
  }
  const auto space = section_space(problem, field);
  r.lattice_points = space.points.size();
  r.constraints = space.matrix.rows();
  r.kernel_dimension = space.dimension();

  const LatticePoint v = problem.vertex.to_lattice();
  const auto col = static_cast<std::size_t>(std::lower_bound(space.points.begin(), space.points.end(), v) - space.points.begin());
  r.reason = HcReason::VertexCoordinateForcedZero;
  for (std::size_t k = 0; k < space.dimension(); ++k) {
    const auto& c = space.kernel.vectors[k][col];
    if (field.is_zero(c)) continue;
    r.member = true;
    r.reason = HcReason::WitnessFound;
    r.witness = space.polynomial(k).scaled(field.inv(c));
    break;
  }
  return r;
}

/// p = (m+1) k + l with 0 <= l <= m.
struct PrimeSplit {
  std::int64_t k = 0;
  std::int64_t l = 0;
};

inline PrimeSplit split_prime(std::int64_t m, std::int64_t p) { return {p / (m + 1), p % (m + 1)}; }

/// Both degree inequalities for the redistribution index j.
inline bool j_is_valid(std::int64_t m, std::int64_t p, std::int64_t j, const Rational& alpha, const Rational& beta) {
  const auto [k, l] = split_prime(m, p);
  if (j < 0 || j > k) return false;
  const Rational lower_ok = Rational(j + 1) * (1 - (m + 2) * alpha) / (m + 1) - p * alpha;
  const Rational upper_ok = Rational(k - j) * (1 - beta) / (m + 1) - p * ((m + 2) * beta - 1) / (m + 1);
  return lower_ok >= 0 && upper_ok >= 0;
}

/// Smallest valid j, if any.
inline std::optional<std::int64_t> find_j(std::int64_t m, std::int64_t p, const Rational& alpha, const Rational& beta) {
  const auto k = split_prime(m, p).k;
  for (std::int64_t j = 0; j <= k; ++j)
    if (j_is_valid(m, p, j, alpha, beta)) return j;
  return std::nullopt;
}

struct ZetaResult {
  std::int64_t m = 0;
  std::int64_t p = 0;
  std::int64_t k = 0;
  std::int64_t l = 0;
  std::int64_t j = 0;
  FpPoly zeta{PrimeField(2)};
  DegreeInterval degree;
  std::int64_t multiplicity = 0;
  std::uint64_t constant_term = 0;
};

/// zeta_p = xi_{m+1}^p - sum_{i=j+1}^k C(k,i) (-1)^i A^{k-i} B^i f^l xi_m^p over F_p,
/// with A = xi_{m+1}, B = x h xi_m. The sum is B^{j+1} f^l xi_m^p times a
/// polynomial in A and B evaluated by Horner's rule in A, so every product
/// has one small factor. p-th powers are Frobenius substitutions.
inline FpPoly zeta_polynomial(std::int64_t m, std::int64_t p, std::int64_t j) {
  const PrimeField fp(static_cast<std::uint64_t>(p));
  const auto [k, l] = split_prime(m, p);
  const auto base = fgh();
  const auto f = convert(base.f, fp);
  const auto a = xi(m + 1, fp);
  const auto b = FpPoly::monomial(fp, {1, 0}) * convert(base.h, fp) * xi(m, fp);

  const auto xi_m_p = frobenius(xi(m, fp), p);
  auto lead = frobenius(a, p);
  if (j >= k) return lead;

  auto w = pow(b, static_cast<std::uint64_t>(j + 1)) * (pow(f, static_cast<std::uint64_t>(l)) * xi_m_p);
  FpPoly sum(fp);
  for (std::int64_t i = j + 1; i <= k; ++i) {
    auto d = fp.from_integer(binomial(Integer(k), i));
    if (i % 2) d = fp.neg(d);
    sum = sum * a + w.scaled(d);
    if (i < k) w = w * b;
  }
  return lead - sum;
}

/// Builds zeta_p for the smallest valid j and checks the three section
/// conditions exactly. Throws NoValidJ or PostVerificationFailed.
inline ZetaResult build_zeta_p(std::int64_t m, std::int64_t p, const Rational& alpha, const Rational& beta) {
  require_positive_m(m);
  if (p < 2 || !is_prime(static_cast<std::uint64_t>(p))) throw Error(ErrorCode::InvalidField, std::to_string(p) + " is not prime");
  const auto j = find_j(m, p, alpha, beta);
  if (!j) throw Error(ErrorCode::NoValidJ, "no j satisfies both degree inequalities for m=" + std::to_string(m) + ", p=" + std::to_string(p));

  ZetaResult r;
  r.m = m;
  r.p = p;
  const auto split = split_prime(m, p);
  r.k = split.k;
  r.l = split.l;
  r.j = *j;
  r.zeta = zeta_polynomial(m, p, r.j);

  const auto delta = main2_triangle(m, alpha, beta);
  r.degree = degree_interval(r.zeta, delta);
  r.multiplicity = multiplicity_at_t0(r.zeta);
  r.constant_term = r.zeta.coefficient({0, 0});

  if (!r.degree.within({0, Rational(p * m)}))
    throw Error(ErrorCode::PostVerificationFailed, "zeta_p degree [" + to_string(r.degree.a) + "," + to_string(r.degree.b) + "] exceeds [0," + std::to_string(p * m) + "]");
  if (r.multiplicity < p * (m + 1))
    throw Error(ErrorCode::PostVerificationFailed, "zeta_p vanishes only to order " + std::to_string(r.multiplicity));
  if (r.constant_term == 0) throw Error(ErrorCode::PostVerificationFailed, "zeta_p has zero constant term");
  return r;
}

struct Clause {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct DeltaBarReport {
  std::int64_t m = 0;
  RationalTriangle delta_bar{{0, 0}, {1, 0}, {0, 1}};
  Rational x_left;
  Rational x_right;
  Rational height;
  std::vector<Clause> clauses;

  bool pass() const {
    for (const auto& c : clauses)
      if (!c.pass) return false;
    return true;
  }
};

/// Evaluates every clause without throwing.
inline DeltaBarReport delta_bar_report(std::int64_t m, const Rational& alpha, const Rational& beta) {
  require_positive_m(m);
  DeltaBarReport r;
  r.m = m;
  const Rational mm = m;
  const Rational base = mm * mm;
  const RationalPoint q{mm * mm + 1, mm * (mm + 1) + 1};
  const Rational left_run = q.x / q.y;
  const Rational right_run = Rational(1) / (mm + 2);
  r.height = base / (left_run - right_run);
  r.delta_bar = RationalTriangle({0, 0}, {base, 0}, {left_run * r.height, r.height});

  const Rational top = (mm + 1) * (mm + 1);
  r.x_left = left_run * top;
  r.x_right = base + right_run * top;
  auto add = [&](std::string name, bool ok, std::string detail) { r.clauses.push_back({std::move(name), ok, std::move(detail)}); };

  const Rational xl_closed = mm * (mm + 1) + (mm + 1) / (mm * (mm + 1) + 1);
  const Rational xr_closed = mm * (mm + 1) + Rational(1) / (mm + 2);
  add("x_L matches closed form", r.x_left == xl_closed, to_string(r.x_left));
  add("x_R matches closed form", r.x_right == xr_closed, to_string(r.x_right));
  add("x_R < x_L", r.x_right < r.x_left, to_string(r.x_right) + " < " + to_string(r.x_left));
  add("height < (m+1)^2", r.height < top, to_string(r.height));
  add("area < m^2 (m+1)^2 / 2", area(r.delta_bar) < base * top / 2, to_string(area(r.delta_bar)));

  const auto delta = main2_triangle(m, alpha, beta);
  const auto delta1 = parallel_triangle(delta, 0, base);
  const auto pts1 = lattice_points(delta1);
  add("lattice points of Delta_1 lie in Delta_bar", contains(r.delta_bar, pts1), std::to_string(pts1.size()) + " points");

  const auto hull2 = newton_polygon(pow(xi(m + 1), static_cast<std::uint64_t>(m)));
  add("Newton polygon of xi_{m+1}^m lies in Delta_bar", contains(r.delta_bar, hull2), std::to_string(hull2.size()) + " vertices");

  const LatticePoint apex{m * (m + 1), m * (m + 2)};
  const bool apex_is_vertex = std::find(hull2.begin(), hull2.end(), apex) != hull2.end();
  add("apex m(m+1,m+2) is a vertex of Delta_2", apex_is_vertex, "(" + std::to_string(apex.i) + "," + std::to_string(apex.j) + ")");
  add("apex m(m+1,m+2) lies outside Delta_1", !contains(delta1, RationalPoint(apex)), "");
  return r;
}

/// Throws ValidationFailed naming the first failing clause.
inline DeltaBarReport delta_bar_validator(std::int64_t m, const Rational& alpha, const Rational& beta) {
  auto r = delta_bar_report(m, alpha, beta);
  for (const auto& c : r.clauses)
    if (!c.pass) throw Error(ErrorCode::ValidationFailed, c.name + " (" + c.detail + ")");
  return r;
}

}  // namespace mds
