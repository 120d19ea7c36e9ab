#pragma once

#include <algorithm>
#include <array>
#include <string>

#include "mds/error.hpp"
#include "mds/lattice_geom.hpp"
#include "mds/laurent.hpp"
#include "mds/number.hpp"

namespace mds {

/// The class h * pi^*H_Delta - e * E in N_1(X).
struct NumericClass {
  Rational h;
  Rational e;

  bool operator==(const NumericClass&) const = default;
};

inline NumericClass operator+(const NumericClass& a, const NumericClass& b) { return {a.h + b.h, a.e + b.e}; }
inline NumericClass operator*(const Rational& s, const NumericClass& a) { return {s * a.h, s * a.e}; }

/// Base [a, b] on the x-axis of a triangle with sides parallel to a reference triangle.
struct DegreeInterval {
  Rational a;
  Rational b;

  bool operator==(const DegreeInterval&) const = default;
  bool within(const DegreeInterval& outer) const { return outer.a <= a && b <= outer.b; }
};

inline DegreeInterval operator+(const DegreeInterval& x, const DegreeInterval& y) { return {x.a + y.a, x.b + y.b}; }

/// (0,0), (m-1+alpha, -beta), (m, m+1)
inline RationalTriangle main1_triangle(std::int64_t m, const Rational& alpha, const Rational& beta) {
  return {{0, 0}, {Rational(m - 1) + alpha, -beta}, {Rational(m), Rational(m + 1)}};
}

/// (-alpha, 0), (m-1+beta, 0), (m, m+1)
inline RationalTriangle main2_triangle(std::int64_t m, const Rational& alpha, const Rational& beta) {
  return {{-alpha, 0}, {Rational(m - 1) + beta, 0}, {Rational(m), Rational(m + 1)}};
}

/// Scale factor of the smallest homothet of `delta` containing the points.
/// With the inward edge normals n_k (unnormalised, summing to zero) the
/// homothet tΔ+s needs t*c_k + <n_k, s> <= min_P <n_k, p> for each k, and the
/// translation only moves these bounds within the plane of fixed sum.
inline Rational homothety_factor(const RationalTriangle& delta, const std::vector<LatticePoint>& pts) {
  if (pts.empty()) throw Error(ErrorCode::ZeroPolynomial, "empty support");
  Rational num_sum = 0, den_sum = 0;
  for (std::size_t k = 0; k < 3; ++k) {
    const auto& v = delta.vertex(k);
    const RationalPoint e = delta.vertex(k + 1) - v;
    const RationalPoint n{-e.y, e.x};
    Rational lo;
    bool first = true;
    for (const auto& p : pts) {
      Rational s = n.x * p.i + n.y * p.j;
      if (first || s < lo) lo = s;
      first = false;
    }
    num_sum += lo;
    den_sum += n.x * v.x + n.y * v.y;
  }
  return num_sum / den_sum;
}

template <class Field>
NumericClass class_of(const LaurentPoly<Field>& f, const RationalTriangle& delta) {
  if (f.is_zero()) throw Error(ErrorCode::ZeroPolynomial, "class of the zero polynomial");
  return {homothety_factor(delta, newton_polygon(f)), Rational(multiplicity_at_t0(f))};
}

inline Rational intersect(const NumericClass& c1, const NumericClass& c2, const RationalTriangle& delta) {
  return c1.h * c2.h * 2 * area(delta) - c1.e * c2.e;
}

template <class Field>
DegreeInterval degree_interval(const LaurentPoly<Field>& f, const RationalTriangle& delta) {
  if (f.is_zero()) throw Error(ErrorCode::ZeroPolynomial, "degree interval of the zero polynomial");
  const auto hb = horizontal_base(delta);
  bool first = true;
  DegreeInterval out;
  for (const auto& t : f.terms()) {
    Rational a = Rational(t.exponent.i) - hb.left_run * t.exponent.j;
    Rational b = Rational(t.exponent.i) - hb.right_run * t.exponent.j;
    if (first || a < out.a) out.a = a;
    if (first || b > out.b) out.b = b;
    first = false;
  }
  return out;
}

/// Length of the vertical chord through the vertex with the middle x-coordinate.
inline Rational vertical_segment_height(const RationalTriangle& delta) {
  std::array<RationalPoint, 3> v = delta.vertices();
  std::sort(v.begin(), v.end());
  if (v[0].x == v[1].x || v[1].x == v[2].x)
    throw Error(ErrorCode::WrongShape, "triangle has a vertical edge");
  const Rational t = (v[1].x - v[0].x) / (v[2].x - v[0].x);
  const Rational y_far = v[0].y + t * (v[2].y - v[0].y);
  return y_far > v[1].y ? y_far - v[1].y : v[1].y - y_far;
}

struct NegativityReport {
  NumericClass cls;
  Rational self_intersection;
  bool negative = false;
  bool zero_curve = false;  // self-intersection exactly 0
};

template <class Field>
NegativityReport is_negative_curve(const LaurentPoly<Field>& f, const RationalTriangle& delta) {
  NegativityReport r;
  r.cls = class_of(f, delta);
  r.self_intersection = intersect(r.cls, r.cls, delta);
  r.negative = r.self_intersection <= 0;
  r.zero_curve = r.self_intersection == 0;
  return r;
}

}  // namespace mds
