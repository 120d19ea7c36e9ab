#pragma once

#include <algorithm>
#include <array>
#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "mds/error.hpp"
#include "mds/linalg.hpp"
#include "mds/number.hpp"

namespace mds {

/// Exponent vector (i, j) of the monomial x^i y^j.
struct LatticePoint {
  std::int64_t i = 0;
  std::int64_t j = 0;

  auto operator<=>(const LatticePoint&) const = default;
};

inline LatticePoint operator+(LatticePoint a, LatticePoint b) { return {a.i + b.i, a.j + b.j}; }
inline LatticePoint operator-(LatticePoint a, LatticePoint b) { return {a.i - b.i, a.j - b.j}; }
inline LatticePoint operator*(std::int64_t s, LatticePoint a) { return {s * a.i, s * a.j}; }

struct RationalPoint {
  Rational x;
  Rational y;

  RationalPoint() = default;
  RationalPoint(Rational x_, Rational y_) : x(std::move(x_)), y(std::move(y_)) {}
  RationalPoint(const LatticePoint& p) : x(p.i), y(p.j) {}  // NOLINT(google-explicit-constructor)

  bool operator==(const RationalPoint& o) const { return x == o.x && y == o.y; }
  bool operator<(const RationalPoint& o) const { return x < o.x || (x == o.x && y < o.y); }

  bool is_lattice() const { return is_integer(x) && is_integer(y); }
  LatticePoint to_lattice() const {
    if (!is_lattice()) throw Error(ErrorCode::InvalidArgument, "point is not integral");
    return {static_cast<std::int64_t>(num(x)), static_cast<std::int64_t>(num(y))};
  }
};

inline RationalPoint operator+(const RationalPoint& a, const RationalPoint& b) { return {a.x + b.x, a.y + b.y}; }
inline RationalPoint operator-(const RationalPoint& a, const RationalPoint& b) { return {a.x - b.x, a.y - b.y}; }
inline RationalPoint operator*(const Rational& s, const RationalPoint& a) { return {s * a.x, s * a.y}; }

inline Rational cross(const RationalPoint& a, const RationalPoint& b) { return a.x * b.y - a.y * b.x; }

/// Triangle with rational vertices, stored counterclockwise starting from the
/// lexicographically smallest vertex; two triangles with the same vertex set
/// therefore compare equal.
class RationalTriangle {
 public:
  RationalTriangle(RationalPoint a, RationalPoint b, RationalPoint c) {
    const Rational d = cross(b - a, c - a);
    if (d == 0) throw Error(ErrorCode::DegenerateTriangle, "vertices are collinear");
    if (d < 0) std::swap(b, c);
    v_ = {std::move(a), std::move(b), std::move(c)};
    auto first = std::min_element(v_.begin(), v_.end()) - v_.begin();
    std::rotate(v_.begin(), v_.begin() + first, v_.end());
  }

  const std::array<RationalPoint, 3>& vertices() const { return v_; }
  const RationalPoint& vertex(std::size_t k) const { return v_[k % 3]; }

  bool operator==(const RationalTriangle& o) const { return v_ == o.v_; }

 private:
  std::array<RationalPoint, 3> v_;
};

inline Rational area(const RationalTriangle& t) {
  const auto& v = t.vertices();
  return cross(v[1] - v[0], v[2] - v[0]) / 2;
}

inline RationalTriangle scaled(const RationalTriangle& t, const Rational& s) {
  if (s <= 0) throw Error(ErrorCode::InvalidArgument, "scale factor must be positive");
  const auto& v = t.vertices();
  return {s * v[0], s * v[1], s * v[2]};
}

inline RationalTriangle translated(const RationalTriangle& t, const RationalPoint& d) {
  const auto& v = t.vertices();
  return {v[0] + d, v[1] + d, v[2] + d};
}

/// Closed containment: three half-plane checks against the ccw edges.
inline bool contains(const RationalTriangle& t, const RationalPoint& p) {
  for (std::size_t k = 0; k < 3; ++k)
    if (cross(t.vertex(k + 1) - t.vertex(k), p - t.vertex(k)) < 0) return false;
  return true;
}

inline bool contains(const RationalTriangle& t, std::span<const LatticePoint> polygon) {
  return std::all_of(polygon.begin(), polygon.end(),
                     [&](const LatticePoint& q) { return contains(t, RationalPoint(q)); });
}

/// All integer points of the closed triangle, sorted lexicographically.
inline std::vector<LatticePoint> lattice_points(const RationalTriangle& t) {
  const auto& v = t.vertices();
  Rational xmin = v[0].x, xmax = v[0].x;
  for (const auto& p : v) {
    xmin = std::min(xmin, p.x);
    xmax = std::max(xmax, p.x);
  }
  std::vector<LatticePoint> out;
  for (Integer x = ceil(xmin); x <= floor(xmax); ++x) {
    bool empty = false;
    bool have_lo = false, have_hi = false;
    Rational lo, hi;
    for (std::size_t k = 0; k < 3 && !empty; ++k) {
      const auto& p = t.vertex(k);
      const RationalPoint d = t.vertex(k + 1) - p;
      // inside: d.x * (y - p.y) - d.y * (x - p.x) >= 0
      const Rational rhs = d.y * (Rational(x) - p.x);
      if (d.x == 0) {
        if (rhs > 0) empty = true;
      } else if (d.x > 0) {
        Rational b = p.y + rhs / d.x;
        if (!have_lo || b > lo) lo = b;
        have_lo = true;
      } else {
        Rational b = p.y + rhs / d.x;
        if (!have_hi || b < hi) hi = b;
        have_hi = true;
      }
    }
    if (empty || !have_lo || !have_hi) continue;
    for (Integer y = ceil(lo); y <= floor(hi); ++y)
      out.push_back({static_cast<std::int64_t>(x), static_cast<std::int64_t>(y)});
  }
  return out;
}

/// Nonzero primitive integer vector.
struct PrimitiveRay {
  Integer u1;
  Integer u2;

  PrimitiveRay(Integer a, Integer b) : u1(std::move(a)), u2(std::move(b)) {
    if (u1 == 0 && u2 == 0) throw Error(ErrorCode::InvalidArgument, "zero ray");
    if (gcd(u1, u2) != 1) throw Error(ErrorCode::InvalidArgument, "ray is not primitive");
  }

  /// Primitive generator of the ray through a nonzero rational vector.
  static PrimitiveRay through(const RationalPoint& d) {
    if (d.x == 0 && d.y == 0) throw Error(ErrorCode::InvalidArgument, "zero direction");
    const Integer l = lcm(den(d.x), den(d.y));
    Integer a = num(d.x) * (l / den(d.x));
    Integer b = num(d.y) * (l / den(d.y));
    const Integer g = gcd(a, b);
    return {a / g, b / g};
  }

  bool operator==(const PrimitiveRay& o) const { return u1 == o.u1 && u2 == o.u2; }
  bool operator<(const PrimitiveRay& o) const { return u1 < o.u1 || (u1 == o.u1 && u2 < o.u2); }
};

inline Integer det(const PrimitiveRay& a, const PrimitiveRay& b) { return a.u1 * b.u2 - a.u2 * b.u1; }

/// Outward primitive normals; ray k is normal to the edge opposite vertex k.
inline std::array<PrimitiveRay, 3> normal_fan_rays(const RationalTriangle& t) {
  auto ray = [&](std::size_t k) {
    const RationalPoint d = t.vertex(k + 2) - t.vertex(k + 1);
    return PrimitiveRay::through({d.y, -d.x});
  };
  return {ray(0), ray(1), ray(2)};
}

struct WpsWeights {
  std::array<Integer, 3> w;

  bool operator==(const WpsWeights& o) const { return w == o.w; }
};

/// The primitive positive relation a r1 + b r2 + c r3 = 0, without checking
/// that the rays generate the lattice.
inline WpsWeights primitive_relation(const std::array<PrimitiveRay, 3>& r) {
  std::array<Integer, 3> w = {det(r[1], r[2]), det(r[2], r[0]), det(r[0], r[1])};
  const bool all_pos = w[0] > 0 && w[1] > 0 && w[2] > 0;
  const bool all_neg = w[0] < 0 && w[1] < 0 && w[2] < 0;
  if (!all_pos && !all_neg) throw Error(ErrorCode::DegenerateFan, "rays do not positively span the plane");
  if (all_neg)
    for (auto& x : w) x = -x;
  const Integer g = gcd(gcd(w[0], w[1]), w[2]);
  for (auto& x : w) x /= g;
  return {w};
}

/// Weights (a,b,c) with X = P(a,b,c), in ray order. Throws NotAWps when the
/// rays do not generate Z^2 (elementary divisors of the 2x3 ray matrix).
inline WpsWeights wps_weights(const std::array<PrimitiveRay, 3>& r) {
  WpsWeights out = primitive_relation(r);
  IntMatrix m(2, 3);
  for (std::size_t k = 0; k < 3; ++k) {
    m(0, k) = r[k].u1;
    m(1, k) = r[k].u2;
  }
  const auto snf = smith_normal_form(m);
  if (snf.divisors.size() != 2 || snf.divisors[0] != 1 || snf.divisors[1] != 1)
    throw Error(ErrorCode::NotAWps, "fan rays do not generate Z^2");
  return out;
}

/// Geometry of a triangle with a horizontal base and apex above it, both
/// other edges of positive slope. Edge directions are recorded as inverse
/// slopes (run per unit rise), so the left line is x - left_run*y = const.
struct HorizontalBase {
  Rational base_y;
  Rational left_x;
  Rational right_x;
  RationalPoint apex;
  Rational left_run;
  Rational right_run;

  Rational base_length() const { return right_x - left_x; }
};

inline HorizontalBase horizontal_base(const RationalTriangle& t) {
  for (std::size_t k = 0; k < 3; ++k) {
    const auto& a = t.vertex(k + 1);
    const auto& b = t.vertex(k + 2);
    const auto& apex = t.vertex(k);
    if (a.y != b.y || apex.y <= a.y) continue;
    const auto& left = a.x < b.x ? a : b;
    const auto& right = a.x < b.x ? b : a;
    if (apex.x <= right.x)
      throw Error(ErrorCode::NonCanonicalShape, "a non-base edge does not have positive slope");
    const Rational h = apex.y - a.y;
    return {a.y, left.x, right.x, apex, (apex.x - left.x) / h, (apex.x - right.x) / h};
  }
  throw Error(ErrorCode::NonCanonicalShape, "triangle has no horizontal base below its apex");
}

/// Triangle with base [a,b] on the x-axis and left/right edges parallel to
/// those of `delta`.
inline RationalTriangle parallel_triangle(const RationalTriangle& delta, const Rational& a, const Rational& b) {
  if (a >= b) throw Error(ErrorCode::InvalidInterval, "interval [" + to_string(a) + "," + to_string(b) + "] is empty");
  const auto hb = horizontal_base(delta);
  const Rational y = (b - a) / (hb.left_run - hb.right_run);
  return {{a, 0}, {b, 0}, {a + hb.left_run * y, y}};
}

}  // namespace mds
