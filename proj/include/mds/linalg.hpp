#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <utility>
#include <vector>

#include "mds/error.hpp"
#include "mds/field.hpp"
#include "mds/number.hpp"

namespace mds {

/// Dense row-major integer matrix.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  IntMatrix(std::initializer_list<std::initializer_list<std::int64_t>> rows) {
    rows_ = rows.size();
    cols_ = rows_ ? rows.begin()->size() : 0;
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
      if (r.size() != cols_) throw Error(ErrorCode::InvalidArgument, "ragged matrix literal");
      for (auto v : r) data_.emplace_back(v);
    }
  }

  static IntMatrix identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Integer& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Integer& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t c = 0; c < cols_; ++c) std::swap((*this)(a, c), (*this)(b, c));
  }
  void swap_cols(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t r = 0; r < rows_; ++r) std::swap((*this)(r, a), (*this)(r, b));
  }

  bool operator==(const IntMatrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> data_;
};

struct SnfResult {
  /// Diagonal of the Smith form, length min(rows, cols), d1 | d2 | ...; zeros trail.
  std::vector<Integer> divisors;
  std::size_t rank = 0;
};

/// Smith normal form by unimodular row/column operations. Pivot is the
/// nonzero entry of smallest absolute value in the active block, scanned
/// row-major.
inline SnfResult smith_normal_form(IntMatrix a) {
  const std::size_t rows = a.rows();
  const std::size_t cols = a.cols();
  const std::size_t n = std::min(rows, cols);
  SnfResult out;
  out.divisors.assign(n, Integer(0));

  auto abs_int = [](const Integer& z) { return z < 0 ? Integer(-z) : z; };

  for (std::size_t t = 0; t < n; ++t) {
    for (;;) {
      std::size_t pr = rows, pc = cols;
      Integer best;
      for (std::size_t i = t; i < rows; ++i)
        for (std::size_t j = t; j < cols; ++j) {
          if (a(i, j) == 0) continue;
          Integer v = abs_int(a(i, j));
          if (pr == rows || v < best) {
            best = v;
            pr = i;
            pc = j;
          }
        }
      if (pr == rows) break;
      a.swap_rows(t, pr);
      a.swap_cols(t, pc);
      const Integer pivot = a(t, t);

      bool clean = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (a(i, t) == 0) continue;
        Integer q = a(i, t) / pivot;
        if (q != 0)
          for (std::size_t j = t; j < cols; ++j) a(i, j) -= q * a(t, j);
        if (a(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (a(t, j) == 0) continue;
        Integer q = a(t, j) / pivot;
        if (q != 0)
          for (std::size_t i = t; i < rows; ++i) a(i, j) -= q * a(i, t);
        if (a(t, j) != 0) clean = false;
      }
      if (!clean) continue;

      // Enforce d_t | every remaining entry.
      bool divides_all = true;
      for (std::size_t i = t + 1; i < rows && divides_all; ++i)
        for (std::size_t j = t + 1; j < cols; ++j)
          if (a(i, j) % pivot != 0) {
            for (std::size_t k = t; k < cols; ++k) a(t, k) += a(i, k);
            divides_all = false;
            break;
          }
      if (divides_all) break;
    }
    if (a(t, t) == 0) break;
    out.divisors[t] = abs_int(a(t, t));
    ++out.rank;
  }
  return out;
}

/// True iff p divides no nonzero elementary divisor of m; then the kernel of
/// m has the same dimension over F_p as over Q.
inline bool good_prime(const IntMatrix& m, std::uint64_t p) {
  const auto snf = smith_normal_form(m);
  for (const auto& d : snf.divisors)
    if (d != 0 && d % p == 0) return false;
  return true;
}

template <class Field>
struct KernelBasis {
  using value_type = typename Field::value_type;

  Field field;
  std::size_t cols = 0;
  std::vector<std::size_t> pivot_columns;
  std::vector<std::size_t> free_columns;
  /// One vector per free column c: 1 at c, 0 at the other free columns.
  std::vector<std::vector<value_type>> vectors;

  std::size_t dimension() const { return vectors.size(); }
  std::size_t rank() const { return pivot_columns.size(); }
};

/// Reduced row echelon form of m over `field`, in place on a field-valued copy.
template <class Field>
std::vector<std::vector<typename Field::value_type>> reduced_row_echelon(
    const IntMatrix& m, const Field& field, std::vector<std::size_t>* pivots = nullptr) {
  using V = typename Field::value_type;
  std::vector<std::vector<V>> a(m.rows(), std::vector<V>(m.cols(), field.zero()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) a[i][j] = field.from_integer(m(i, j));

  std::vector<std::size_t> piv;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    std::size_t sel = row;
    while (sel < m.rows() && field.is_zero(a[sel][col])) ++sel;
    if (sel == m.rows()) continue;
    std::swap(a[row], a[sel]);
    const V inv = field.inv(a[row][col]);
    for (std::size_t j = col; j < m.cols(); ++j) a[row][j] = field.mul(a[row][j], inv);
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == row || field.is_zero(a[i][col])) continue;
      const V factor = a[i][col];
      for (std::size_t j = col; j < m.cols(); ++j)
        if (!field.is_zero(a[row][j])) a[i][j] = field.sub(a[i][j], field.mul(factor, a[row][j]));
    }
    piv.push_back(col);
    ++row;
  }
  a.resize(row);
  if (pivots) *pivots = std::move(piv);
  return a;
}

/// Kernel of m viewed as a linear map field^cols -> field^rows, as the
/// canonical basis read off the reduced row echelon form.
template <class Field>
KernelBasis<Field> kernel(const IntMatrix& m, const Field& field) {
  KernelBasis<Field> out{field, m.cols(), {}, {}, {}};
  const auto r = reduced_row_echelon(m, field, &out.pivot_columns);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : out.pivot_columns) is_pivot[c] = true;
  for (std::size_t c = 0; c < m.cols(); ++c)
    if (!is_pivot[c]) out.free_columns.push_back(c);

  for (auto fc : out.free_columns) {
    std::vector<typename Field::value_type> v(m.cols(), field.zero());
    v[fc] = field.one();
    for (std::size_t k = 0; k < out.pivot_columns.size(); ++k) v[out.pivot_columns[k]] = field.neg(r[k][fc]);
    out.vectors.push_back(std::move(v));
  }
  return out;
}

template <class Field>
std::size_t rank(const IntMatrix& m, const Field& field) {
  std::vector<std::size_t> piv;
  reduced_row_echelon(m, field, &piv);
  return piv.size();
}

}  // namespace mds
