#pragma once

#include "csrigid/rational.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace csrigid {

/// Dense matrix of exact rationals, row-major.
class QMatrix {
 public:
  QMatrix() : rows_(0), cols_(0) {}
  QMatrix(int rows, int cols)
      : rows_(rows), cols_(cols), a_(static_cast<std::size_t>(rows) * cols) {
    if (rows < 0 || cols < 0) throw std::invalid_argument("negative matrix shape");
  }

  static QMatrix from_rows(const std::vector<std::vector<Rational>>& rows) {
    int m = static_cast<int>(rows.size());
    int n = m == 0 ? 0 : static_cast<int>(rows[0].size());
    QMatrix out(m, n);
    for (int i = 0; i < m; ++i) {
      if (static_cast<int>(rows[i].size()) != n)
        throw std::invalid_argument("ragged rows in matrix literal");
      for (int j = 0; j < n; ++j) out(i, j) = rows[i][j];
    }
    return out;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  Rational& operator()(int i, int j) { return a_[static_cast<std::size_t>(i) * cols_ + j]; }
  const Rational& operator()(int i, int j) const {
    return a_[static_cast<std::size_t>(i) * cols_ + j];
  }

  QMatrix transposed() const {
    QMatrix t(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

 private:
  int rows_, cols_;
  std::vector<Rational> a_;
};

namespace detail {

// Bit-size of a rational; pivot heuristic for elimination (small entries first).
inline std::size_t entry_complexity(const Rational& q) {
  using boost::multiprecision::msb;
  Integer n = abs(numerator(q));
  Integer d = denominator(q);
  std::size_t bits = 0;
  if (n > 1) bits += msb(n);
  if (d > 1) bits += msb(d);
  return bits;
}

}  // namespace detail

/// Exact rank via fraction-free (Bareiss) elimination on a denominator-cleared copy.
inline int rank(const QMatrix& q) {
  int m = q.rows(), n = q.cols();
  if (m == 0 || n == 0) return 0;
  std::vector<std::vector<Integer>> a(m, std::vector<Integer>(n));
  for (int i = 0; i < m; ++i) {
    Integer lcm = 1;
    for (int j = 0; j < n; ++j) {
      const Integer& d = denominator(q(i, j));
      lcm = boost::multiprecision::lcm(lcm, d);
    }
    for (int j = 0; j < n; ++j) {
      const Rational& x = q(i, j);
      a[i][j] = numerator(x) * (lcm / denominator(x));
    }
  }

  Integer prev = 1;
  int r = 0;
  for (int c = 0; c < n && r < m; ++c) {
    int piv = -1;
    for (int i = r; i < m; ++i) {
      if (a[i][c] == 0) continue;
      if (piv == -1 || abs(a[i][c]) < abs(a[piv][c])) piv = i;
    }
    if (piv == -1) continue;
    std::swap(a[r], a[piv]);
    for (int i = r + 1; i < m; ++i) {
      for (int j = c + 1; j < n; ++j)
        a[i][j] = (a[r][c] * a[i][j] - a[i][c] * a[r][j]) / prev;  // exact division
      a[i][c] = 0;
    }
    prev = a[r][c];
    ++r;
  }
  return r;
}

struct Rref {
  QMatrix mat;
  std::vector<int> pivot_cols;
  int rank() const { return static_cast<int>(pivot_cols.size()); }
};

/// Reduced row echelon form over the rationals (Gauss-Jordan). Pivot choice:
/// smallest bit-complexity entry in the column, lowest row on ties, so the
/// result is deterministic across platforms.
inline Rref rref(QMatrix a) {
  int m = a.rows(), n = a.cols();
  Rref out;
  int r = 0;
  for (int c = 0; c < n && r < m; ++c) {
    int piv = -1;
    std::size_t best = 0;
    for (int i = r; i < m; ++i) {
      if (a(i, c) == 0) continue;
      std::size_t cost = detail::entry_complexity(a(i, c));
      if (piv == -1 || cost < best) {
        piv = i;
        best = cost;
      }
    }
    if (piv == -1) continue;
    if (piv != r)
      for (int j = 0; j < n; ++j) std::swap(a(r, j), a(piv, j));
    Rational inv = a(r, c);
    for (int j = c; j < n; ++j) a(r, j) /= inv;
    for (int i = 0; i < m; ++i) {
      if (i == r || a(i, c) == 0) continue;
      Rational f = a(i, c);
      for (int j = c; j < n; ++j) a(i, j) -= f * a(r, j);
    }
    out.pivot_cols.push_back(c);
    ++r;
  }
  out.mat = std::move(a);
  return out;
}

/// Basis of the right null space { x : Ax = 0 }, one vector per free column,
/// in ascending free-column order (canonical).
inline std::vector<std::vector<Rational>> kernel_basis(const QMatrix& a) {
  int n = a.cols();
  Rref r = rref(a);
  std::vector<bool> is_pivot(n, false);
  for (int c : r.pivot_cols) is_pivot[c] = true;
  std::vector<std::vector<Rational>> basis;
  for (int f = 0; f < n; ++f) {
    if (is_pivot[f]) continue;
    std::vector<Rational> x(n, Rational(0));
    x[f] = 1;
    for (int i = 0; i < r.rank(); ++i) x[r.pivot_cols[i]] = -r.mat(i, f);
    basis.push_back(std::move(x));
  }
  return basis;
}

/// Floating-point rank with a relative threshold. Cross-check only; verdicts
/// always come from the exact paths above.
inline int rank_float(const QMatrix& q, double rel_tol = 1e-9) {
  int m = q.rows(), n = q.cols();
  std::vector<std::vector<double>> a(m, std::vector<double>(n));
  double maxabs = 0;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < n; ++j) {
      a[i][j] = static_cast<double>(q(i, j));
      maxabs = std::max(maxabs, std::fabs(a[i][j]));
    }
  if (maxabs == 0) return 0;
  double tol = maxabs * rel_tol;
  int r = 0;
  for (int c = 0; c < n && r < m; ++c) {
    int piv = -1;
    for (int i = r; i < m; ++i)
      if (std::fabs(a[i][c]) > tol && (piv == -1 || std::fabs(a[i][c]) > std::fabs(a[piv][c])))
        piv = i;
    if (piv == -1) continue;
    std::swap(a[r], a[piv]);
    for (int i = r + 1; i < m; ++i) {
      double f = a[i][c] / a[r][c];
      for (int j = c; j < n; ++j) a[i][j] -= f * a[r][j];
    }
    ++r;
  }
  return r;
}

}  // namespace csrigid
