// Copyright 2026 The qcrb authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef QCRB_RMAT_HPP
#define QCRB_RMAT_HPP

#include <algorithm>
#include <cmath>
#include <initializer_list>
#include <utility>
#include <vector>

#include "qcrb/errors.hpp"

namespace qcrb {

using RVec = std::vector<double>;

// Dense real matrix, row-major, possibly rectangular.
class RMat {
 public:
  RMat() = default;
  RMat(int rows, int cols) : rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols) {}
  explicit RMat(int dim) : RMat(dim, dim) {}
  RMat(int rows, int cols, std::initializer_list<double> entries) : RMat(rows, cols) {
    if (static_cast<int>(entries.size()) != rows * cols)
      throw InvalidInputError("matrix initializer size mismatch");
    size_t i = 0;
    for (double v : entries) a_[i++] = v;
  }

  static RMat identity(int dim) {
    RMat m(dim, dim);
    for (int i = 0; i < dim; ++i) m(i, i) = 1.0;
    return m;
  }
  static RMat diag(const RVec& d) {
    RMat m(static_cast<int>(d.size()), static_cast<int>(d.size()));
    for (size_t i = 0; i < d.size(); ++i) m(static_cast<int>(i), static_cast<int>(i)) = d[i];
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  double& operator()(int r, int c) { return a_[static_cast<size_t>(r) * cols_ + c]; }
  const double& operator()(int r, int c) const { return a_[static_cast<size_t>(r) * cols_ + c]; }

  RMat& operator+=(const RMat& o) {
    for (size_t i = 0; i < a_.size(); ++i) a_[i] += o.a_[i];
    return *this;
  }
  RMat& operator-=(const RMat& o) {
    for (size_t i = 0; i < a_.size(); ++i) a_[i] -= o.a_[i];
    return *this;
  }
  RMat& operator*=(double s) {
    for (auto& v : a_) v *= s;
    return *this;
  }
  friend RMat operator+(RMat a, const RMat& b) { return a += b; }
  friend RMat operator-(RMat a, const RMat& b) { return a -= b; }
  friend RMat operator*(RMat a, double s) { return a *= s; }
  friend RMat operator*(double s, RMat a) { return a *= s; }

  friend RMat operator*(const RMat& a, const RMat& b) {
    RMat r(a.rows_, b.cols_);
    for (int i = 0; i < a.rows_; ++i)
      for (int k = 0; k < a.cols_; ++k) {
        const double aik = a(i, k);
        if (aik == 0.0) continue;
        for (int j = 0; j < b.cols_; ++j) r(i, j) += aik * b(k, j);
      }
    return r;
  }

  RMat transpose() const {
    RMat r(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
    return r;
  }

  double trace() const {
    double t = 0;
    for (int i = 0; i < rows_; ++i) t += (*this)(i, i);
    return t;
  }

  double fro_norm() const {
    double s = 0;
    for (double v : a_) s += v * v;
    return std::sqrt(s);
  }

  double max_abs() const {
    double m = 0;
    for (double v : a_) m = std::max(m, std::abs(v));
    return m;
  }

 private:
  int rows_ = 0, cols_ = 0;
  std::vector<double> a_;
};

inline RVec mat_vec(const RMat& m, const RVec& v) {
  RVec r(m.rows(), 0.0);
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) r[i] += m(i, j) * v[j];
  return r;
}

inline double dot(const RVec& a, const RVec& b) {
  double s = 0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

// x^T M y
inline double quad_form(const RMat& m, const RVec& x, const RVec& y) {
  return dot(x, mat_vec(m, y));
}

inline RMat outer(const RVec& x, const RVec& y) {
  RMat m(static_cast<int>(x.size()), static_cast<int>(y.size()));
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) m(i, j) = x[i] * y[j];
  return m;
}

inline double sym_defect(const RMat& m) {
  double d = 0;
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) d = std::max(d, std::abs(m(i, j) - m(j, i)));
  return d;
}

inline RMat symmetrize(const RMat& m) {
  RMat r(m.rows(), m.cols());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) r(i, j) = 0.5 * (m(i, j) + m(j, i));
  return r;
}

// Gaussian elimination with partial pivoting. Square systems only.
inline RVec solve_linear(RMat a, RVec b) {
  const int n = a.rows();
  if (a.cols() != n || static_cast<int>(b.size()) != n)
    throw InvalidInputError("solve_linear: shape mismatch");
  std::vector<int> perm(n);
  for (int i = 0; i < n; ++i) perm[i] = i;
  for (int col = 0; col < n; ++col) {
    int piv = col;
    for (int r = col + 1; r < n; ++r)
      if (std::abs(a(r, col)) > std::abs(a(piv, col))) piv = r;
    if (std::abs(a(piv, col)) < 1e-300)
      throw NumericalFailureError("solve_linear: singular matrix");
    if (piv != col) {
      for (int j = 0; j < n; ++j) std::swap(a(piv, j), a(col, j));
      std::swap(b[piv], b[col]);
    }
    for (int r = col + 1; r < n; ++r) {
      const double f = a(r, col) / a(col, col);
      if (f == 0.0) continue;
      for (int j = col; j < n; ++j) a(r, j) -= f * a(col, j);
      b[r] -= f * b[col];
    }
  }
  RVec x(n);
  for (int i = n - 1; i >= 0; --i) {
    double s = b[i];
    for (int j = i + 1; j < n; ++j) s -= a(i, j) * x[j];
    x[i] = s / a(i, i);
  }
  return x;
}

inline RMat inverse(const RMat& a) {
  const int n = a.rows();
  if (a.cols() != n) throw InvalidInputError("inverse: not square");
  RMat inv(n, n);
  for (int c = 0; c < n; ++c) {
    RVec e(n, 0.0);
    e[c] = 1.0;
    RVec col = solve_linear(a, e);
    for (int r = 0; r < n; ++r) inv(r, c) = col[r];
  }
  return inv;
}

}  // namespace qcrb

#endif  // QCRB_RMAT_HPP
