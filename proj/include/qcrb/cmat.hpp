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

#ifndef QCRB_CMAT_HPP
#define QCRB_CMAT_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <initializer_list>
#include <vector>

#include "qcrb/errors.hpp"

namespace qcrb {

using Complex = std::complex<double>;
using CVec = std::vector<Complex>;

// Dense square complex matrix, row-major. The working size in this library is
// tiny (dimensions up to ~16), so everything is plain O(d^3) arithmetic.
class CMat {
 public:
  CMat() = default;
  explicit CMat(int dim) : dim_(dim), a_(static_cast<size_t>(dim) * dim) {}
  CMat(int dim, std::initializer_list<Complex> entries) : CMat(dim) {
    if (static_cast<int>(entries.size()) != dim * dim)
      throw InvalidInputError("matrix initializer size mismatch");
    size_t i = 0;
    for (const auto& v : entries) a_[i++] = v;
  }

  static CMat identity(int dim) {
    CMat m(dim);
    for (int i = 0; i < dim; ++i) m(i, i) = 1.0;
    return m;
  }

  int dim() const { return dim_; }
  Complex& operator()(int r, int c) { return a_[static_cast<size_t>(r) * dim_ + c]; }
  const Complex& operator()(int r, int c) const { return a_[static_cast<size_t>(r) * dim_ + c]; }

  CMat& operator+=(const CMat& o) {
    for (size_t i = 0; i < a_.size(); ++i) a_[i] += o.a_[i];
    return *this;
  }
  CMat& operator-=(const CMat& o) {
    for (size_t i = 0; i < a_.size(); ++i) a_[i] -= o.a_[i];
    return *this;
  }
  CMat& operator*=(Complex s) {
    for (auto& v : a_) v *= s;
    return *this;
  }
  friend CMat operator+(CMat a, const CMat& b) { return a += b; }
  friend CMat operator-(CMat a, const CMat& b) { return a -= b; }
  friend CMat operator*(CMat a, Complex s) { return a *= s; }
  friend CMat operator*(Complex s, CMat a) { return a *= s; }
  friend CMat operator*(CMat a, double s) { return a *= Complex(s, 0.0); }
  friend CMat operator*(double s, CMat a) { return a *= Complex(s, 0.0); }

  friend CMat operator*(const CMat& a, const CMat& b) {
    const int d = a.dim_;
    CMat r(d);
    for (int i = 0; i < d; ++i)
      for (int k = 0; k < d; ++k) {
        const Complex aik = a(i, k);
        if (aik == Complex{}) continue;
        for (int j = 0; j < d; ++j) r(i, j) += aik * b(k, j);
      }
    return r;
  }

  CMat adjoint() const {
    CMat r(dim_);
    for (int i = 0; i < dim_; ++i)
      for (int j = 0; j < dim_; ++j) r(i, j) = std::conj((*this)(j, i));
    return r;
  }

  Complex trace() const {
    Complex t{};
    for (int i = 0; i < dim_; ++i) t += (*this)(i, i);
    return t;
  }

  double fro_norm() const {
    double s = 0;
    for (const auto& v : a_) s += std::norm(v);
    return std::sqrt(s);
  }

  double max_abs() const {
    double m = 0;
    for (const auto& v : a_) m = std::max(m, std::abs(v));
    return m;
  }

 private:
  int dim_ = 0;
  std::vector<Complex> a_;
};

inline double herm_defect(const CMat& m) {
  double d = 0;
  for (int i = 0; i < m.dim(); ++i)
    for (int j = 0; j < m.dim(); ++j)
      d = std::max(d, std::abs(m(i, j) - std::conj(m(j, i))));
  return d;
}

inline bool is_hermitian(const CMat& m, double tol = 1e-12) {
  return herm_defect(m) <= tol;
}

inline CMat hermitize(const CMat& m) {
  CMat r(m.dim());
  for (int i = 0; i < m.dim(); ++i)
    for (int j = 0; j < m.dim(); ++j)
      r(i, j) = 0.5 * (m(i, j) + std::conj(m(j, i)));
  return r;
}

inline CVec mat_vec(const CMat& m, const CVec& v) {
  CVec r(m.dim());
  for (int i = 0; i < m.dim(); ++i) {
    Complex s{};
    for (int j = 0; j < m.dim(); ++j) s += m(i, j) * v[j];
    r[i] = s;
  }
  return r;
}

// <u|v>, conjugate-linear in the first argument.
inline Complex vdot(const CVec& u, const CVec& v) {
  Complex s{};
  for (size_t i = 0; i < u.size(); ++i) s += std::conj(u[i]) * v[i];
  return s;
}

inline double vnorm(const CVec& v) { return std::sqrt(std::real(vdot(v, v))); }

inline CVec normalized(CVec v) {
  const double n = vnorm(v);
  if (n > 0)
    for (auto& c : v) c /= n;
  return v;
}

// |psi><psi|
inline CMat outer(const CVec& psi) {
  CMat m(static_cast<int>(psi.size()));
  for (int i = 0; i < m.dim(); ++i)
    for (int j = 0; j < m.dim(); ++j) m(i, j) = psi[i] * std::conj(psi[j]);
  return m;
}

// <psi|M|psi>; result of a Hermitian M is real up to rounding.
inline Complex expect(const CMat& m, const CVec& psi) {
  return vdot(psi, mat_vec(m, psi));
}

}  // namespace qcrb

#endif  // QCRB_CMAT_HPP
