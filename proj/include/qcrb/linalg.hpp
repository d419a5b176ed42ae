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

#ifndef QCRB_LINALG_HPP
#define QCRB_LINALG_HPP

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "qcrb/cmat.hpp"
#include "qcrb/rmat.hpp"

namespace qcrb {

// Relative eigenvalue cutoff used whenever a support decision is needed.
inline constexpr double kRankTol = 1e-10;

// Spectral decomposition of a Hermitian matrix. Eigenvalues ascending;
// `vectors` is unitary with eigenvectors as columns. Columns are phase-fixed:
// the first component of largest modulus is real and nonnegative, and ties
// between equal eigenvalues keep the pre-sort column order, so the output is
// a deterministic function of the input.
struct EigenDecomp {
  std::vector<double> eigenvalues;
  CMat vectors;

  CVec vector(int k) const {
    CVec v(vectors.dim());
    for (int i = 0; i < vectors.dim(); ++i) v[i] = vectors(i, k);
    return v;
  }

  CMat reconstruct() const {
    const int d = vectors.dim();
    CMat r(d);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
        Complex s{};
        for (int k = 0; k < d; ++k)
          s += vectors(i, k) * eigenvalues[k] * std::conj(vectors(j, k));
        r(i, j) = s;
      }
    return r;
  }
};

namespace detail {

inline double offdiag_mass(const CMat& a) {
  double s = 0;
  for (int i = 0; i < a.dim(); ++i)
    for (int j = 0; j < a.dim(); ++j)
      if (i != j) s += std::norm(a(i, j));
  return std::sqrt(s);
}

inline void canonicalize_column(CMat& u, int col) {
  const int d = u.dim();
  int idx = 0;
  double best = -1.0;
  for (int i = 0; i < d; ++i) {
    const double m = std::abs(u(i, col));
    if (m > best) {  // strict: first index wins ties
      best = m;
      idx = i;
    }
  }
  if (best <= 0.0) return;
  const Complex phase = u(idx, col) / best;
  const Complex f = std::conj(phase);
  for (int i = 0; i < d; ++i) u(i, col) *= f;
  u(idx, col) = Complex(std::abs(u(idx, col)), 0.0);
}

}  // namespace detail

// Eigendecomposition by cyclic Jacobi rotations. Deterministic sweep order
// (no pivot search), iterated until the off-diagonal Frobenius mass falls
// below 1e-14 * ||H||_F. Throws InvalidInputError if the input is not
// Hermitian within 1e-12 (absolute, entrywise).
inline EigenDecomp eig_hermitian(const CMat& h) {
  const int d = h.dim();
  if (d < 1) throw InvalidInputError("eig_hermitian: dimension must be >= 1");
  if (herm_defect(h) > 1e-12)
    throw InvalidInputError("eig_hermitian: input is not Hermitian within 1e-12");

  CMat a = hermitize(h);
  CMat u = CMat::identity(d);
  const double target = 1e-14 * std::max(a.fro_norm(), 1e-300);

  for (int sweep = 0; sweep < 100 && detail::offdiag_mass(a) > target; ++sweep) {
    for (int p = 0; p < d - 1; ++p) {
      for (int q = p + 1; q < d; ++q) {
        const Complex apq = a(p, q);
        const double absg = std::abs(apq);
        if (absg == 0.0) continue;
        const Complex phase = apq / absg;
        const double app = std::real(a(p, p));
        const double aqq = std::real(a(q, q));
        const double tau = (aqq - app) / (2.0 * absg);
        const double t = (tau >= 0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        const Complex cp = std::conj(phase);

        // G = [[c, s], [-s*conj(phase), c*conj(phase)]] on columns (p, q).
        for (int k = 0; k < d; ++k) {
          const Complex akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp - s * cp * akq;
          a(k, q) = s * akp + c * cp * akq;
        }
        for (int k = 0; k < d; ++k) {
          const Complex apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk - s * phase * aqk;
          a(q, k) = s * apk + c * phase * aqk;
        }
        for (int k = 0; k < d; ++k) {
          const Complex ukp = u(k, p), ukq = u(k, q);
          u(k, p) = c * ukp - s * cp * ukq;
          u(k, q) = s * ukp + c * cp * ukq;
        }
        a(p, q) = a(q, p) = 0.0;
        a(p, p) = Complex(std::real(a(p, p)), 0.0);
        a(q, q) = Complex(std::real(a(q, q)), 0.0);
      }
    }
  }

  std::vector<int> order(d);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int i, int j) { return std::real(a(i, i)) < std::real(a(j, j)); });

  EigenDecomp out;
  out.eigenvalues.resize(d);
  out.vectors = CMat(d);
  for (int k = 0; k < d; ++k) {
    out.eigenvalues[k] = std::real(a(order[k], order[k]));
    for (int i = 0; i < d; ++i) out.vectors(i, k) = u(i, order[k]);
    detail::canonicalize_column(out.vectors, k);
  }
  return out;
}

// Principal square root of a positive semidefinite Hermitian matrix.
// Eigenvalues in [-1e-10 * ||H||_2, 0) are clamped to zero; anything more
// negative is rejected.
inline CMat sqrt_psd(const CMat& h) {
  EigenDecomp e = eig_hermitian(h);
  const int d = h.dim();
  double lmax = 0;
  for (double v : e.eigenvalues) lmax = std::max(lmax, std::abs(v));
  const double floor = -1e-10 * lmax;
  std::vector<double> roots(d);
  for (int k = 0; k < d; ++k) {
    if (e.eigenvalues[k] < floor)
      throw InvalidInputError("sqrt_psd: matrix is not positive semidefinite");
    roots[k] = std::sqrt(std::max(0.0, e.eigenvalues[k]));
  }
  EigenDecomp r{roots, e.vectors};
  return hermitize(r.reconstruct());
}

// Moore-Penrose pseudo-inverse of a PSD Hermitian matrix with relative
// eigenvalue cutoff rank_tol * lambda_max.
inline CMat pinv_psd(const CMat& h, double rank_tol = kRankTol) {
  EigenDecomp e = eig_hermitian(h);
  const int d = h.dim();
  double lmax = 0;
  for (double v : e.eigenvalues) lmax = std::max(lmax, v);
  std::vector<double> inv(d, 0.0);
  for (int k = 0; k < d; ++k)
    if (e.eigenvalues[k] > rank_tol * lmax) inv[k] = 1.0 / e.eigenvalues[k];
  EigenDecomp r{inv, e.vectors};
  return hermitize(r.reconstruct());
}

// Symmetric logarithmic derivative: the Hermitian L with
// (rho L + L rho) / 2 = D. Solved in the eigenbasis of rho, where
// L_jk = 2 D_jk / (s_j + s_k) on the solvable components. Components with
// s_j + s_k below the support cutoff are set to zero, which fixes one
// representative of the solution class when rho is rank-deficient.
//
// D must carry no kernel-kernel block (no weight strictly outside the
// support of rho); otherwise the tangent vector is rejected.
inline CMat solve_sld(const CMat& rho, const CMat& d_op, double rank_tol = kRankTol) {
  const int d = rho.dim();
  if (d_op.dim() != d) throw InvalidInputError("solve_sld: dimension mismatch");
  if (herm_defect(rho) > 1e-12 || herm_defect(d_op) > 1e-12)
    throw InvalidInputError("solve_sld: inputs must be Hermitian");
  if (std::abs(rho.trace() - Complex(1.0, 0.0)) > 1e-10)
    throw InvalidInputError("solve_sld: state must have unit trace");
  if (std::abs(d_op.trace()) > 1e-10)
    throw InvalidInputError("solve_sld: derivative must be traceless");

  EigenDecomp e = eig_hermitian(rho);
  const double smax = e.eigenvalues.back();
  if (e.eigenvalues.front() < -1e-10 * std::max(smax, 0.0))
    throw InvalidInputError("solve_sld: state is not positive semidefinite");

  // D in the eigenbasis of rho.
  const CMat u = e.vectors;
  const CMat dt = u.adjoint() * d_op * u;

  const double support_tol = 1e-9 * std::max(1.0, d_op.fro_norm());
  const double cut = rank_tol * smax;
  CMat lt(d);
  double kernel_weight = 0;
  for (int j = 0; j < d; ++j)
    for (int k = 0; k < d; ++k) {
      const double denom = std::max(e.eigenvalues[j], 0.0) + std::max(e.eigenvalues[k], 0.0);
      if (denom > cut)
        lt(j, k) = 2.0 * dt(j, k) / denom;
      else
        kernel_weight = std::max(kernel_weight, std::abs(dt(j, k)));
    }
  if (kernel_weight > support_tol)
    throw DegenerateModelError(
        "solve_sld: derivative is not supported on the support of the state");
  return hermitize(u * lt * u.adjoint());
}

// Symmetrized inner product Re tr(rho (XY + YX)) / 2.
inline double sld_inner(const CMat& rho, const CMat& x, const CMat& y) {
  return 0.5 * std::real((rho * (x * y + y * x)).trace());
}

// ---------------------------------------------------------------------------
// Real symmetric counterparts, implemented through the Hermitian solver.

struct SymEigenDecomp {
  RVec eigenvalues;
  RMat vectors;  // columns are eigenvectors

  RVec vector(int k) const {
    RVec v(vectors.rows());
    for (int i = 0; i < vectors.rows(); ++i) v[i] = vectors(i, k);
    return v;
  }
};

inline SymEigenDecomp eig_symmetric(const RMat& s) {
  const int n = s.rows();
  if (s.cols() != n) throw InvalidInputError("eig_symmetric: not square");
  if (sym_defect(s) > 1e-12)
    throw InvalidInputError("eig_symmetric: input is not symmetric within 1e-12");
  CMat h(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) h(i, j) = Complex(0.5 * (s(i, j) + s(j, i)), 0.0);
  EigenDecomp e = eig_hermitian(h);
  SymEigenDecomp out;
  out.eigenvalues = e.eigenvalues;
  out.vectors = RMat(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) out.vectors(i, j) = std::real(e.vectors(i, j));
  return out;
}

inline double min_eigenvalue(const RMat& s) {
  return eig_symmetric(s).eigenvalues.front();
}

inline double spectral_norm_sym(const RMat& s) {
  SymEigenDecomp e = eig_symmetric(s);
  return std::max(std::abs(e.eigenvalues.front()), std::abs(e.eigenvalues.back()));
}

namespace detail {
inline RMat apply_spectral(const SymEigenDecomp& e, const RVec& f) {
  const int n = e.vectors.rows();
  RMat r(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      double s = 0;
      for (int k = 0; k < n; ++k) s += e.vectors(i, k) * f[k] * e.vectors(j, k);
      r(i, j) = s;
    }
  return symmetrize(r);
}
}  // namespace detail

inline RMat sqrt_sym_psd(const RMat& s) {
  SymEigenDecomp e = eig_symmetric(s);
  double lmax = 0;
  for (double v : e.eigenvalues) lmax = std::max(lmax, std::abs(v));
  RVec f(e.eigenvalues.size());
  for (size_t k = 0; k < f.size(); ++k) {
    if (e.eigenvalues[k] < -1e-10 * lmax)
      throw InvalidInputError("sqrt_sym_psd: matrix is not positive semidefinite");
    f[k] = std::sqrt(std::max(0.0, e.eigenvalues[k]));
  }
  return detail::apply_spectral(e, f);
}

inline RMat inv_sym_pd(const RMat& s, const char* what = "inv_sym_pd") {
  SymEigenDecomp e = eig_symmetric(s);
  RVec f(e.eigenvalues.size());
  for (size_t k = 0; k < f.size(); ++k) {
    if (e.eigenvalues[k] <= 0)
      throw InvalidInputError(std::string(what) + ": matrix is not positive definite");
    f[k] = 1.0 / e.eigenvalues[k];
  }
  return detail::apply_spectral(e, f);
}

inline RMat inv_sqrt_sym_pd(const RMat& s, const char* what = "inv_sqrt_sym_pd") {
  SymEigenDecomp e = eig_symmetric(s);
  RVec f(e.eigenvalues.size());
  for (size_t k = 0; k < f.size(); ++k) {
    if (e.eigenvalues[k] <= 0)
      throw InvalidInputError(std::string(what) + ": matrix is not positive definite");
    f[k] = 1.0 / std::sqrt(e.eigenvalues[k]);
  }
  return detail::apply_spectral(e, f);
}

}  // namespace qcrb

#endif  // QCRB_LINALG_HPP
