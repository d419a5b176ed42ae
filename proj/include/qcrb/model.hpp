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

#ifndef QCRB_MODEL_HPP
#define QCRB_MODEL_HPP

#include <array>
#include <string>
#include <vector>

#include "qcrb/linalg.hpp"

namespace qcrb {

inline CMat pauli_x() { return CMat(2, {0, 1, 1, 0}); }
inline CMat pauli_y() { return CMat(2, {0, Complex(0, -1), Complex(0, 1), 0}); }
inline CMat pauli_z() { return CMat(2, {1, 0, 0, -1}); }

// A statistical model frozen at one state: the density matrix rho together
// with n tangent directions D_i (derivative operators). All reported
// coordinates throughout the library refer to this derivative list; no
// internal reparameterization is ever applied.
struct QuantumModel {
  CMat rho;
  std::vector<CMat> derivs;
  std::vector<std::string> names;

  int dim() const { return rho.dim(); }
  int nparams() const { return static_cast<int>(derivs.size()); }
};

// SLD operators L_i for each tangent direction and their Gram matrix J
// (the quantum Fisher information matrix), J_ij = Re tr(rho (L_i L_j + L_j L_i))/2.
//
// Coordinate convention used by every consumer of this struct: a tangent
// vector x in R^n means the operator sum_i x_i D_i, and the matching dual
// element with the same coordinates is sum_i x_i L_i. Tangent norms are
// ||x||^2 = x^T J x, and covariance-like objects live on the dual side where
// the natural matrix is J^{-1}.
struct FisherData {
  std::vector<CMat> slds;
  RMat J;
};

// Nonnegative quadratic form on tangent coordinates.
struct WeightForm {
  RMat g;

  int n() const { return g.rows(); }
};

// Validates symmetry and positive semidefiniteness (within 1e-12 relative).
inline WeightForm make_weight(RMat g) {
  if (g.rows() != g.cols()) throw InvalidInputError("weight: not square");
  if (sym_defect(g) > 1e-12)
    throw InvalidInputError("weight: matrix is not symmetric within 1e-12");
  RMat s = symmetrize(g);
  SymEigenDecomp e = eig_symmetric(s);
  const double lmax = std::max(std::abs(e.eigenvalues.back()), 1.0);
  if (e.eigenvalues.front() < -1e-12 * lmax)
    throw InvalidInputError("weight: matrix is not positive semidefinite");
  return WeightForm{std::move(s)};
}

// Builds and validates a model. Never repairs: any violated invariant is
// reported as an error naming the failed condition.
//   - tr rho = 1 within 1e-10, rho PSD,
//   - tr D_i = 0 within 1e-10,
//   - every D_i supported on the support of rho within 1e-9,
//   - the D_i linearly independent (Hilbert-Schmidt Gram matrix has smallest
//     eigenvalue > 1e-10).
inline QuantumModel build_model(CMat rho, std::vector<CMat> derivs,
                                std::vector<std::string> names = {}) {
  const int d = rho.dim();
  if (d < 1) throw InvalidInputError("model: dimension must be >= 1");
  if (herm_defect(rho) > 1e-12)
    throw DegenerateModelError("model: rho is not Hermitian within 1e-12");
  if (std::abs(rho.trace() - Complex(1.0, 0.0)) > 1e-10)
    throw DegenerateModelError("model: tr rho != 1 within 1e-10");

  EigenDecomp erho = eig_hermitian(rho);
  const double smax = erho.eigenvalues.back();
  if (erho.eigenvalues.front() < -kRankTol * std::max(smax, 0.0))
    throw DegenerateModelError("model: rho is not positive semidefinite");

  const int n = static_cast<int>(derivs.size());
  if (n < 1) throw InvalidInputError("model: at least one derivative required");
  for (int i = 0; i < n; ++i) {
    const CMat& di = derivs[i];
    if (di.dim() != d) throw InvalidInputError("model: derivative dimension mismatch");
    if (herm_defect(di) > 1e-12)
      throw DegenerateModelError("model: derivative " + std::to_string(i) +
                                 " is not Hermitian within 1e-12");
    if (std::abs(di.trace()) > 1e-10)
      throw DegenerateModelError("model: derivative " + std::to_string(i) +
                                 " is not traceless within 1e-10");
    // Support condition: no weight on kernel x kernel components of rho.
    const CMat dt = erho.vectors.adjoint() * di * erho.vectors;
    const double cut = kRankTol * smax;
    const double support_tol = 1e-9 * std::max(1.0, di.fro_norm());
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k) {
        const double denom =
            std::max(erho.eigenvalues[j], 0.0) + std::max(erho.eigenvalues[k], 0.0);
        if (denom <= cut && std::abs(dt(j, k)) > support_tol)
          throw DegenerateModelError("model: derivative " + std::to_string(i) +
                                     " is not supported on the support of rho");
      }
  }

  RMat gram(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      gram(i, j) = std::real((derivs[i].adjoint() * derivs[j]).trace());
  if (min_eigenvalue(symmetrize(gram)) <= 1e-10)
    throw DegenerateModelError("model: derivatives are linearly dependent");

  if (!names.empty() && static_cast<int>(names.size()) != n)
    throw InvalidInputError("model: names length mismatch");

  return QuantumModel{hermitize(rho), std::move(derivs), std::move(names)};
}

// SLDs and Fisher matrix of a validated model.
inline FisherData fisher(const QuantumModel& m, double rank_tol = kRankTol) {
  const int n = m.nparams();
  FisherData f;
  f.slds.reserve(n);
  for (int i = 0; i < n; ++i) f.slds.push_back(solve_sld(m.rho, m.derivs[i], rank_tol));
  f.J = RMat(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) f.J(i, j) = sld_inner(m.rho, f.slds[i], f.slds[j]);
  f.J = symmetrize(f.J);
  if (min_eigenvalue(f.J) <= 1e-10)
    throw DegenerateModelError("fisher: J is not positive definite");
  return f;
}

// Full 3-parameter qubit model at rho = (I + alpha sigma_z)/2 with tangent
// directions sigma_x/2, sigma_y/2, sigma_z/2.
inline QuantumModel qubit_full(double alpha) {
  if (!(std::abs(alpha) < 1.0))
    throw InvalidInputError("qubit_full: |alpha| must be < 1");
  CMat rho = 0.5 * (CMat::identity(2) + alpha * pauli_z());
  std::vector<CMat> derivs = {0.5 * pauli_x(), 0.5 * pauli_y(), 0.5 * pauli_z()};
  return build_model(std::move(rho), std::move(derivs), {"x", "y", "z"});
}

// Orthonormal tangent frame of the qubit model under the Fisher norm:
// f_1 = sigma_x/2, f_2 = sigma_y/2, f_3 = sqrt(1-alpha^2)/2 sigma_z.
inline std::array<CMat, 3> qubit_frame(double alpha) {
  if (!(std::abs(alpha) < 1.0))
    throw InvalidInputError("qubit_frame: |alpha| must be < 1");
  return {0.5 * pauli_x(), 0.5 * pauli_y(),
          (std::sqrt(1.0 - alpha * alpha) / 2.0) * pauli_z()};
}

// Commuting baseline: diagonal state diag(p) with diagonal traceless
// derivatives. All SLDs commute, so the SLD bound is attainable.
inline QuantumModel classical_model(const RVec& p, const std::vector<RVec>& diag_derivs) {
  const int d = static_cast<int>(p.size());
  double sum = 0;
  for (double v : p) {
    if (v <= 0) throw DegenerateModelError("classical_model: probabilities must be > 0");
    sum += v;
  }
  if (std::abs(sum - 1.0) > 1e-10)
    throw DegenerateModelError("classical_model: probabilities must sum to 1");
  CMat rho(d);
  for (int i = 0; i < d; ++i) rho(i, i) = p[i];
  std::vector<CMat> derivs;
  for (const RVec& dd : diag_derivs) {
    if (static_cast<int>(dd.size()) != d)
      throw InvalidInputError("classical_model: derivative length mismatch");
    CMat m(d);
    for (int i = 0; i < d; ++i) m(i, i) = dd[i];
    derivs.push_back(std::move(m));
  }
  return build_model(std::move(rho), std::move(derivs));
}

// Restriction of a model to the span of selected tangent combinations:
// D'_j = sum_i directions(i, j) D_i with full-column-rank directions (n x m).
inline QuantumModel submodel(const QuantumModel& m, const RMat& directions) {
  const int n = m.nparams();
  const int cols = directions.cols();
  if (directions.rows() != n || cols < 1 || cols > n)
    throw InvalidInputError("submodel: directions must be n x m with 1 <= m <= n");
  SymEigenDecomp e = eig_symmetric(directions.transpose() * directions);
  if (e.eigenvalues.front() <= 1e-10 * std::max(e.eigenvalues.back(), 1.0))
    throw InvalidInputError("submodel: directions are rank-deficient");
  std::vector<CMat> derivs;
  for (int j = 0; j < cols; ++j) {
    CMat dj(m.dim());
    for (int i = 0; i < n; ++i) dj += directions(i, j) * m.derivs[i];
    derivs.push_back(std::move(dj));
  }
  return build_model(m.rho, std::move(derivs));
}

}  // namespace qcrb

#endif  // QCRB_MODEL_HPP
