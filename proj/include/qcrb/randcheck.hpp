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

#ifndef QCRB_RANDCHECK_HPP
#define QCRB_RANDCHECK_HPP

#include <numeric>
#include <vector>

#include "qcrb/model.hpp"
#include "qcrb/rng.hpp"

namespace qcrb {

// Result of the randomness test: a model is "random" when X rho X is one and
// the same operator K for every unit dual direction X. By polarization this
// is equivalent to the symmetrized products over a single orthonormal basis
// matching delta_ij K, which is what gets measured here.
struct RandomnessReport {
  bool is_random = false;
  bool borderline = false;  // residual within a factor 10 of the threshold
  CMat K;                   // witness, meaningful when is_random
  double max_residual = 0;
  RMat basis_used;          // columns: the J-orthonormal tangent directions
};

// Builds a J-orthonormal tangent basis by Gram-Schmidt over the coordinate
// directions (in `order`, default 0..n-1), forms the dual operators
// X_i = sum_k (e_i)_k L_k, and compares (X_i rho X_j + X_j rho X_i)/2
// against delta_ij X_1 rho X_1.
inline RandomnessReport check_randomness(const QuantumModel& model, const FisherData& fisher,
                                         double tol = 1e-10, std::vector<int> order = {}) {
  const int n = model.nparams();
  if (order.empty()) {
    order.resize(n);
    std::iota(order.begin(), order.end(), 0);
  }
  if (static_cast<int>(order.size()) != n)
    throw InvalidInputError("check_randomness: order must list all directions");

  std::vector<RVec> basis;
  for (int idx : order) {
    if (idx < 0 || idx >= n) throw InvalidInputError("check_randomness: bad order index");
    RVec v(n, 0.0);
    v[idx] = 1.0;
    for (const RVec& b : basis) {
      const double c = quad_form(fisher.J, b, v);
      for (int k = 0; k < n; ++k) v[k] -= c * b[k];
    }
    const double nrm = std::sqrt(quad_form(fisher.J, v, v));
    if (nrm <= 1e-12)
      throw DegenerateModelError("check_randomness: tangent directions degenerate under J");
    for (double& c : v) c /= nrm;
    basis.push_back(std::move(v));
  }

  std::vector<CMat> xops;
  for (const RVec& e : basis) {
    CMat x(model.dim());
    for (int k = 0; k < n; ++k) x += e[k] * fisher.slds[k];
    xops.push_back(hermitize(x));
  }

  RandomnessReport rep;
  rep.K = hermitize(xops[0] * model.rho * xops[0]);
  rep.basis_used = RMat(n, n);
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) rep.basis_used(k, j) = basis[j][k];

  double resid = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      CMat sym = 0.5 * (xops[i] * model.rho * xops[j] + xops[j] * model.rho * xops[i]);
      if (i == j) sym -= rep.K;
      resid = std::max(resid, sym.fro_norm());
    }
  rep.max_residual = resid;
  rep.is_random = resid <= tol;
  rep.borderline = resid > 0.1 * tol && resid <= 10.0 * tol;
  return rep;
}

// Spot check of the qubit identity L_e rho L_e = 1 - rho over random unit
// tangent directions e (unit under x^T J x). Returns the largest Frobenius
// residual seen.
inline double qubit_identity_check(double alpha, int trials, uint64_t seed) {
  QuantumModel model = qubit_full(alpha);
  FisherData f = fisher(model);
  const CMat target = CMat::identity(2) - model.rho;
  Rng rng(seed);
  double worst = 0;
  for (int t = 0; t < trials; ++t) {
    RVec z = rng.normal_vec(3);
    const double nrm = std::sqrt(quad_form(f.J, z, z));
    for (double& c : z) c /= nrm;
    CMat le(2);
    for (int k = 0; k < 3; ++k) le += z[k] * f.slds[k];
    worst = std::max(worst, (hermitize(le * model.rho * le) - target).fro_norm());
  }
  return worst;
}

}  // namespace qcrb

#endif  // QCRB_RANDCHECK_HPP
