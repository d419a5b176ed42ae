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

#ifndef QCRB_RANDBOUND_HPP
#define QCRB_RANDBOUND_HPP

#include <string>
#include <utility>
#include <vector>

#include "qcrb/model.hpp"

namespace qcrb {

namespace detail {

// Spectral data of K = J^{-1/2} g J^{-1/2} plus the square roots of J.
struct WeightedSpectrum {
  RMat j_sqrt;
  RMat j_inv_sqrt;
  SymEigenDecomp k;  // eigenvalues ascending, clamped at zero
};

inline WeightedSpectrum weighted_spectrum(const RMat& j, const RMat& g) {
  if (j.rows() != j.cols() || g.rows() != g.cols() || j.rows() != g.rows())
    throw InvalidInputError("weighted spectrum: shape mismatch");
  if (sym_defect(j) > 1e-12 || sym_defect(g) > 1e-12)
    throw InvalidInputError("weighted spectrum: J and g must be symmetric");
  WeightedSpectrum w;
  w.j_sqrt = sqrt_sym_psd(j);
  w.j_inv_sqrt = inv_sqrt_sym_pd(j, "random_bound: J");
  w.k = eig_symmetric(w.j_inv_sqrt * symmetrize(g) * w.j_inv_sqrt);
  const double lmax = std::max(w.k.eigenvalues.back(), 0.0);
  for (double& v : w.k.eigenvalues) {
    if (v < -1e-10 * std::max(lmax, 1.0))
      throw InvalidInputError("random_bound: g is not positive semidefinite");
    v = std::max(v, 0.0);
  }
  return w;
}

}  // namespace detail

// Optimal weighted variance over locally unbiased random measurements:
// (sum_i sqrt(lambda_i))^2 with lambda_i the eigenvalues of J^{-1} g.
// Requires J positive definite; g may be singular.
inline double random_bound(const RMat& j, const RMat& g) {
  detail::WeightedSpectrum w = detail::weighted_spectrum(j, g);
  double s = 0;
  for (double v : w.k.eigenvalues) s += std::sqrt(v);
  return s * s;
}

// The trace-one optimizer W = sqrt(J^{-1} g) / tr sqrt(J^{-1} g). It is
// J-self-adjoint (J W = W^T J), has positive spectrum, and satisfies
// W^T J W = g / (tr sqrt(J^{-1} g))^2.
inline RMat optimal_W(const RMat& j, const RMat& g) {
  detail::WeightedSpectrum w = detail::weighted_spectrum(j, g);
  double c = 0;
  RVec roots(w.k.eigenvalues.size());
  for (size_t i = 0; i < roots.size(); ++i) {
    roots[i] = std::sqrt(w.k.eigenvalues[i]);
    c += roots[i];
  }
  if (w.k.eigenvalues.front() <= 1e-12 * std::max(w.k.eigenvalues.back(), 1.0))
    throw DegenerateModelError("optimal_W: weight is singular");
  for (double& r : roots) r /= c;
  return w.j_inv_sqrt * detail::apply_spectral(w.k, roots) * w.j_sqrt;
}

// One branch of a randomized projective strategy: with probability `prob`
// measure `observable` and report outcome_value * estimator_scale * direction.
struct PlanBranch {
  double prob = 0;
  RVec direction;          // unit under x^T J x
  double estimator_scale = 0;
  CMat observable;         // sum_k direction_k L_k
  EigenDecomp spectral;
};

struct RandomMeasurementPlan {
  std::vector<PlanBranch> branches;
  RMat W;
  RMat J;

  int nparams() const { return J.rows(); }
};

// The optimal randomized strategy for weight g: branch probabilities and
// directions come from the spectral decomposition of sqrt(J^{1/2} g J^{1/2})
// normalized to unit trace; branch i measures the dual operator of its
// direction and rescales the outcome by the inverse branch probability.
// Requires strictly positive branch weights, hence g positive definite.
inline RandomMeasurementPlan build_plan(const QuantumModel& model, const FisherData& fisher,
                                        const WeightForm& weight) {
  const int n = model.nparams();
  if (fisher.J.rows() != n || weight.g.rows() != n)
    throw InvalidInputError("build_plan: shape mismatch");

  // Eigenvectors of sqrt(J^{1/2} g J^{1/2}) coincide with those of K.
  detail::WeightedSpectrum w = detail::weighted_spectrum(fisher.J, weight.g);
  double c = 0;
  for (double v : w.k.eigenvalues) c += std::sqrt(v);

  RandomMeasurementPlan plan;
  plan.J = fisher.J;
  plan.W = RMat(n, n);
  for (int i = 0; i < n; ++i) {
    const double wi = std::sqrt(w.k.eigenvalues[i]) / c;
    if (wi <= 1e-12)
      throw DegenerateModelError("build_plan: weight is singular along a direction");
    RVec e = mat_vec(w.j_inv_sqrt, w.k.vector(i));
    const double jn = std::sqrt(quad_form(fisher.J, e, e));
    for (double& v : e) v /= jn;

    PlanBranch b;
    b.prob = wi;
    b.direction = e;
    b.estimator_scale = 1.0 / wi;
    b.observable = CMat(model.dim());
    for (int k = 0; k < n; ++k) b.observable += e[k] * fisher.slds[k];
    b.observable = hermitize(b.observable);
    b.spectral = eig_hermitian(b.observable);
    plan.branches.push_back(std::move(b));

    plan.W += wi * outer(plan.branches.back().direction,
                         mat_vec(fisher.J, plan.branches.back().direction));
  }
  return plan;
}

// Predicted covariance sum_i W_i^{-1} e_i e_i^T, which equals W^{-1} J^{-1}.
inline RMat plan_covariance(const RandomMeasurementPlan& plan) {
  const int n = plan.nparams();
  RMat v(n, n);
  for (const PlanBranch& b : plan.branches)
    v += b.estimator_scale * outer(b.direction, b.direction);
  return symmetrize(v);
}

// Membership of a covariance matrix in the attainable random-measurement
// frontier { W^{-1} J^{-1} | tr W = 1 }. The witness W = (V J)^{-1} is
// returned whether or not the test passes.
struct LimitWitness {
  bool member = false;
  RMat W;
};

inline LimitWitness limit_membership(const RMat& v, const RMat& j, double tol = 1e-8) {
  if (v.rows() != v.cols() || j.rows() != j.cols() || v.rows() != j.rows())
    throw InvalidInputError("limit_membership: shape mismatch");
  RMat w;
  try {
    w = inverse(v * j);
  } catch (const NumericalFailureError&) {
    throw InvalidInputError("limit_membership: V J is singular");
  }
  LimitWitness out;
  out.W = w;
  const RMat jw = j * w;
  const double scale = std::max(1.0, jw.max_abs());
  const bool self_adjoint = sym_defect(jw) <= tol * scale;
  bool positive = false;
  if (self_adjoint) {
    // J W = W^T J makes J^{1/2} W J^{-1/2} symmetric; its spectrum is W's.
    const RMat js = sqrt_sym_psd(j);
    const RMat jis = inv_sqrt_sym_pd(j, "limit_membership: J");
    positive = min_eigenvalue(symmetrize(js * w * jis)) > 0.0;
  }
  out.member = self_adjoint && positive && std::abs(w.trace() - 1.0) <= tol;
  return out;
}

// Two-parameter form of the same frontier: V = J^{-1} + X J^{-1} with
// det X = 1. Witness X = (V - J^{-1}) J.
struct LimitWitness2 {
  bool member = false;
  RMat X;
};

inline LimitWitness2 limit_membership_2param(const RMat& v, const RMat& j, double tol = 1e-8) {
  if (v.rows() != 2 || v.cols() != 2 || j.rows() != 2 || j.cols() != 2)
    throw InvalidInputError("limit_membership_2param: defined for n = 2 only");
  const RMat x = (v - inv_sym_pd(j, "limit_membership_2param: J")) * j;
  LimitWitness2 out;
  out.X = x;
  const double det = x(0, 0) * x(1, 1) - x(0, 1) * x(1, 0);
  out.member = std::abs(det - 1.0) <= tol;
  return out;
}

struct BoundReport {
  double bound = 0;
  RMat W;
  RMat V;
  std::string method;
};

inline BoundReport random_bound_report(const FisherData& fisher, const WeightForm& weight) {
  BoundReport r;
  r.bound = random_bound(fisher.J, weight.g);
  r.W = optimal_W(fisher.J, weight.g);
  r.V = symmetrize(inverse(r.W * fisher.J));
  r.method = "random";
  return r;
}

}  // namespace qcrb

#endif  // QCRB_RANDBOUND_HPP
