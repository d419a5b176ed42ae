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

#ifndef QCRB_SIM_HPP
#define QCRB_SIM_HPP

#include <vector>

#include "qcrb/duallp.hpp"
#include "qcrb/randbound.hpp"
#include "qcrb/rng.hpp"

namespace qcrb {

// Mean estimate vector of a plan on the operator tau:
// sum_i prob_i scale_i e_i tr(L_i tau), evaluated through the observables'
// spectral data. Linear in tau; equals 0 at tau = rho and the i-th coordinate
// basis vector at tau = D_i.
inline RVec exact_expectation(const RandomMeasurementPlan& plan, const CMat& tau) {
  const int n = plan.nparams();
  RVec out(n, 0.0);
  for (const PlanBranch& b : plan.branches) {
    double tr = 0;
    for (int k = 0; k < tau.dim(); ++k)
      tr += b.spectral.eigenvalues[k] * std::real(expect(tau, b.spectral.vector(k)));
    const double w = b.prob * b.estimator_scale * tr;
    for (int k = 0; k < n; ++k) out[k] += w * b.direction[k];
  }
  return out;
}

// Second-moment matrix sum_i prob_i scale_i^2 tr(rho L_i^2) e_i e_i^T.
// The plan is mean zero at rho, so this is its covariance; it reproduces
// plan_covariance (the algebraic prediction W^{-1} J^{-1}).
inline RMat exact_covariance(const RandomMeasurementPlan& plan, const CMat& rho) {
  const int n = plan.nparams();
  RMat v(n, n);
  for (const PlanBranch& b : plan.branches) {
    double second = 0;
    for (int k = 0; k < rho.dim(); ++k)
      second += b.spectral.eigenvalues[k] * b.spectral.eigenvalues[k] *
                std::real(expect(rho, b.spectral.vector(k)));
    v += (b.prob * b.estimator_scale * b.estimator_scale * second) *
         outer(b.direction, b.direction);
  }
  return symmetrize(v);
}

// Weighted variance sum over branch outcomes: g(x, x) weighted by outcome
// probability. Equals tr(g V) with V the exact covariance.
inline double deviation(const RandomMeasurementPlan& plan, const RMat& g, const CMat& rho) {
  double dev = 0;
  for (const PlanBranch& b : plan.branches) {
    double second = 0;
    for (int k = 0; k < rho.dim(); ++k)
      second += b.spectral.eigenvalues[k] * b.spectral.eigenvalues[k] *
                std::real(expect(rho, b.spectral.vector(k)));
    dev += b.prob * b.estimator_scale * b.estimator_scale * second *
           quad_form(g, b.direction, b.direction);
  }
  return dev;
}

// Same functional for a recovered diagnostic measurement.
inline double deviation(const Recovery& rec, const RMat& g) {
  double dev = 0;
  for (const RecoveryElement& e : rec.elements)
    dev += e.weight * quad_form(g, e.x, e.x) * e.state_weight;
  return dev;
}

// Largest defect of the unbiasedness functional over the n^2 coordinate
// endomorphisms: sum over outcomes of <psi|a(x)|psi> must reproduce tr a.
inline double unbiasedness_residual(const RandomMeasurementPlan& plan,
                                    const QuantumModel& model) {
  const int n = plan.nparams();
  RMat response(n, n);
  for (const PlanBranch& b : plan.branches) {
    // sum_lambda lambda <phi|D_k|phi> = tr(D_k L_i)
    RVec dl(n, 0.0);
    for (int k = 0; k < n; ++k)
      for (int m = 0; m < model.dim(); ++m)
        dl[k] += b.spectral.eigenvalues[m] *
                 std::real(expect(model.derivs[k], b.spectral.vector(m)));
    for (int k = 0; k < n; ++k)
      for (int l = 0; l < n; ++l)
        response(k, l) += b.prob * b.estimator_scale * b.direction[l] * dl[k];
  }
  double resid = 0;
  for (int k = 0; k < n; ++k)
    for (int l = 0; l < n; ++l)
      resid = std::max(resid, std::abs(response(k, l) - (k == l ? 1.0 : 0.0)));
  return resid;
}

struct SampleStats {
  RVec mean;
  RMat cov;      // sample covariance (mean subtracted)
  RMat std_err;  // per-entry standard error of the second moments
  long long n = 0;
};

namespace detail {

struct BranchLaw {
  RVec values;  // distinct eigenvalues (eigenspace-grouped)
  RVec probs;   // cumulative probabilities
};

inline BranchLaw branch_law(const PlanBranch& b, const CMat& rho) {
  // Group spectral weights by eigenspace first so that degenerate
  // eigenvectors cannot influence the sampled law.
  BranchLaw law;
  const int d = rho.dim();
  const double group_tol =
      1e-9 * std::max({1.0, std::abs(b.spectral.eigenvalues.front()),
                       std::abs(b.spectral.eigenvalues.back())});
  RVec weights;
  for (int k = 0; k < d; ++k) {
    const double lam = b.spectral.eigenvalues[k];
    const double w = std::real(expect(rho, b.spectral.vector(k)));
    if (!law.values.empty() && std::abs(lam - law.values.back()) <= group_tol) {
      weights.back() += w;
    } else {
      law.values.push_back(lam);
      weights.push_back(w);
    }
  }
  double total = 0;
  for (double& w : weights) {
    if (w < -1e-12 || w > 1.0 + 1e-12)
      throw NumericalFailureError("sample: spectral weight outside [0, 1]");
    w = std::max(w, 0.0);
    total += w;
  }
  double cum = 0;
  law.probs.resize(weights.size());
  for (size_t i = 0; i < weights.size(); ++i) {
    cum += weights[i] / total;
    law.probs[i] = cum;
  }
  law.probs.back() = 1.0;
  return law;
}

}  // namespace detail

// Monte Carlo realization of a plan on the state rho. Sampling is split into
// fixed-size blocks with one derived random stream per block, so the result
// depends only on (seed, N), never on how blocks are scheduled.
inline SampleStats sample(const RandomMeasurementPlan& plan, const CMat& rho, long long n,
                          uint64_t seed) {
  if (n < 1) throw InvalidInputError("sample: N must be >= 1");
  const int np = plan.nparams();
  const int nb = static_cast<int>(plan.branches.size());

  RVec branch_cum(nb);
  double cum = 0;
  for (int i = 0; i < nb; ++i) {
    const double p = plan.branches[i].prob;
    if (p < -1e-12 || p > 1.0 + 1e-12)
      throw NumericalFailureError("sample: branch probability outside [0, 1]");
    cum += std::max(p, 0.0);
    branch_cum[i] = cum;
  }
  if (std::abs(cum - 1.0) > 1e-9)
    throw NumericalFailureError("sample: branch probabilities do not sum to 1");
  for (double& c : branch_cum) c /= cum;
  branch_cum[nb - 1] = 1.0;

  std::vector<detail::BranchLaw> laws;
  laws.reserve(nb);
  for (const PlanBranch& b : plan.branches) laws.push_back(detail::branch_law(b, rho));

  constexpr long long kBlock = 8192;
  const long long blocks = (n + kBlock - 1) / kBlock;

  RVec m1(np, 0.0);
  RMat m2(np, np), m4(np, np);
  for (long long blk = 0; blk < blocks; ++blk) {
    Rng rng(seed, static_cast<uint64_t>(blk));
    const long long count = std::min(kBlock, n - blk * kBlock);
    for (long long t = 0; t < count; ++t) {
      const double ub = rng.uniform();
      int bi = 0;
      while (bi < nb - 1 && ub > branch_cum[bi]) ++bi;
      const detail::BranchLaw& law = laws[bi];
      const double uv = rng.uniform();
      size_t vi = 0;
      while (vi + 1 < law.probs.size() && uv > law.probs[vi]) ++vi;
      const double out = law.values[vi] * plan.branches[bi].estimator_scale;
      const RVec& e = plan.branches[bi].direction;
      for (int i = 0; i < np; ++i) {
        m1[i] += out * e[i];
        for (int j = 0; j < np; ++j) {
          const double prod = out * e[i] * out * e[j];
          m2(i, j) += prod;
          m4(i, j) += prod * prod;
        }
      }
    }
  }

  SampleStats stats;
  stats.n = n;
  stats.mean.resize(np);
  for (int i = 0; i < np; ++i) stats.mean[i] = m1[i] / static_cast<double>(n);
  stats.cov = RMat(np, np);
  stats.std_err = RMat(np, np);
  for (int i = 0; i < np; ++i)
    for (int j = 0; j < np; ++j) {
      const double second = m2(i, j) / static_cast<double>(n);
      stats.cov(i, j) = second - stats.mean[i] * stats.mean[j];
      const double var2 = std::max(0.0, m4(i, j) / static_cast<double>(n) - second * second);
      stats.std_err(i, j) = std::sqrt(var2 / static_cast<double>(n));
    }
  return stats;
}

}  // namespace qcrb

#endif  // QCRB_SIM_HPP
