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

#ifndef QCRB_DUALLP_HPP
#define QCRB_DUALLP_HPP

#include <utility>
#include <vector>

#include "qcrb/lp.hpp"
#include "qcrb/model.hpp"
#include "qcrb/parallel.hpp"
#include "qcrb/randbound.hpp"
#include "qcrb/rng.hpp"

namespace qcrb {

// The dual of the weighted-variance minimization over locally unbiased
// measurements: maximize
//     spur(a, S) = tr a + tr S
// over endomorphisms a of tangent coordinates and Hermitian S, subject to
//     R(a, S; x) = g(x, x) rho - S - sum_k (a x)_k D_k  >=  0
// for every tangent vector x. Any feasible pair certifies spur(a, S) as a
// lower bound on the weighted variance of every locally unbiased measurement
// (weak duality), whatever the state of the solver that produced it.

struct DualCertificate {
  RMat a;
  CMat S;
  double spur = 0;
  double feasibility_margin = 0;  // most negative constraint value found
  bool valid = false;             // margin >= -eps_feas
};

// One linear relaxation of the semidefinite constraint: <psi|R(a,S;x)|psi> >= 0
// at a fixed tangent vector x and unit vector psi. The cached scalars make the
// row linear in (a, S):  q r - <psi|S|psi> - sum_kj a_kj x_j d_k >= 0.
struct Cut {
  RVec x;
  CVec psi;
  double r = 0;   // <psi|rho|psi>
  RVec dvals;     // <psi|D_k|psi>
  double q = 0;   // g(x, x)
};

namespace detail {

// Packing of the master LP variables: a row-major (n^2 entries), then the
// diagonal of S (d entries), then Re/Im pairs of the upper triangle of S.
struct MasterLayout {
  int n = 0, d = 0;
  int num_vars() const { return n * n + d * d; }
  int a_index(int k, int j) const { return k * n + j; }
  int s_diag_index(int k) const { return n * n + k; }
  int s_off_base(int k, int l) const {  // k < l
    int off = 0;
    for (int r = 0; r < k; ++r) off += d - 1 - r;
    off += l - k - 1;
    return n * n + d + 2 * off;
  }

  void unpack(const RVec& v, RMat& a, CMat& s) const {
    a = RMat(n, n);
    for (int k = 0; k < n; ++k)
      for (int j = 0; j < n; ++j) a(k, j) = v[a_index(k, j)];
    s = CMat(d);
    for (int k = 0; k < d; ++k) s(k, k) = v[s_diag_index(k)];
    for (int k = 0; k < d; ++k)
      for (int l = k + 1; l < d; ++l) {
        const int b = s_off_base(k, l);
        s(k, l) = Complex(v[b], v[b + 1]);
        s(l, k) = std::conj(s(k, l));
      }
  }
};

inline RVec cut_row(const MasterLayout& lay, const Cut& c) {
  RVec row(lay.num_vars(), 0.0);
  for (int k = 0; k < lay.n; ++k)
    for (int j = 0; j < lay.n; ++j) row[lay.a_index(k, j)] = -c.x[j] * c.dvals[k];
  for (int k = 0; k < lay.d; ++k)
    row[lay.s_diag_index(k)] = -std::norm(c.psi[k]);
  for (int k = 0; k < lay.d; ++k)
    for (int l = k + 1; l < lay.d; ++l) {
      const Complex z = std::conj(c.psi[k]) * c.psi[l];
      const int b = lay.s_off_base(k, l);
      row[b] = -2.0 * std::real(z);
      row[b + 1] = 2.0 * std::imag(z);
    }
  return row;
}

inline double spur_of(const RMat& a, const CMat& s) {
  return a.trace() + std::real(s.trace());
}

// R(a, S; x) as a matrix.
inline CMat dual_slack_operator(const RMat& a, const CMat& s, const QuantumModel& model,
                                const RMat& g, const RVec& x) {
  const int n = model.nparams();
  CMat r = quad_form(g, x, x) * model.rho - s;
  const RVec ax = mat_vec(a, x);
  for (int k = 0; k < n; ++k) r -= ax[k] * model.derivs[k];
  return hermitize(r);
}

// Constraint value of a cut row at (a, S); used for verification in tests.
inline double cut_value(const Cut& c, const RMat& a, const CMat& s) {
  double v = c.q * c.r - std::real(expect(s, c.psi));
  const RVec ax = mat_vec(a, c.x);
  for (size_t k = 0; k < ax.size(); ++k) v -= ax[k] * c.dvals[k];
  return v;
}

}  // namespace detail

inline Cut make_cut(const QuantumModel& model, const RMat& g, RVec x, CVec psi) {
  Cut c;
  c.psi = normalized(std::move(psi));
  c.r = std::real(expect(model.rho, c.psi));
  c.dvals.resize(model.nparams());
  for (int k = 0; k < model.nparams(); ++k)
    c.dvals[k] = std::real(expect(model.derivs[k], c.psi));
  c.q = quad_form(g, x, x);
  c.x = std::move(x);
  return c;
}

struct OracleResult {
  double min_value = 0;
  Cut cut;
  bool degenerate = false;  // homogenized minimizer had t ~ 0
};

namespace detail {

struct OracleCandidate {
  double value = kInf;
  RVec x;
};

// Multistart alternating search behind the separation oracle. Feasibility of
// (a, S) means
//     f(x, psi) = <psi|R(a,S;x)|psi> >= 0 for all x and unit psi.
// The search runs on the homogenized form
//     Q(x, t) = g(x,x) rho - t sum_k (a x)_k D_k - t^2 S,
// whose value at unit (x, t) equals t^2 f(x/t, psi): minimizing over the
// sphere avoids the unbounded x domain. For fixed psi the minimum over unit
// (x, t) is the smallest eigenvector of an (n+1) x (n+1) symmetric matrix;
// for fixed (x, t) it is the smallest eigenvector of Q. The two eigenvector
// updates alternate from `starts` starting points (start 0 aims at the top
// eigenvector of S, the rest are random unit vectors), each run descending
// monotonically until the value moves by less than 1e-12.
//
// Candidate values are exact smallest eigenvalues of R(a, S; x) at the
// dehomogenized minimizers, i.e. true constraint values: subtracting the
// worst one from S restores feasibility at every reported point. The list
// always ends with the x = 0 candidate, whose value is -lambda_max(S).
inline std::vector<OracleCandidate> oracle_candidates(const RMat& a, const CMat& s,
                                                      const QuantumModel& model, const RMat& g,
                                                      int starts, uint64_t seed) {
  const int n = model.nparams();
  const int d = model.dim();
  starts = std::max(starts, 1);

  const EigenDecomp s_eig = eig_hermitian(s);
  std::vector<OracleCandidate> found(starts + 1);

  parallel_for(starts, [&](int si) {
    Rng rng(seed, static_cast<uint64_t>(si));
    CVec psi = si == 0 ? s_eig.vector(d - 1) : rng.unit_cvec(d);

    RVec xt(n + 1, 0.0);
    xt[n] = 1.0;
    double prev = kInf;
    for (int it = 0; it < 200; ++it) {
      // Fix psi, minimize over unit (x, t).
      const double r = std::real(expect(model.rho, psi));
      const double sv = std::real(expect(s, psi));
      RVec dv(n);
      for (int k = 0; k < n; ++k) dv[k] = std::real(expect(model.derivs[k], psi));
      const RVec atd = mat_vec(a.transpose(), dv);
      RMat m(n + 1, n + 1);
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) m(i, j) = r * g(i, j);
        m(i, n) = m(n, i) = -0.5 * atd[i];
      }
      m(n, n) = -sv;
      SymEigenDecomp me = eig_symmetric(m);
      xt = me.vector(0);

      // Fix (x, t), minimize over unit psi.
      RVec x(xt.begin(), xt.begin() + n);
      const double t = xt[n];
      CMat q = quad_form(g, x, x) * model.rho - (t * t) * s;
      const RVec ax = mat_vec(a, x);
      for (int k = 0; k < n; ++k) q -= (t * ax[k]) * model.derivs[k];
      EigenDecomp qe = eig_hermitian(hermitize(q));
      psi = qe.vector(0);
      const double value = qe.eigenvalues.front();
      if (std::abs(value - prev) < 1e-12) break;
      prev = value;
    }

    double t = xt[n];
    OracleCandidate c;
    if (std::abs(t) < 1e-10) t = t >= 0 ? 1e-10 : -1e-10;
    c.x.assign(n, 0.0);
    for (int k = 0; k < n; ++k) c.x[k] = xt[k] / t;
    const CMat rmat = dual_slack_operator(a, s, model, g, c.x);
    c.value = eig_hermitian(rmat).eigenvalues.front();
    found[si] = std::move(c);
  });

  found[starts].value = -s_eig.eigenvalues.back();
  found[starts].x.assign(n, 0.0);
  return found;
}

}  // namespace detail

// Separation oracle: the most negative constraint value found and the
// linear cut at its location.
inline OracleResult oracle(const RMat& a, const CMat& s, const QuantumModel& model,
                           const RMat& g, int starts, uint64_t seed) {
  std::vector<detail::OracleCandidate> found =
      detail::oracle_candidates(a, s, model, g, starts, seed);
  const detail::OracleCandidate* best = &found.back();  // x = 0 candidate
  for (const detail::OracleCandidate& c : found)
    if (c.value < best->value) best = &c;

  OracleResult out;
  out.min_value = best->value;
  double norm2 = 0;
  for (double v : best->x) norm2 += v * v;
  out.degenerate = norm2 > 1e18;
  const CMat rbest = detail::dual_slack_operator(a, s, model, g, best->x);
  out.cut = make_cut(model, g, best->x, eig_hermitian(rbest).vector(0));
  return out;
}

struct DualOptions {
  double eps_feas = 1e-8;
  int max_rounds = 200;
  int starts = 0;          // 0 means 8 (n + 1); verification always uses 10x this
  int cuts_per_round = 4;  // distinct violated constraints added per round
  uint64_t seed = 0;
};

struct DualSolveResult {
  DualCertificate cert;
  int rounds = 0;
  bool converged = false;
  double master_value = 0;                // objective of the last master LP
  std::vector<double> master_objectives;  // one entry per round
  std::vector<Cut> cuts;                  // final cut pool
  RVec cut_duals;                         // multipliers of the last master
  int dim = 0;
};

namespace detail {

inline void push_unique(std::vector<RVec>& xs, const RVec& x) {
  for (const RVec& y : xs) {
    double diff = 0;
    for (size_t i = 0; i < x.size(); ++i) diff = std::max(diff, std::abs(x[i] - y[i]));
    if (diff <= 1e-12) return;
  }
  xs.push_back(x);
}

inline void push_unique(std::vector<CVec>& ps, const CVec& p) {
  for (const CVec& qv : ps) {
    double diff = 0;
    for (size_t i = 0; i < p.size(); ++i) diff = std::max(diff, std::abs(p[i] - qv[i]));
    if (diff <= 1e-12) return;
  }
  ps.push_back(p);
}

inline std::vector<Cut> initial_cuts(const QuantumModel& model, const FisherData& fisher,
                                     const RMat& g) {
  const int n = model.nparams();
  std::vector<RVec> xs;
  xs.push_back(RVec(n, 0.0));
  for (int j = 0; j < n; ++j) {
    RVec e(n, 0.0);
    e[j] = 1.0;
    push_unique(xs, e);
    e[j] = -1.0;
    push_unique(xs, e);
  }
  SymEigenDecomp je = eig_symmetric(fisher.J);
  for (int j = 0; j < n; ++j) {
    RVec v = je.vector(j);
    push_unique(xs, v);
    for (double& c : v) c = -c;
    push_unique(xs, v);
  }

  std::vector<CVec> psis;
  EigenDecomp re = eig_hermitian(model.rho);
  for (int k = 0; k < model.dim(); ++k) push_unique(psis, re.vector(k));
  for (const CMat& dk : model.derivs) {
    EigenDecomp de = eig_hermitian(dk);
    for (int k = 0; k < model.dim(); ++k) push_unique(psis, de.vector(k));
  }

  std::vector<Cut> pool;
  pool.reserve(xs.size() * psis.size());
  for (const RVec& x : xs)
    for (const CVec& psi : psis) pool.push_back(make_cut(model, g, x, psi));
  return pool;
}

struct MasterResult {
  RMat a;
  CMat s;
  double objective = 0;
  RVec duals;  // per cut, original row units
};

inline MasterResult solve_master(const std::vector<Cut>& pool, const MasterLayout& lay,
                                 double gnorm) {
  LPProblem p;
  const int nv = lay.num_vars();
  p.objective.assign(nv, 0.0);
  for (int k = 0; k < lay.n; ++k) p.objective[lay.a_index(k, k)] = 1.0;
  for (int k = 0; k < lay.d; ++k) p.objective[lay.s_diag_index(k)] = 1.0;

  // Boxes from the compactness of the superlevel set {spur >= 0}: operator
  // norm bounds 4 n |g| for a and 4 n^2 |g| for the trace norm of S, doubled
  // because entries are boxed rather than norms.
  const double abox = 8.0 * lay.n * gnorm;
  const double sbox = 8.0 * lay.n * lay.n * gnorm;
  p.var_lower.assign(nv, -sbox);
  p.var_upper.assign(nv, sbox);
  for (int k = 0; k < lay.n; ++k)
    for (int j = 0; j < lay.n; ++j) {
      p.var_lower[lay.a_index(k, j)] = -abox;
      p.var_upper[lay.a_index(k, j)] = abox;
    }

  RVec scales(pool.size(), 1.0);
  for (size_t c = 0; c < pool.size(); ++c) {
    RVec row = cut_row(lay, pool[c]);
    const double rhs = -pool[c].q * pool[c].r;
    double mx = std::abs(rhs);
    for (double v : row) mx = std::max(mx, std::abs(v));
    const double sc = mx > 1.0 ? 1.0 / mx : 1.0;
    scales[c] = sc;
    for (double& v : row) v *= sc;
    p.rows.push_back(std::move(row));
    p.row_lower.push_back(rhs * sc);
    p.row_upper.push_back(kInf);
  }

  LPSolution sol = lp_solve(p);
  if (sol.status != LPStatus::optimal)
    throw NumericalFailureError("dual master LP did not solve to optimality");

  MasterResult r;
  lay.unpack(sol.x, r.a, r.s);
  r.objective = sol.objective;
  r.duals.resize(pool.size());
  for (size_t c = 0; c < pool.size(); ++c) r.duals[c] = sol.row_duals[c] * scales[c];
  return r;
}

}  // namespace detail

// Cutting-plane solve of the dual problem. Rounds alternate between the
// master LP over the current cut pool and the separation oracle; a violated
// constraint joins the pool, a clean oracle pass ends the loop. The final
// multipliers are repaired by S <- S - delta I with delta the verified
// violation depth, so the returned certificate is feasible up to the
// verification oracle's power and its spur is a safe lower bound. The margin
// stored in the certificate comes from a second, independently seeded
// verification run at 10x the search effort.
inline DualSolveResult dual_bound(const QuantumModel& model, const FisherData& fisher,
                                  const WeightForm& weight, DualOptions opts = {}) {
  const int n = model.nparams();
  const int d = model.dim();
  detail::MasterLayout lay{n, d};
  const double gnorm = std::max(spectral_norm_sym(weight.g), 1e-12);
  const int starts = opts.starts > 0 ? opts.starts : 8 * (n + 1);

  DualSolveResult out;
  out.dim = d;
  out.cuts = detail::initial_cuts(model, fisher, weight.g);

  RMat a;
  CMat s;
  bool have_point = false;
  for (int round = 0; round < opts.max_rounds; ++round) {
    detail::MasterResult master = detail::solve_master(out.cuts, lay, gnorm);
    a = master.a;
    s = master.s;
    have_point = true;
    out.master_value = master.objective;
    out.master_objectives.push_back(master.objective);
    out.cut_duals = master.duals;
    out.rounds = round + 1;

    std::vector<detail::OracleCandidate> cands = detail::oracle_candidates(
        a, s, model, weight.g, starts, opts.seed + 0x6F7261636C65ULL * (round + 1));
    std::stable_sort(cands.begin(), cands.end(),
                     [](const auto& l, const auto& r) { return l.value < r.value; });
    if (cands.front().value >= -opts.eps_feas) {
      out.converged = true;
      break;
    }
    // Every multistart minimizer is a valid constraint; feeding the deepest
    // few distinct ones to the master saves most of the rounds a one-cut
    // exchange would need.
    int added = 0;
    std::vector<RVec> taken;
    for (const detail::OracleCandidate& c : cands) {
      if (c.value >= -opts.eps_feas || added >= std::max(1, opts.cuts_per_round)) break;
      bool dup = false;
      for (const RVec& x : taken) {
        double diff = 0, scale = 1.0;
        for (size_t i = 0; i < x.size(); ++i) {
          diff = std::max(diff, std::abs(x[i] - c.x[i]));
          scale = std::max(scale, std::abs(x[i]));
        }
        if (diff <= 1e-6 * scale) {
          dup = true;
          break;
        }
      }
      if (dup) continue;
      taken.push_back(c.x);
      const CMat rmat = detail::dual_slack_operator(a, s, model, weight.g, c.x);
      out.cuts.push_back(make_cut(model, weight.g, c.x, eig_hermitian(rmat).vector(0)));
      ++added;
    }
  }
  if (!have_point) throw InvalidInputError("dual_bound: max_rounds must be >= 1");

  // Feasibility repair against an intensified verification pass, then an
  // independent margin check with a different seed.
  const int verify_starts = 10 * starts;
  const double margin0 =
      oracle(a, s, model, weight.g, verify_starts, opts.seed + 0x766572696679ULL).min_value;
  const double delta = std::max(0.0, -margin0);
  if (delta > 0) {
    for (int k = 0; k < d; ++k) s(k, k) -= delta;
  }
  const double margin =
      oracle(a, s, model, weight.g, verify_starts, opts.seed + 0x636865636BULL).min_value;

  out.cert.a = a;
  out.cert.S = s;
  out.cert.spur = detail::spur_of(a, s);
  out.cert.feasibility_margin = margin;
  out.cert.valid = margin >= -opts.eps_feas;
  return out;
}

// Closed-form certificate for the full qubit model: with c = tr sqrt(J^{-1} g)
// and W the trace-one optimizer, the pair a = 2 c^2 W, S = c^2 (rho - 1)
// is feasible and its spur equals the random-measurement bound c^2.
inline DualCertificate qubit_certificate(const QuantumModel& model, const FisherData& fisher,
                                         const WeightForm& weight, int verify_starts = 0,
                                         uint64_t seed = 1) {
  const int n = model.nparams();
  const int d = model.dim();
  if (d != 2 || n != 3)
    throw InvalidInputError("qubit_certificate: requires the full qubit model (d=2, n=3)");

  const double bound = random_bound(fisher.J, weight.g);
  const RMat w = optimal_W(fisher.J, weight.g);

  DualCertificate cert;
  cert.a = (2.0 * bound) * w;
  cert.S = bound * (model.rho - CMat::identity(2));
  cert.spur = detail::spur_of(cert.a, cert.S);
  const int starts = verify_starts > 0 ? verify_starts : 80 * (n + 1);
  cert.feasibility_margin =
      oracle(cert.a, cert.S, model, weight.g, starts, seed).min_value;
  cert.valid = cert.feasibility_margin >= -1e-9;
  return cert;
}

// Complementary-slackness readout of the final master LP: active cuts with
// positive multipliers form a candidate measurement mu_c |psi_c><psi_c| with
// outcome x_c. Its completeness and unbiasedness defects and its achieved
// weighted variance are reported as diagnostics; nothing is certified.
struct RecoveryElement {
  double weight = 0;  // mu_c
  RVec x;
  CVec psi;
  double state_weight = 0;  // <psi|rho|psi>
};

struct Recovery {
  std::vector<RecoveryElement> elements;
  double completeness_residual = 0;  // |sum mu |psi><psi| - 1|_F
  double unbiasedness_residual = 0;  // max_kl |sum mu x_l d_k - delta_kl|
  double deviation = 0;              // sum mu g(x,x) <psi|rho|psi>
};

inline Recovery recover_measurement(const DualSolveResult& result) {
  Recovery rec;
  const int d = result.dim;
  const int n = result.cuts.empty() ? 0 : static_cast<int>(result.cuts.front().x.size());
  CMat povm_sum(d);
  RMat response(n, n);
  for (size_t c = 0; c < result.cuts.size() && c < result.cut_duals.size(); ++c) {
    const double mu = std::max(0.0, -result.cut_duals[c]);
    if (mu <= 1e-12) continue;
    const Cut& cut = result.cuts[c];
    rec.elements.push_back({mu, cut.x, cut.psi, cut.r});
    povm_sum += mu * outer(cut.psi);
    for (int k = 0; k < n; ++k)
      for (int l = 0; l < n; ++l) response(k, l) += mu * cut.x[l] * cut.dvals[k];
    rec.deviation += mu * cut.q * cut.r;
  }
  rec.completeness_residual = (povm_sum - CMat::identity(d)).fro_norm();
  double resid = 0;
  for (int k = 0; k < n; ++k)
    for (int l = 0; l < n; ++l)
      resid = std::max(resid, std::abs(response(k, l) - (k == l ? 1.0 : 0.0)));
  rec.unbiasedness_residual = n == 0 ? 0.0 : resid;
  return rec;
}

}  // namespace qcrb

#endif  // QCRB_DUALLP_HPP
