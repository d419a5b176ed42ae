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

#ifndef QCRB_LP_HPP
#define QCRB_LP_HPP

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "qcrb/errors.hpp"
#include "qcrb/rmat.hpp"

namespace qcrb {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Dense linear program
//   maximize   objective . x
//   subject to row_lower <= A x <= row_upper   (rows of A dense)
//              var_lower <= x   <= var_upper
// Bounds may be +-infinity.
struct LPProblem {
  RVec objective;
  std::vector<RVec> rows;
  RVec row_lower, row_upper;
  RVec var_lower, var_upper;

  int num_vars() const { return static_cast<int>(objective.size()); }
  int num_rows() const { return static_cast<int>(rows.size()); }
};

enum class LPStatus { optimal, infeasible, unbounded };

// Row duals follow the convention y_i = d(objective)/d(shift of row i):
// nonnegative for rows binding at their upper bound, nonpositive for rows
// binding at their lower bound.
struct LPSolution {
  LPStatus status = LPStatus::optimal;
  double objective = 0;
  RVec x;
  RVec row_duals;
};

// Two-phase primal simplex on the bounded-variable form A x - s = 0 with
// slacks s carrying the row bounds. The tableau is dense; entering columns
// are chosen by largest reduced cost until a run of degenerate pivots is
// detected, after which the rule permanently switches to Bland's smallest
// index rule, which cannot cycle. All tie-breaks are index-based, so the
// solve is deterministic.
class SimplexSolver {
 public:
  explicit SimplexSolver(const LPProblem& p) : p_(p) { build(); }

  LPSolution solve() {
    LPSolution out;
    // Phase 1: maximize minus the total artificial mass.
    if (num_artificial_ > 0) {
      cost_.assign(total_, 0.0);
      for (int a = 0; a < num_artificial_; ++a) cost_[n_ + m_ + a] = -1.0;
      run();
      double infeas = 0;
      for (int a = 0; a < num_artificial_; ++a) infeas += value(n_ + m_ + a);
      if (infeas > feas_tol_) {
        out.status = LPStatus::infeasible;
        return out;
      }
      for (int a = 0; a < num_artificial_; ++a) {
        lower_[n_ + m_ + a] = upper_[n_ + m_ + a] = 0.0;
        if (state_[n_ + m_ + a] != kBasic) state_[n_ + m_ + a] = kFixed;
      }
      refresh_basics();
    }

    // Phase 2: the real objective.
    cost_.assign(total_, 0.0);
    for (int j = 0; j < n_; ++j) cost_[j] = p_.objective[j];
    if (!run()) {
      out.status = LPStatus::unbounded;
      return out;
    }
    refresh_basics();

    out.status = LPStatus::optimal;
    out.x.resize(n_);
    for (int j = 0; j < n_; ++j) out.x[j] = value(j);
    out.objective = dot(p_.objective, out.x);
    out.row_duals.resize(m_);
    for (int i = 0; i < m_; ++i) {
      double y = 0;
      for (int k = 0; k < m_; ++k) y -= cost_[basis_[k]] * tab(k, n_ + i);
      out.row_duals[i] = y;
    }
    return out;
  }

 private:
  static constexpr int kAtLower = 0, kAtUpper = 1, kFree = 2, kBasic = 3, kFixed = 4;

  double& tab(int r, int c) { return tab_[static_cast<size_t>(r) * total_ + c]; }

  double value(int j) const {
    if (state_[j] == kBasic) return xb_[basic_row_[j]];
    if (state_[j] == kAtUpper) return upper_[j];
    if (state_[j] == kFree) return 0.0;
    return lower_[j];
  }

  void build() {
    n_ = p_.num_vars();
    m_ = p_.num_rows();
    if (static_cast<int>(p_.row_lower.size()) != m_ ||
        static_cast<int>(p_.row_upper.size()) != m_ ||
        static_cast<int>(p_.var_lower.size()) != n_ ||
        static_cast<int>(p_.var_upper.size()) != n_)
      throw InvalidInputError("lp_solve: bound vector size mismatch");

    lower_ = p_.var_lower;
    upper_ = p_.var_upper;
    lower_.insert(lower_.end(), p_.row_lower.begin(), p_.row_lower.end());
    upper_.insert(upper_.end(), p_.row_upper.begin(), p_.row_upper.end());

    double scale = 1.0;
    for (int j = 0; j < n_ + m_; ++j) {
      if (std::isfinite(lower_[j])) scale = std::max(scale, std::abs(lower_[j]));
      if (std::isfinite(upper_[j])) scale = std::max(scale, std::abs(upper_[j]));
      if (lower_[j] > upper_[j] + 1e-12)
        throw InvalidInputError("lp_solve: empty bound interval");
    }
    feas_tol_ = 1e-9 * scale;

    state_.assign(n_ + m_, kAtLower);
    for (int j = 0; j < n_ + m_; ++j) {
      if (upper_[j] - lower_[j] <= 0.0)
        state_[j] = kFixed;
      else if (std::isfinite(lower_[j]))
        state_[j] = kAtLower;
      else if (std::isfinite(upper_[j]))
        state_[j] = kAtUpper;
      else
        state_[j] = kFree;
    }

    // Row activities at the initial nonbasic point decide which rows need an
    // artificial column to restore feasibility.
    RVec act(m_, 0.0);
    for (int i = 0; i < m_; ++i)
      for (int j = 0; j < n_; ++j) act[i] += p_.rows[i][j] * nb_value(j);

    // art_sign[i]: 0 keeps the slack basic; otherwise the slack is pinned at
    // the violated bound and an artificial column with that sign absorbs the
    // residual.
    std::vector<int> art_sign(m_, 0);
    std::vector<int> art_index(m_, -1);
    num_artificial_ = 0;
    for (int i = 0; i < m_; ++i) {
      const int sj = n_ + i;
      if (act[i] > upper_[sj] + feas_tol_) {
        state_[sj] = upper_[sj] == lower_[sj] ? kFixed : kAtUpper;
        art_sign[i] = -1;
      } else if (act[i] < lower_[sj] - feas_tol_) {
        state_[sj] = upper_[sj] == lower_[sj] ? kFixed : kAtLower;
        art_sign[i] = +1;
      }
      if (art_sign[i] != 0) art_index[i] = num_artificial_++;
    }
    total_ = n_ + m_ + num_artificial_;
    state_.resize(total_, kAtLower);
    lower_.resize(total_, 0.0);
    upper_.resize(total_, kInf);

    // The initial basis matrix is diagonal: -1 on rows whose slack is basic,
    // the artificial sign elsewhere. The starting tableau is therefore the
    // constraint matrix with each row divided by its basis entry.
    tab_.assign(static_cast<size_t>(m_) * total_, 0.0);
    basis_.assign(m_, -1);
    basic_row_.assign(total_, -1);
    xb_.assign(m_, 0.0);
    for (int i = 0; i < m_; ++i) {
      const double b = art_sign[i] == 0 ? -1.0 : static_cast<double>(art_sign[i]);
      basis_[i] = art_sign[i] == 0 ? n_ + i : n_ + m_ + art_index[i];
      state_[basis_[i]] = kBasic;
      basic_row_[basis_[i]] = i;
      for (int j = 0; j < n_; ++j) tab(i, j) = p_.rows[i][j] / b;
      tab(i, n_ + i) = -1.0 / b;
      if (art_sign[i] != 0) tab(i, n_ + m_ + art_index[i]) = 1.0;
    }
    refresh_basics();
  }

  double nb_value(int j) const {
    if (state_[j] == kAtUpper) return upper_[j];
    if (state_[j] == kFree) return 0.0;
    return lower_[j];
  }

  // Recomputes basic values from the tableau and the nonbasic point; used at
  // phase boundaries to shed accumulated pivot rounding.
  void refresh_basics() {
    for (int i = 0; i < m_; ++i) xb_[i] = 0.0;
    for (int j = 0; j < total_; ++j) {
      if (state_[j] == kBasic) continue;
      const double v = nb_value(j);
      if (v == 0.0) continue;
      for (int i = 0; i < m_; ++i) xb_[i] -= tab(i, j) * v;
    }
  }

  double current_objective() const {
    double obj = 0;
    for (int j = 0; j < total_; ++j) obj += cost_[j] * value(j);
    return obj;
  }

  // Returns false on unboundedness.
  bool run() {
    const double dtol = 1e-10;
    const double pivot_tol = 1e-11;
    int degenerate_run = 0;
    int pivots_since_refresh = 0;
    bool bland = false;
    double prev_obj = current_objective();

    for (long iter = 0; iter < 200000; ++iter) {
      // Reduced costs d_j = c_j - c_B . T_j over nonbasic columns.
      RVec cb(m_);
      bool any_cb = false;
      for (int i = 0; i < m_; ++i) {
        cb[i] = cost_[basis_[i]];
        any_cb = any_cb || cb[i] != 0.0;
      }

      int enter = -1;
      int dir = +1;
      double best_score = dtol;
      for (int j = 0; j < total_; ++j) {
        const int st = state_[j];
        if (st == kBasic || st == kFixed) continue;
        double d = cost_[j];
        if (any_cb)
          for (int i = 0; i < m_; ++i) d -= cb[i] * tab(i, j);
        int cand_dir = 0;
        if ((st == kAtLower && d > dtol) || (st == kFree && d > dtol))
          cand_dir = +1;
        else if ((st == kAtUpper && d < -dtol) || (st == kFree && d < -dtol))
          cand_dir = -1;
        if (cand_dir == 0) continue;
        if (bland) {
          enter = j;
          dir = cand_dir;
          break;
        }
        if (std::abs(d) > best_score) {
          best_score = std::abs(d);
          enter = j;
          dir = cand_dir;
        }
      }
      if (enter < 0) return true;  // optimal

      // Ratio test: largest step before a basic variable or the entering
      // variable itself reaches a bound. Among rows whose limits tie within
      // a small window, Bland mode takes the smallest variable index (the
      // anti-cycling rule) and the default mode takes the largest pivot
      // magnitude, which keeps the tableau well conditioned.
      double colmax = 0;
      for (int i = 0; i < m_; ++i) colmax = std::max(colmax, std::abs(tab(i, enter)));
      const double eligible = std::max(pivot_tol, 1e-10 * colmax);

      double flip_step = kInf;
      if (std::isfinite(upper_[enter]) && std::isfinite(lower_[enter]))
        flip_step = upper_[enter] - lower_[enter];
      double theta = flip_step;
      RVec limits(m_, kInf);
      for (int i = 0; i < m_; ++i) {
        const double w = dir * tab(i, enter);
        if (std::abs(w) <= eligible) continue;
        const int bj = basis_[i];
        double limit;
        if (w > 0)
          limit = std::isfinite(lower_[bj]) ? (xb_[i] - lower_[bj]) / w : kInf;
        else
          limit = std::isfinite(upper_[bj]) ? (xb_[i] - upper_[bj]) / w : kInf;
        if (limit < 0) limit = 0.0;
        limits[i] = limit;
        theta = std::min(theta, limit);
      }
      if (!std::isfinite(theta)) return false;  // unbounded direction

      const double window = theta + 1e-9 * (1.0 + std::abs(theta));
      int pivot_row = -1;
      for (int i = 0; i < m_; ++i) {
        if (limits[i] > window) continue;
        if (pivot_row < 0) {
          pivot_row = i;
          continue;
        }
        if (bland) {
          if (basis_[i] < basis_[pivot_row]) pivot_row = i;
        } else if (std::abs(tab(i, enter)) > std::abs(tab(pivot_row, enter))) {
          pivot_row = i;
        }
      }
      if (pivot_row >= 0 && flip_step < limits[pivot_row]) pivot_row = -1;
      const double step = pivot_row >= 0 ? limits[pivot_row] : flip_step;

      if (pivot_row < 0) {
        // Bound flip: the entering variable crosses its own box.
        for (int i = 0; i < m_; ++i) xb_[i] -= dir * step * tab(i, enter);
        state_[enter] = state_[enter] == kAtLower ? kAtUpper : kAtLower;
      } else {
        const double enter_value = nb_value(enter) + dir * step;
        const int leave = basis_[pivot_row];
        for (int i = 0; i < m_; ++i) xb_[i] -= dir * step * tab(i, enter);

        const double w = dir * tab(pivot_row, enter);
        state_[leave] = w > 0 ? kAtLower : kAtUpper;
        if (upper_[leave] - lower_[leave] <= 0.0) state_[leave] = kFixed;

        const double piv = tab(pivot_row, enter);
        for (int c = 0; c < total_; ++c) tab(pivot_row, c) /= piv;
        for (int i = 0; i < m_; ++i) {
          if (i == pivot_row) continue;
          const double f = tab(i, enter);
          if (f == 0.0) continue;
          for (int c = 0; c < total_; ++c) tab(i, c) -= f * tab(pivot_row, c);
        }
        basic_row_[leave] = -1;
        basis_[pivot_row] = enter;
        basic_row_[enter] = pivot_row;
        state_[enter] = kBasic;
        xb_[pivot_row] = enter_value;
      }

      const double obj = current_objective();
      if (std::abs(obj - prev_obj) <= 1e-13 * (1.0 + std::abs(obj))) {
        if (++degenerate_run > 40) bland = true;
      } else {
        degenerate_run = 0;
      }
      prev_obj = obj;
    }
    throw NumericalFailureError("lp_solve: iteration limit exceeded");
  }

  const LPProblem& p_;
  int n_ = 0, m_ = 0, num_artificial_ = 0, total_ = 0;
  double feas_tol_ = 1e-9;
  std::vector<double> tab_;
  std::vector<int> basis_;
  std::vector<int> basic_row_;  // variable index -> tableau row, -1 if nonbasic
  std::vector<int> state_;
  RVec xb_, lower_, upper_, cost_;
};

inline LPSolution lp_solve(const LPProblem& p) { return SimplexSolver(p).solve(); }

}  // namespace qcrb

#endif  // QCRB_LP_HPP
