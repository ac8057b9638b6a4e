// Copyright 2026 The stricteq Authors
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

#ifndef STRICTEQ_LP_HPP_
#define STRICTEQ_LP_HPP_

#include <algorithm>
#include <cassert>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "stricteq/matrix.hpp"
#include "stricteq/scalar.hpp"

namespace stricteq::lp {

enum class Relation { less_equal, equal, greater_equal };
enum class Sense { maximize, minimize };
enum class LpStatus { optimal, infeasible, unbounded };
enum class PivotRule { bland, largest_coefficient };

template <typename N>
struct Bound {
  std::optional<N> lower;
  std::optional<N> upper;
};

template <typename N>
struct LinearProgram {
  struct Row {
    std::vector<N> coeffs;  // dense, one per variable
    Relation rel = Relation::less_equal;
    N rhs = scalar_traits<N>::zero();
  };

  Sense sense = Sense::maximize;
  std::vector<N> objective;
  std::vector<Bound<N>> bounds;
  std::vector<Row> rows;

  int num_vars() const { return static_cast<int>(objective.size()); }
  int num_rows() const { return static_cast<int>(rows.size()); }

  int add_variable(const N& obj, std::optional<N> lower,
                   std::optional<N> upper) {
    objective.push_back(obj);
    bounds.push_back(Bound<N>{std::move(lower), std::move(upper)});
    return num_vars() - 1;
  }

  void add_row(std::vector<N> coeffs, Relation rel, N rhs) {
    if (static_cast<int>(coeffs.size()) != num_vars()) {
      throw std::invalid_argument("row width does not match variable count");
    }
    rows.push_back(Row{std::move(coeffs), rel, std::move(rhs)});
  }
};

/// Solution with certificates. Dual convention, in the original sense
/// and data: stationarity c_j = sum_i y_i a_ij + r_j for every j, with
///   maximize: <= rows y >= 0, >= rows y <= 0; r_j >= 0 only at upper
///             bound, r_j <= 0 only at lower bound;
///   minimize: all signs flipped.
/// On unbounded problems `ray` is a feasible improving direction over
/// the structural variables.
template <typename N>
struct LpSolution {
  LpStatus status = LpStatus::infeasible;
  std::vector<N> x;
  N objective = scalar_traits<N>::zero();
  std::vector<N> row_duals;
  std::vector<N> reduced_costs;
  std::vector<N> ray;
  long pivots = 0;
};

struct SimplexOptions {
  PivotRule rule = PivotRule::bland;
  std::ostream* trace = nullptr;  // per-pivot log when set
};

namespace detail {

/// Full-tableau bounded-variable primal simplex, two phases.
///
/// Column layout: [0, n) structural, [n, n+m) slack, [n+m, n+2m)
/// artificial. Every row gets a slack (equality slacks are fixed at 0)
/// and an artificial; phase 1 starts from the all-artificial basis and
/// maximizes -sum(artificials). Duals are read off the artificial
/// columns of the final tableau.
template <typename N>
class Simplex {
 public:
  Simplex(const LinearProgram<N>& prob, const Tolerances<N>& tol,
          const SimplexOptions& opts)
      : prob_(prob), tol_(tol), opts_(opts) {}

  LpSolution<N> solve() {
    build();
    phase1();
    if (infeasible_) {
      LpSolution<N> sol;
      sol.status = LpStatus::infeasible;
      sol.pivots = pivots_;
      return sol;
    }
    phase2();
    return extract();
  }

 private:
  enum class ColStatus { basic, at_lower, at_upper, free_zero };

  static constexpr int kNoCol = -1;

  const LinearProgram<N>& prob_;
  Tolerances<N> tol_;
  SimplexOptions opts_;

  int n_ = 0;      // structural columns
  int m_ = 0;      // rows
  int total_ = 0;  // n + 2m
  bool maximize_ = true;

  std::vector<std::vector<N>> tab_;  // m x total, current B^-1 A
  std::vector<N> xb_;                // value of the basic variable per row
  std::vector<N> zrow_;              // z_j - c_j per column
  N zval_ = scalar_traits<N>::zero();

  std::vector<std::optional<N>> lower_, upper_;
  std::vector<ColStatus> status_;
  std::vector<int> basis_;      // row -> column
  std::vector<N> cost_;         // current phase objective per column
  std::vector<int> art_sign_;   // +-1 per row, artificial coefficient
  bool phase_two_ = false;
  bool infeasible_ = false;
  bool unbounded_ = false;
  int unbounded_col_ = kNoCol;
  int unbounded_dir_ = 0;
  long pivots_ = 0;

  N zero() const { return scalar_traits<N>::zero(); }

  bool col_fixed(int c) const {
    return lower_[c] && upper_[c] && *lower_[c] == *upper_[c];
  }

  N nonbasic_value(int c) const {
    switch (status_[c]) {
      case ColStatus::at_lower: return *lower_[c];
      case ColStatus::at_upper: return *upper_[c];
      default: return zero();
    }
  }

  void build() {
    n_ = prob_.num_vars();
    m_ = prob_.num_rows();
    total_ = n_ + 2 * m_;
    maximize_ = prob_.sense == Sense::maximize;

    lower_.assign(total_, std::nullopt);
    upper_.assign(total_, std::nullopt);
    status_.assign(total_, ColStatus::free_zero);
    basis_.assign(m_, kNoCol);
    art_sign_.assign(m_, 1);

    for (int j = 0; j < n_; ++j) {
      lower_[j] = prob_.bounds[j].lower;
      upper_[j] = prob_.bounds[j].upper;
      if (lower_[j] && upper_[j] && *upper_[j] < *lower_[j]) {
        infeasible_ = true;  // crossed bounds: trivially infeasible
      }
      if (lower_[j]) {
        status_[j] = ColStatus::at_lower;
      } else if (upper_[j]) {
        status_[j] = ColStatus::at_upper;
      } else {
        status_[j] = ColStatus::free_zero;
      }
    }
    for (int i = 0; i < m_; ++i) {
      const int s = n_ + i;
      switch (prob_.rows[i].rel) {
        case Relation::less_equal:
          lower_[s] = zero();
          status_[s] = ColStatus::at_lower;
          break;
        case Relation::greater_equal:
          upper_[s] = zero();
          status_[s] = ColStatus::at_upper;
          break;
        case Relation::equal:
          lower_[s] = zero();
          upper_[s] = zero();
          status_[s] = ColStatus::at_lower;
          break;
      }
    }
    if (infeasible_) return;

    // Row residuals at the initial nonbasic point decide the artificial
    // signs; the artificial basis is feasible by construction.
    tab_.assign(m_, std::vector<N>(total_, zero()));
    xb_.assign(m_, zero());
    for (int i = 0; i < m_; ++i) {
      N res = prob_.rows[i].rhs;
      for (int j = 0; j < n_; ++j) {
        res -= prob_.rows[i].coeffs[j] * nonbasic_value(j);
      }
      const bool nonneg = !(res < zero());
      art_sign_[i] = nonneg ? 1 : -1;
      const N sgn = scalar_traits<N>::from_long(art_sign_[i]);
      for (int j = 0; j < n_; ++j) {
        tab_[i][j] = sgn * prob_.rows[i].coeffs[j];
      }
      tab_[i][n_ + i] = sgn;
      tab_[i][n_ + m_ + i] = scalar_traits<N>::from_long(1);
      const int a = n_ + m_ + i;
      lower_[a] = zero();
      upper_[a] = std::nullopt;
      status_[a] = ColStatus::basic;
      basis_[i] = a;
      xb_[i] = nonneg ? res : -res;
    }
  }

  void set_phase_costs() {
    cost_.assign(total_, zero());
    if (!phase_two_) {
      for (int i = 0; i < m_; ++i) {
        cost_[n_ + m_ + i] = scalar_traits<N>::from_long(-1);
      }
    } else {
      for (int j = 0; j < n_; ++j) {
        cost_[j] = maximize_ ? prob_.objective[j] : -prob_.objective[j];
      }
    }
    // z_j - c_j from scratch; objective value likewise.
    zrow_.assign(total_, zero());
    zval_ = zero();
    for (int j = 0; j < total_; ++j) {
      N z = -cost_[j];
      for (int i = 0; i < m_; ++i) z += cost_[basis_[i]] * tab_[i][j];
      zrow_[j] = z;
    }
    for (int i = 0; i < m_; ++i) zval_ += cost_[basis_[i]] * xb_[i];
    for (int j = 0; j < total_; ++j) {
      if (status_[j] != ColStatus::basic) {
        zval_ += cost_[j] * nonbasic_value(j);
      }
    }
  }

  bool may_enter(int c) const {
    if (status_[c] == ColStatus::basic) return false;
    if (col_fixed(c)) return false;
    if (c >= n_ + m_) return false;  // artificials never re-enter
    return true;
  }

  // Improving direction for column c at its current status, or 0.
  int entering_direction(int c) const {
    const N& z = zrow_[c];
    const N eps = tol_.feasibility;
    switch (status_[c]) {
      case ColStatus::at_lower:
        return z < -eps ? 1 : 0;
      case ColStatus::at_upper:
        return z > eps ? -1 : 0;
      case ColStatus::free_zero:
        if (z < -eps) return 1;
        if (z > eps) return -1;
        return 0;
      default:
        return 0;
    }
  }

  int choose_entering(int* direction) {
    int best = kNoCol;
    N best_mag = zero();
    for (int c = 0; c < total_; ++c) {
      if (!may_enter(c)) continue;
      const int dir = entering_direction(c);
      if (dir == 0) continue;
      if (opts_.rule == PivotRule::bland) {
        *direction = dir;
        return c;
      }
      const N mag = scalar_traits<N>::abs(zrow_[c]);
      if (best == kNoCol || mag > best_mag) {
        best = c;
        best_mag = mag;
        *direction = dir;
      }
    }
    return best;
  }

  // One simplex iteration. Returns false at (phase) optimality.
  bool step() {
    int dir = 0;
    const int je = choose_entering(&dir);
    if (je == kNoCol) return false;

    // Ratio test: x_je moves by dir * t, t >= 0. Blockers are the
    // entering variable's own opposite bound and every basic variable
    // hitting one of its bounds. Ties break on the lowest blocking
    // column index (Bland), which also guarantees termination.
    std::optional<N> best_t;
    int block_col = kNoCol;
    int block_row = -1;

    auto consider = [&](const N& t, int col, int row) {
      if (!best_t || t < *best_t || (t == *best_t && col < block_col)) {
        best_t = t;
        block_col = col;
        block_row = row;
      }
    };

    if (dir > 0 && upper_[je]) consider(*upper_[je] - nonbasic_value(je), je, -1);
    if (dir < 0 && lower_[je]) consider(nonbasic_value(je) - *lower_[je], je, -1);

    const N eps = tol_.feasibility;
    for (int i = 0; i < m_; ++i) {
      N alpha = tab_[i][je];
      if (dir < 0) alpha = -alpha;
      const int bc = basis_[i];
      if (alpha > eps) {
        if (lower_[bc]) consider((xb_[i] - *lower_[bc]) / alpha, bc, i);
      } else if (alpha < -eps) {
        if (upper_[bc]) consider((*upper_[bc] - xb_[i]) / (-alpha), bc, i);
      }
    }

    if (!best_t) {
      unbounded_ = true;
      unbounded_col_ = je;
      unbounded_dir_ = dir;
      return false;
    }
    N t = *best_t;
    if (t < zero()) t = zero();  // numerical guard; exact mode never hits it

    if (opts_.trace) {
      *opts_.trace << "pivot col=" << je << " dir=" << dir
                   << " t=" << scalar_traits<N>::to_string(t)
                   << " block=" << block_col << "\n";
    }

    const N delta = scalar_traits<N>::from_long(dir) * t;
    zval_ -= zrow_[je] * delta;
    for (int i = 0; i < m_; ++i) xb_[i] -= delta * tab_[i][je];

    ++pivots_;
    if (block_col == je) {
      // Bound flip: no basis change.
      status_[je] = dir > 0 ? ColStatus::at_upper : ColStatus::at_lower;
      return true;
    }

    const int r = block_row;
    const int leaving = basis_[r];
    const N entering_value = nonbasic_value(je) + delta;
    // Leaving variable settles on the bound it ran into.
    N alpha = tab_[r][je];
    if (dir < 0) alpha = -alpha;
    status_[leaving] = alpha > zero() ? ColStatus::at_lower
                                      : ColStatus::at_upper;
    basis_[r] = je;
    status_[je] = ColStatus::basic;
    xb_[r] = entering_value;

    // Gauss-Jordan elimination on the pivot column.
    const N piv = tab_[r][je];
    for (int j = 0; j < total_; ++j) tab_[r][j] /= piv;
    for (int i = 0; i < m_; ++i) {
      if (i == r) continue;
      const N f = tab_[i][je];
      if (f == zero()) continue;
      for (int j = 0; j < total_; ++j) tab_[i][j] -= f * tab_[r][j];
    }
    const N fz = zrow_[je];
    if (!(fz == zero())) {
      for (int j = 0; j < total_; ++j) zrow_[j] -= fz * tab_[r][j];
    }
    return true;
  }

  void run() {
    while (step()) {
    }
  }

  void phase1() {
    if (infeasible_) return;
    phase_two_ = false;
    set_phase_costs();
    run();
    assert(!unbounded_);  // phase-1 objective is bounded above by zero
    if (zval_ < -tol_.feasibility) {
      infeasible_ = true;
      return;
    }
    // Pin artificials at zero for phase 2; basic ones may stay basic
    // but can never leave their [0, 0] range again.
    for (int i = 0; i < m_; ++i) {
      const int a = n_ + m_ + i;
      upper_[a] = zero();
      if (status_[a] != ColStatus::basic) status_[a] = ColStatus::at_lower;
    }
  }

  void phase2() {
    phase_two_ = true;
    set_phase_costs();
    run();
  }

  LpSolution<N> extract() {
    LpSolution<N> sol;
    sol.pivots = pivots_;
    sol.x.assign(n_, zero());
    for (int j = 0; j < n_; ++j) {
      sol.x[j] = status_[j] == ColStatus::basic ? zero() : nonbasic_value(j);
    }
    for (int i = 0; i < m_; ++i) {
      if (basis_[i] < n_) sol.x[basis_[i]] = xb_[i];
    }
    sol.objective = zero();
    for (int j = 0; j < n_; ++j) sol.objective += prob_.objective[j] * sol.x[j];

    if (unbounded_) {
      sol.status = LpStatus::unbounded;
      sol.ray.assign(n_, zero());
      const N d = scalar_traits<N>::from_long(unbounded_dir_);
      if (unbounded_col_ < n_) sol.ray[unbounded_col_] = d;
      for (int i = 0; i < m_; ++i) {
        if (basis_[i] < n_) sol.ray[basis_[i]] = -d * tab_[i][unbounded_col_];
      }
      return sol;
    }

    sol.status = LpStatus::optimal;
    // Duals from the artificial columns: zrow[a_i] = sign_i * y_i in the
    // internal (maximization) orientation.
    sol.row_duals.assign(m_, zero());
    const N flip = scalar_traits<N>::from_long(maximize_ ? 1 : -1);
    for (int i = 0; i < m_; ++i) {
      sol.row_duals[i] =
          flip * scalar_traits<N>::from_long(art_sign_[i]) * zrow_[n_ + m_ + i];
    }
    sol.reduced_costs.assign(n_, zero());
    for (int j = 0; j < n_; ++j) {
      sol.reduced_costs[j] = -(flip * zrow_[j]);
    }
    return sol;
  }
};

}  // namespace detail

template <typename N>
LpSolution<N> solve_lp(const LinearProgram<N>& prob, const Tolerances<N>& tol,
                       const SimplexOptions& opts = {}) {
  for (const N& c : prob.objective) {
    if (!scalar_traits<N>::finite(c)) {
      throw std::invalid_argument("non-finite objective coefficient");
    }
  }
  detail::Simplex<N> s(prob, tol, opts);
  return s.solve();
}

/// Independent KKT residual audit of a claimed optimal solution.
/// All residuals are reported as max norms; `pass` applies the
/// tolerance policy (exact zero in rational mode).
template <typename N>
struct KktResiduals {
  N primal = scalar_traits<N>::zero();           // row + bound violations
  N dual_sign = scalar_traits<N>::zero();        // dual sign violations
  N stationarity = scalar_traits<N>::zero();     // c - A^T y - r
  N complementarity = scalar_traits<N>::zero();  // y * slack, r * bound gap
  N duality_gap = scalar_traits<N>::zero();      // |c^T x - (y^T b + r^T x)|
  bool pass = false;
};

template <typename N>
KktResiduals<N> dual_certificate(const LinearProgram<N>& prob,
                                 const LpSolution<N>& sol,
                                 const Tolerances<N>& tol) {
  KktResiduals<N> res;
  if (sol.status != LpStatus::optimal) return res;
  const N zero = scalar_traits<N>::zero();
  auto bump = [](N& acc, const N& v) {
    const N a = scalar_traits<N>::abs(v);
    if (a > acc) acc = a;
  };
  const int n = prob.num_vars();
  const int m = prob.num_rows();
  const bool maximize = prob.sense == Sense::maximize;

  // Primal feasibility.
  std::vector<N> activity(m, zero);
  for (int i = 0; i < m; ++i) {
    activity[i] = dot(prob.rows[i].coeffs, sol.x);
    const N diff = activity[i] - prob.rows[i].rhs;
    switch (prob.rows[i].rel) {
      case Relation::less_equal:
        if (diff > zero) bump(res.primal, diff);
        break;
      case Relation::greater_equal:
        if (diff < zero) bump(res.primal, diff);
        break;
      case Relation::equal:
        bump(res.primal, diff);
        break;
    }
  }
  for (int j = 0; j < n; ++j) {
    if (prob.bounds[j].lower && sol.x[j] < *prob.bounds[j].lower) {
      bump(res.primal, *prob.bounds[j].lower - sol.x[j]);
    }
    if (prob.bounds[j].upper && sol.x[j] > *prob.bounds[j].upper) {
      bump(res.primal, sol.x[j] - *prob.bounds[j].upper);
    }
  }

  // Dual sign feasibility and row complementarity.
  for (int i = 0; i < m; ++i) {
    const N& y = sol.row_duals[i];
    const N pos = maximize ? y : -y;
    switch (prob.rows[i].rel) {
      case Relation::less_equal:
        if (pos < zero) bump(res.dual_sign, pos);
        break;
      case Relation::greater_equal:
        if (pos > zero) bump(res.dual_sign, pos);
        break;
      case Relation::equal:
        break;
    }
    bump(res.complementarity, y * (prob.rows[i].rhs - activity[i]));
  }

  // Stationarity c = A^T y + r, and bound complementarity for r.
  for (int j = 0; j < n; ++j) {
    N s = prob.objective[j] - sol.reduced_costs[j];
    for (int i = 0; i < m; ++i) s -= sol.row_duals[i] * prob.rows[i].coeffs[j];
    bump(res.stationarity, s);

    const N r = maximize ? sol.reduced_costs[j] : -sol.reduced_costs[j];
    if (r > zero) {
      if (prob.bounds[j].upper) {
        bump(res.complementarity, r * (*prob.bounds[j].upper - sol.x[j]));
      } else {
        bump(res.complementarity, r);
      }
    } else if (r < zero) {
      if (prob.bounds[j].lower) {
        bump(res.complementarity, r * (sol.x[j] - *prob.bounds[j].lower));
      } else {
        bump(res.complementarity, r);
      }
    }
  }

  // Strong duality at complementary points: c^T x = y^T b + r^T x.
  N dual_value = zero;
  for (int i = 0; i < m; ++i) dual_value += sol.row_duals[i] * prob.rows[i].rhs;
  for (int j = 0; j < n; ++j) dual_value += sol.reduced_costs[j] * sol.x[j];
  bump(res.duality_gap, sol.objective - dual_value);

  res.pass = !(res.primal > tol.feasibility) &&
             !(res.dual_sign > tol.feasibility) &&
             !(res.stationarity > tol.feasibility) &&
             !(res.complementarity > tol.complementarity) &&
             !(res.duality_gap > tol.complementarity);
  return res;
}

}  // namespace stricteq::lp

#endif  // STRICTEQ_LP_HPP_
