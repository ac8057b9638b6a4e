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

#ifndef STRICTEQ_MIP_HPP_
#define STRICTEQ_MIP_HPP_

#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <vector>

#include "stricteq/lp.hpp"

namespace stricteq::mip {

template <typename N>
struct MixedIntegerProgram {
  lp::LinearProgram<N> relaxation;
  std::vector<int> integer_variables;  // indices into relaxation variables
};

template <typename N>
struct IncumbentRecord {
  long node;
  N objective;
};

template <typename N>
struct MipSolution {
  lp::LpStatus status = lp::LpStatus::infeasible;
  std::vector<N> x;
  N objective = scalar_traits<N>::zero();
  long nodes_explored = 0;
  std::vector<IncumbentRecord<N>> incumbents;
};

struct BudgetExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

namespace detail {

// Distance of v to the nearest integer; zero means integral.
template <typename N>
N fractionality(const N& v) {
  const N f = v - scalar_traits<N>::floor(v);
  const N g = scalar_traits<N>::from_long(1) - f;
  return f < g ? f : g;
}

}  // namespace detail

/// Exact branch and bound over the LP relaxation.
///
/// Search order is fully deterministic: branching picks the most
/// fractional integer variable (ties: lowest index), node selection is
/// best bound (ties: shallower depth, then creation order), and the
/// "floor" child is created before the "ceil" child. The LP relaxation
/// must be bounded; pruning compares bounds exactly, so the returned
/// optimum is exact in rational mode.
template <typename N>
MipSolution<N> solve_mip(const MixedIntegerProgram<N>& prob,
                         const Tolerances<N>& tol,
                         const lp::SimplexOptions& opts = {}) {
  struct Node {
    std::vector<lp::Bound<N>> bounds;
    N bound;  // parent relaxation value, upper bound for maximization
    int depth;
    long id;
  };
  const bool maximize = prob.relaxation.sense == lp::Sense::maximize;

  // Orders nodes best-bound first under either sense.
  auto better = [maximize](const Node& a, const Node& b) {
    if (!(a.bound == b.bound)) return maximize ? a.bound > b.bound
                                               : a.bound < b.bound;
    if (a.depth != b.depth) return a.depth < b.depth;
    return a.id < b.id;
  };

  MipSolution<N> out;
  std::multiset<Node, decltype(better)> queue(better);

  lp::LinearProgram<N> work = prob.relaxation;
  lp::LpSolution<N> root = lp::solve_lp(work, tol, opts);
  ++out.nodes_explored;
  if (root.status == lp::LpStatus::unbounded) {
    throw std::invalid_argument("MIP relaxation is unbounded");
  }
  if (root.status == lp::LpStatus::infeasible) return out;

  std::optional<N> incumbent_value;
  std::vector<N> incumbent_x;
  long next_id = 1;

  auto improves = [&](const N& v) {
    if (!incumbent_value) return true;
    return maximize ? v > *incumbent_value : v < *incumbent_value;
  };
  auto worth_expanding = [&](const N& bound) {
    if (!incumbent_value) return true;
    return maximize ? bound > *incumbent_value : bound < *incumbent_value;
  };

  auto process = [&](const std::vector<lp::Bound<N>>& bounds,
                     const lp::LpSolution<N>& rel, int depth, long node_id) {
    if (rel.status != lp::LpStatus::optimal) return;
    if (!worth_expanding(rel.objective)) return;

    int branch_var = -1;
    N branch_frac = scalar_traits<N>::zero();
    for (int v : prob.integer_variables) {
      const N f = detail::fractionality(rel.x[v]);
      if (f > tol.integrality && f > branch_frac) {
        branch_frac = f;
        branch_var = v;
      }
    }
    if (branch_var < 0) {
      if (improves(rel.objective)) {
        incumbent_value = rel.objective;
        incumbent_x = rel.x;
        out.incumbents.push_back({node_id, rel.objective});
      }
      return;
    }
    const N v = rel.x[branch_var];
    Node down{bounds, rel.objective, depth + 1, next_id++};
    Node up{bounds, rel.objective, depth + 1, next_id++};
    const N fl = scalar_traits<N>::floor(v);
    down.bounds[branch_var].upper = fl;
    up.bounds[branch_var].lower = fl + scalar_traits<N>::from_long(1);
    // Children whose domain collapses to empty are dropped by the LP.
    queue.insert(down);
    queue.insert(up);
  };

  process(prob.relaxation.bounds, root, 0, 0);

  while (!queue.empty()) {
    Node node = *queue.begin();
    queue.erase(queue.begin());
    if (!worth_expanding(node.bound)) continue;
    work.bounds = node.bounds;
    const lp::LpSolution<N> rel = lp::solve_lp(work, tol, opts);
    ++out.nodes_explored;
    process(node.bounds, rel, node.depth, node.id);
  }

  if (!incumbent_value) return out;  // infeasible: no integral point
  out.status = lp::LpStatus::optimal;
  out.objective = *incumbent_value;
  out.x = std::move(incumbent_x);
  return out;
}

struct EnumerationBudget {
  int max_integer_variables = 6;
  long max_assignments = 100000;
};

/// Bounds of an integer variable over the LP relaxation, via two LPs.
template <typename N>
std::pair<N, N> integer_variable_range(const MixedIntegerProgram<N>& prob,
                                       int var, const Tolerances<N>& tol) {
  lp::LinearProgram<N> work = prob.relaxation;
  for (auto& c : work.objective) c = scalar_traits<N>::zero();
  work.objective[var] = scalar_traits<N>::from_long(1);
  work.sense = lp::Sense::minimize;
  const auto lo = lp::solve_lp(work, tol);
  work.sense = lp::Sense::maximize;
  const auto hi = lp::solve_lp(work, tol);
  if (lo.status != lp::LpStatus::optimal ||
      hi.status != lp::LpStatus::optimal) {
    throw BudgetExceeded("integer variable range is unbounded or empty");
  }
  return {lo.objective, hi.objective};
}

/// Enumerates every optimal mixed solution: all integer assignments
/// within their relaxation ranges, each completed by one LP solve.
/// Returns the full argmax set in assignment (odometer) order.
template <typename N>
std::vector<std::vector<N>> enumerate_optima(
    const MixedIntegerProgram<N>& prob, const Tolerances<N>& tol,
    const EnumerationBudget& budget = {}) {
  const int k = static_cast<int>(prob.integer_variables.size());
  if (k > budget.max_integer_variables) {
    throw BudgetExceeded("too many integer variables to enumerate");
  }
  std::vector<long> lo(k), hi(k);
  long count = 1;
  for (int i = 0; i < k; ++i) {
    const auto [a, b] = integer_variable_range(prob, prob.integer_variables[i], tol);
    lo[i] = scalar_traits<N>::floor_long(
        scalar_traits<N>::ceil(a - tol.integrality));
    hi[i] = scalar_traits<N>::floor_long(b + tol.integrality);
    const long width = hi[i] - lo[i] + 1;
    if (width <= 0) return {};
    if (count > budget.max_assignments / width) {
      throw BudgetExceeded("assignment count exceeds enumeration budget");
    }
    count *= width;
  }

  lp::LinearProgram<N> work = prob.relaxation;
  std::vector<long> cur = lo;
  std::optional<N> best;
  std::vector<std::vector<N>> argmax;
  const bool maximize = prob.relaxation.sense == lp::Sense::maximize;

  for (long step = 0; step < count; ++step) {
    for (int i = 0; i < k; ++i) {
      const int v = prob.integer_variables[i];
      work.bounds[v].lower = scalar_traits<N>::from_long(cur[i]);
      work.bounds[v].upper = scalar_traits<N>::from_long(cur[i]);
    }
    const auto rel = lp::solve_lp(work, tol);
    if (rel.status == lp::LpStatus::optimal) {
      const N v = rel.objective;
      if (!best) {
        best = v;
        argmax.push_back(rel.x);
      } else {
        const Ordering ord = compare(v, *best, tol.feasibility);
        const bool strictly_better = maximize ? ord == Ordering::greater
                                              : ord == Ordering::less;
        if (strictly_better) {
          best = v;
          argmax.clear();
          argmax.push_back(rel.x);
        } else if (ord == Ordering::equal) {
          argmax.push_back(rel.x);
        }
      }
    }
    for (int i = 0; i < k; ++i) {  // odometer increment
      if (++cur[i] <= hi[i]) break;
      cur[i] = lo[i];
    }
  }
  return argmax;
}

}  // namespace stricteq::mip

#endif  // STRICTEQ_MIP_HPP_
