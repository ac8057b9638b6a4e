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

#ifndef STRICTEQ_MODEL_HPP_
#define STRICTEQ_MODEL_HPP_

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "stricteq/matrix.hpp"
#include "stricteq/mip.hpp"

namespace stricteq::model {

struct CommoditySpace {
  std::vector<std::string> names;
  int dimension() const { return static_cast<int>(names.size()); }
};

/// Bid with a convex decision set D = {d | G d <= h}, linear valuation
/// v(d) = c^T d and linear quantity map f(d) = Q d (rows = commodities).
template <typename N>
struct ConvexBid {
  std::string id;
  std::vector<N> c;
  Mat<N> Q;
  Mat<N> G;
  std::vector<N> h;

  int num_vars() const { return static_cast<int>(c.size()); }
};

/// Bid whose decision set D = {d in R^(n-z) x Z^z | A d <= a} mixes
/// continuous and integer coordinates; the trailing z coordinates are
/// integer. (A, a) is declared to describe conv(D) exactly; see
/// validate_hull.
template <typename N>
struct MixedIntegerBid {
  std::string id;
  std::vector<N> c;
  Mat<N> Q;
  Mat<N> A;
  std::vector<N> a;
  int z = 1;

  int num_vars() const { return static_cast<int>(c.size()); }
  int first_integer_var() const { return num_vars() - z; }
};

template <typename N>
struct Auction {
  CommoditySpace space;
  std::vector<ConvexBid<N>> convex_bids;
  std::vector<MixedIntegerBid<N>> mi_bids;

  /// Deterministic bid order: lexicographic by id within each class.
  void canonicalize() {
    std::sort(convex_bids.begin(), convex_bids.end(),
              [](const auto& x, const auto& y) { return x.id < y.id; });
    std::sort(mi_bids.begin(), mi_bids.end(),
              [](const auto& x, const auto& y) { return x.id < y.id; });
  }

  int num_bids() const {
    return static_cast<int>(convex_bids.size() + mi_bids.size());
  }
};

template <typename N>
using Allocation = std::map<std::string, std::vector<N>>;

template <typename N>
using PriceVector = std::vector<N>;

template <typename N>
struct SettlementRecord {
  std::map<std::string, N> values;     // v_i(d_i)
  std::map<std::string, N> transfers;  // pi^T f_i(d_i), paid by the bid
  std::map<std::string, N> surpluses;  // value minus transfer
  N welfare = scalar_traits<N>::zero();
  std::vector<N> clearing_residual;    // sum_i f_i(d_i), per commodity
};

/// Settles an allocation at prices pi. Requires a decision vector for
/// every bid in the auction.
template <typename N>
SettlementRecord<N> evaluate(const Auction<N>& auction,
                             const Allocation<N>& alloc,
                             const PriceVector<N>& pi) {
  SettlementRecord<N> out;
  out.clearing_residual.assign(auction.space.dimension(),
                               scalar_traits<N>::zero());
  auto settle = [&](const std::string& id, const std::vector<N>& c,
                    const Mat<N>& Q) {
    const auto it = alloc.find(id);
    if (it == alloc.end()) {
      throw std::invalid_argument("allocation missing bid " + id);
    }
    const std::vector<N>& d = it->second;
    if (static_cast<int>(d.size()) != static_cast<int>(c.size())) {
      throw std::invalid_argument("allocation size mismatch for bid " + id);
    }
    const std::vector<N> q = Q.apply(d);
    const N value = dot(c, d);
    const N transfer = dot(pi, q);
    out.values[id] = value;
    out.transfers[id] = transfer;
    out.surpluses[id] = value - transfer;
    out.welfare += value;
    for (int t = 0; t < static_cast<int>(q.size()); ++t) {
      out.clearing_residual[t] += q[t];
    }
  };
  for (const auto& b : auction.convex_bids) settle(b.id, b.c, b.Q);
  for (const auto& b : auction.mi_bids) settle(b.id, b.c, b.Q);
  return out;
}

template <typename N>
struct ValueQueryResult {
  bool feasible = false;
  N value = scalar_traits<N>::zero();
  std::vector<N> delta;
};

namespace detail {

// Feasibility rows for a bundle query: f(d) = q as two inequality
// groups, relaxed by eps in float mode.
template <typename N>
void add_bundle_rows(lp::LinearProgram<N>& prob, const Mat<N>& Q,
                     const std::vector<N>& q, const N& eps) {
  for (int t = 0; t < Q.rows(); ++t) {
    prob.add_row(Q.row(t), lp::Relation::less_equal, q[t] + eps);
    prob.add_row(Q.row(t), lp::Relation::greater_equal, q[t] - eps);
  }
}

template <typename N>
void add_polytope_rows(lp::LinearProgram<N>& prob, const Mat<N>& A,
                       const std::vector<N>& a) {
  for (int k = 0; k < A.rows(); ++k) {
    prob.add_row(A.row(k), lp::Relation::less_equal, a[k]);
  }
}

template <typename N>
lp::LinearProgram<N> bid_program(const std::vector<N>& objective,
                                 const Mat<N>& A, const std::vector<N>& a) {
  lp::LinearProgram<N> prob;
  prob.sense = lp::Sense::maximize;
  for (const N& c : objective) {
    prob.add_variable(c, std::nullopt, std::nullopt);
  }
  add_polytope_rows(prob, A, a);
  return prob;
}

// Objective of the individual problem at prices pi: c - Q^T pi.
template <typename N>
std::vector<N> surplus_objective(const std::vector<N>& c, const Mat<N>& Q,
                                 const PriceVector<N>& pi) {
  std::vector<N> obj = c;
  const std::vector<N> qt = Q.apply_transposed(pi);
  for (size_t j = 0; j < obj.size(); ++j) obj[j] -= qt[j];
  return obj;
}

}  // namespace detail

/// Indirect valuation of a bundle q: max v(d) over {d in D | f(d) = q}.
template <typename N>
ValueQueryResult<N> value_query(const ConvexBid<N>& bid,
                                const std::vector<N>& q,
                                const Tolerances<N>& tol) {
  auto prob = detail::bid_program(bid.c, bid.G, bid.h);
  detail::add_bundle_rows(prob, bid.Q, q, tol.feasibility);
  const auto sol = lp::solve_lp(prob, tol);
  if (sol.status != lp::LpStatus::optimal) return {};
  return {true, sol.objective, sol.x};
}

template <typename N>
ValueQueryResult<N> value_query(const MixedIntegerBid<N>& bid,
                                const std::vector<N>& q,
                                const Tolerances<N>& tol) {
  mip::MixedIntegerProgram<N> prob;
  prob.relaxation = detail::bid_program(bid.c, bid.A, bid.a);
  detail::add_bundle_rows(prob.relaxation, bid.Q, q, tol.feasibility);
  for (int j = bid.first_integer_var(); j < bid.num_vars(); ++j) {
    prob.integer_variables.push_back(j);
  }
  const auto sol = mip::solve_mip(prob, tol);
  if (sol.status != lp::LpStatus::optimal) return {};
  return {true, sol.objective, sol.x};
}

template <typename N>
struct IndividualOptimum {
  N value = scalar_traits<N>::zero();
  std::vector<N> delta;
};

/// Best response of a convex bid to prices: max v(d) - pi^T f(d) over D.
template <typename N>
IndividualOptimum<N> individual_optimum(const ConvexBid<N>& bid,
                                        const PriceVector<N>& pi,
                                        const Tolerances<N>& tol) {
  auto prob =
      detail::bid_program(detail::surplus_objective(bid.c, bid.Q, pi),
                          bid.G, bid.h);
  const auto sol = lp::solve_lp(prob, tol);
  if (sol.status != lp::LpStatus::optimal) {
    throw std::invalid_argument("bid " + bid.id +
                                " has an empty or unbounded decision set");
  }
  return {sol.objective, sol.x};
}

/// Best response of a mixed-integer bid. `gate` scales the hull
/// right-hand side like the master's acceptance variable: nullopt or 1
/// optimizes over D, 0 over {d | A d <= 0} = {0}.
template <typename N>
IndividualOptimum<N> individual_optimum(const MixedIntegerBid<N>& bid,
                                        const PriceVector<N>& pi,
                                        const Tolerances<N>& tol,
                                        std::optional<int> gate = std::nullopt) {
  std::vector<N> rhs = bid.a;
  if (gate && *gate == 0) {
    for (N& v : rhs) v = scalar_traits<N>::zero();
  }
  mip::MixedIntegerProgram<N> prob;
  prob.relaxation = detail::bid_program(
      detail::surplus_objective(bid.c, bid.Q, pi), bid.A, rhs);
  for (int j = bid.first_integer_var(); j < bid.num_vars(); ++j) {
    prob.integer_variables.push_back(j);
  }
  const auto sol = mip::solve_mip(prob, tol);
  if (sol.status != lp::LpStatus::optimal) {
    throw std::invalid_argument("bid " + bid.id +
                                " has an empty or unbounded decision set");
  }
  return {sol.objective, sol.x};
}

struct VertexBudget {
  int max_dimension = 6;
  long max_bases = 20000;
};

namespace detail {

// Solves M x = b by Gauss-Jordan with partial pivoting. Returns
// nullopt when singular (within eps in float mode).
template <typename N>
std::optional<std::vector<N>> solve_square(Mat<N> M, std::vector<N> b,
                                           const N& eps) {
  const int n = M.cols();
  for (int col = 0; col < n; ++col) {
    int piv = -1;
    N best = eps;
    for (int i = col; i < n; ++i) {
      const N mag = scalar_traits<N>::abs(M(i, col));
      if (mag > best) {
        best = mag;
        piv = i;
      }
    }
    if (piv < 0) return std::nullopt;
    if (piv != col) {
      for (int j = 0; j < n; ++j) std::swap(M(piv, j), M(col, j));
      std::swap(b[piv], b[col]);
    }
    const N p = M(col, col);
    for (int j = 0; j < n; ++j) M(col, j) /= p;
    b[col] /= p;
    for (int i = 0; i < n; ++i) {
      if (i == col) continue;
      const N f = M(i, col);
      if (f == scalar_traits<N>::zero()) continue;
      for (int j = 0; j < n; ++j) M(i, j) -= f * M(col, j);
      b[i] -= f * b[col];
    }
  }
  return b;
}

}  // namespace detail

/// All vertices of the bounded polytope {d | A d <= a}, by exhaustive
/// basis enumeration. Returns nullopt when the budget is exceeded.
/// Deterministic order: lexicographically sorted coordinates.
template <typename N>
std::optional<std::vector<std::vector<N>>> enumerate_polytope_vertices(
    const Mat<N>& A, const std::vector<N>& a, const Tolerances<N>& tol,
    const VertexBudget& budget = {}) {
  const int n = A.cols();
  const int m = A.rows();
  if (n > budget.max_dimension || n > m) return std::nullopt;
  if (n == 0) {
    // Zero-dimensional polytope: the empty point, if feasible.
    for (const N& v : a) {
      if (v < -tol.feasibility) return std::vector<std::vector<N>>{};
    }
    return std::vector<std::vector<N>>{{}};
  }
  long bases = 1;
  for (int i = 0; i < n; ++i) {
    bases = bases * (m - i) / (i + 1);
    if (bases > budget.max_bases) return std::nullopt;
  }

  std::vector<std::vector<N>> vertices;
  std::vector<int> pick(n);
  for (int i = 0; i < n; ++i) pick[i] = i;
  auto advance = [&]() {
    int i = n - 1;
    while (i >= 0 && pick[i] == m - n + i) --i;
    if (i < 0) return false;
    ++pick[i];
    for (int j = i + 1; j < n; ++j) pick[j] = pick[j - 1] + 1;
    return true;
  };
  do {
    Mat<N> M(n, n);
    std::vector<N> b(n);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) M(i, j) = A(pick[i], j);
      b[i] = a[pick[i]];
    }
    const auto x = detail::solve_square(M, b, tol.feasibility);
    if (!x) continue;
    bool feasible = true;
    for (int k = 0; k < m && feasible; ++k) {
      N act = scalar_traits<N>::zero();
      for (int j = 0; j < n; ++j) act += A(k, j) * (*x)[j];
      if (act > a[k] + tol.feasibility) feasible = false;
    }
    if (!feasible) continue;
    bool duplicate = false;
    for (const auto& v : vertices) {
      bool same = true;
      for (int j = 0; j < n && same; ++j) {
        if (!approx_equal(v[j], (*x)[j], tol.feasibility)) same = false;
      }
      if (same) {
        duplicate = true;
        break;
      }
    }
    if (!duplicate) vertices.push_back(*x);
  } while (advance());
  std::sort(vertices.begin(), vertices.end());
  return vertices;
}

enum class HullCheck { pass, fail, skipped };

template <typename N>
struct HullReport {
  HullCheck result = HullCheck::skipped;
  std::vector<N> witness;
  std::string detail;
};

/// Checks that the declared hull {A d <= a} equals conv(D). Since D is
/// cut out by the same constraints plus integrality, equality holds
/// exactly when every vertex of the declared polytope has integral
/// trailing coordinates.
template <typename N>
HullReport<N> validate_hull(const MixedIntegerBid<N>& bid,
                            const Tolerances<N>& tol,
                            const VertexBudget& budget = {}) {
  HullReport<N> out;
  const auto vertices =
      enumerate_polytope_vertices(bid.A, bid.a, tol, budget);
  if (!vertices) {
    out.detail = "vertex enumeration budget exceeded";
    return out;
  }
  for (const auto& v : vertices.value()) {
    for (int j = bid.first_integer_var(); j < bid.num_vars(); ++j) {
      const N f = mip::detail::fractionality(v[j]);
      if (f > tol.integrality) {
        out.result = HullCheck::fail;
        out.witness = v;
        out.detail = "declared hull has a vertex with fractional integer part";
        return out;
      }
    }
  }
  out.result = HullCheck::pass;
  return out;
}

/// Variant for an explicitly listed decision set: every point must
/// satisfy the declared constraints, and every declared-hull vertex
/// must lie in the convex hull of the points.
template <typename N>
HullReport<N> validate_hull(const MixedIntegerBid<N>& bid,
                            const std::vector<std::vector<N>>& points,
                            const Tolerances<N>& tol,
                            const VertexBudget& budget = {}) {
  HullReport<N> out;
  for (const auto& p : points) {
    const auto act = bid.A.apply(p);
    for (int k = 0; k < bid.A.rows(); ++k) {
      if (act[k] > bid.a[k] + tol.feasibility) {
        out.result = HullCheck::fail;
        out.witness = p;
        out.detail = "decision point outside the declared hull";
        return out;
      }
    }
  }
  const auto vertices =
      enumerate_polytope_vertices(bid.A, bid.a, tol, budget);
  if (!vertices) {
    out.detail = "vertex enumeration budget exceeded";
    return out;
  }
  for (const auto& v : vertices.value()) {
    // v in conv(points): a plain feasibility LP over the weights.
    lp::LinearProgram<N> prob;
    prob.sense = lp::Sense::maximize;
    for (size_t k = 0; k < points.size(); ++k) {
      prob.add_variable(scalar_traits<N>::zero(), scalar_traits<N>::zero(),
                        std::nullopt);
    }
    for (int j = 0; j < bid.num_vars(); ++j) {
      std::vector<N> row(points.size());
      for (size_t k = 0; k < points.size(); ++k) row[k] = points[k][j];
      prob.add_row(std::move(row), lp::Relation::equal, v[j]);
    }
    prob.add_row(std::vector<N>(points.size(), scalar_traits<N>::from_long(1)),
                 lp::Relation::equal, scalar_traits<N>::from_long(1));
    if (lp::solve_lp(prob, tol).status != lp::LpStatus::optimal) {
      out.result = HullCheck::fail;
      out.witness = v;
      out.detail = "declared hull vertex outside conv of decision set";
      return out;
    }
  }
  out.result = HullCheck::pass;
  return out;
}

struct ValidationIssue {
  bool error = true;  // false: warning
  std::string bid_id;
  std::string message;
};

struct ValidationReport {
  bool valid = true;
  std::vector<ValidationIssue> issues;
  std::map<std::string, bool> zero_in_decision_set;

  void add_error(const std::string& id, const std::string& msg) {
    valid = false;
    issues.push_back({true, id, msg});
  }
  void add_warning(const std::string& id, const std::string& msg) {
    issues.push_back({false, id, msg});
  }
};

namespace detail {

template <typename N>
void check_bid_geometry(const std::string& id, const Mat<N>& A,
                        const std::vector<N>& a, const Tolerances<N>& tol,
                        ValidationReport& report) {
  lp::LinearProgram<N> prob;
  prob.sense = lp::Sense::maximize;
  for (int j = 0; j < A.cols(); ++j) {
    prob.add_variable(scalar_traits<N>::zero(), std::nullopt, std::nullopt);
  }
  add_polytope_rows(prob, A, a);
  // Non-empty?
  if (lp::solve_lp(prob, tol).status == lp::LpStatus::infeasible) {
    report.add_error(id, "decision set is empty");
    return;
  }
  // Bounded in every coordinate?
  for (int j = 0; j < A.cols(); ++j) {
    for (const int dir : {1, -1}) {
      for (auto& c : prob.objective) c = scalar_traits<N>::zero();
      prob.objective[j] = scalar_traits<N>::from_long(dir);
      if (lp::solve_lp(prob, tol).status == lp::LpStatus::unbounded) {
        report.add_error(id, "decision set is unbounded in coordinate " +
                                 std::to_string(j));
        return;
      }
    }
  }
}

}  // namespace detail

/// Structural and geometric validation of a full instance.
template <typename N>
ValidationReport validate_instance(const Auction<N>& auction,
                                   const Tolerances<N>& tol) {
  ValidationReport report;
  const int m = auction.space.dimension();
  if (m < 1) report.add_error("", "commodity space is empty");
  {
    std::set<std::string> seen;
    for (const auto& name : auction.space.names) {
      if (name.empty()) report.add_error("", "empty commodity name");
      if (!seen.insert(name).second) {
        report.add_error("", "duplicate commodity " + name);
      }
    }
  }
  std::set<std::string> ids;
  auto check_common = [&](const std::string& id, const std::vector<N>& c,
                          const Mat<N>& Q, const Mat<N>& A,
                          const std::vector<N>& a) {
    if (id.empty()) report.add_error(id, "empty bid id");
    if (!ids.insert(id).second) report.add_error(id, "duplicate bid id");
    const int n = static_cast<int>(c.size());
    if (n < 1) report.add_error(id, "bid has no decision variables");
    if (Q.rows() != m || Q.cols() != n) {
      report.add_error(id, "quantity matrix shape mismatch");
      return false;
    }
    if (A.cols() != n || A.rows() != static_cast<int>(a.size())) {
      report.add_error(id, "constraint shape mismatch");
      return false;
    }
    if constexpr (!scalar_traits<N>::exact) {
      for (const N& v : c) {
        if (!scalar_traits<N>::finite(v)) {
          report.add_error(id, "non-finite valuation coefficient");
          return false;
        }
      }
    }
    return true;
  };

  for (const auto& b : auction.convex_bids) {
    if (!check_common(b.id, b.c, b.Q, b.G, b.h)) continue;
    detail::check_bid_geometry(b.id, b.G, b.h, tol, report);
    bool zero_in = true;
    for (const N& v : b.h) {
      if (v < -tol.feasibility) zero_in = false;
    }
    report.zero_in_decision_set[b.id] = zero_in;
  }
  for (const auto& b : auction.mi_bids) {
    if (!check_common(b.id, b.c, b.Q, b.A, b.a)) continue;
    if (b.z < 1 || b.z > b.num_vars()) {
      report.add_error(b.id, "integer variable count out of range");
      continue;
    }
    detail::check_bid_geometry(b.id, b.A, b.a, tol, report);
    bool zero_in = true;
    for (const N& v : b.a) {
      if (v < -tol.feasibility) zero_in = false;
    }
    report.zero_in_decision_set[b.id] = zero_in;
    if (!zero_in) {
      report.add_warning(
          b.id, "rejection (d = 0) is not in the declared decision set");
    }
  }
  return report;
}

}  // namespace stricteq::model

#endif  // STRICTEQ_MODEL_HPP_
