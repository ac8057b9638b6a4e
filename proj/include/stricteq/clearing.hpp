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

#ifndef STRICTEQ_CLEARING_HPP_
#define STRICTEQ_CLEARING_HPP_

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "stricteq/model.hpp"

namespace stricteq::clearing {

/// Acceptance pattern: bid id -> 0 (rejected) or 1 (admitted to D).
using LambdaSelection = std::map<std::string, int>;

struct CutPool {
  std::vector<LambdaSelection> no_good;           // excluded patterns
  std::vector<std::vector<std::string>> heuristic;  // sum over L <= |L|-1
  size_t size() const { return no_good.size() + heuristic.size(); }
};

template <typename N>
struct DualCertificate {
  model::PriceVector<N> pi;
  std::map<std::string, std::vector<N>> mu;
  N gap = scalar_traits<N>::zero();
};

/// Per-commodity interval of prices compatible with a fixed allocation
/// and certificate optimality; nullopt endpoint = unbounded side.
template <typename N>
struct PriceWindow {
  std::vector<std::optional<N>> lower;
  std::vector<std::optional<N>> upper;
};

enum class ClearingStatus {
  equilibrium,
  model_a_optimal,
  welfare_only,
  infeasible,
};

inline const char* to_string(ClearingStatus s) {
  switch (s) {
    case ClearingStatus::equilibrium: return "equilibrium";
    case ClearingStatus::model_a_optimal: return "model_a_optimal";
    case ClearingStatus::welfare_only: return "welfare_only";
    case ClearingStatus::infeasible: return "infeasible";
  }
  return "?";
}

template <typename N>
struct IterationRecord {
  int iter = 0;
  LambdaSelection lambda;
  N welfare = scalar_traits<N>::zero();
  N gap = scalar_traits<N>::zero();
  std::string cut;  // "", "no_good", "heuristic"
};

template <typename N>
struct ClearingOutcome {
  ClearingStatus status = ClearingStatus::infeasible;
  N welfare = scalar_traits<N>::zero();
  model::Allocation<N> allocation;
  std::optional<model::PriceVector<N>> prices;
  std::optional<PriceWindow<N>> window;
  std::optional<model::SettlementRecord<N>> settlement;
  std::optional<DualCertificate<N>> certificate;
  std::optional<LambdaSelection> lambda;
  std::vector<IterationRecord<N>> iterations;
  std::string detail;
};

/// Variable layout of the master program: one block of decision
/// variables per bid, then one acceptance variable per mixed bid.
struct MasterLayout {
  struct Block {
    std::string id;
    int offset = 0;
    int n = 0;
    int lambda_col = -1;
  };
  std::vector<Block> convex;
  std::vector<Block> mi;
  int num_vars = 0;
};

/// Welfare-maximizing master with gated mixed-integer bids:
///   max sum_i c_i^T d_i
///   s.t. sum_i Q_i d_i = 0, G_i d_i <= h_i,
///        A_i d_i <= lambda_i a_i, lambda_i in {0,1}, cuts.
template <typename N>
std::pair<mip::MixedIntegerProgram<N>, MasterLayout> build_master(
    const model::Auction<N>& auction, const CutPool& cuts) {
  mip::MixedIntegerProgram<N> prob;
  auto& rel = prob.relaxation;
  rel.sense = lp::Sense::maximize;
  MasterLayout layout;

  for (const auto& b : auction.convex_bids) {
    MasterLayout::Block blk{b.id, rel.num_vars(), b.num_vars(), -1};
    for (int j = 0; j < b.num_vars(); ++j) {
      rel.add_variable(b.c[j], std::nullopt, std::nullopt);
    }
    layout.convex.push_back(blk);
  }
  for (const auto& b : auction.mi_bids) {
    MasterLayout::Block blk{b.id, rel.num_vars(), b.num_vars(), -1};
    for (int j = 0; j < b.num_vars(); ++j) {
      rel.add_variable(b.c[j], std::nullopt, std::nullopt);
    }
    layout.mi.push_back(blk);
  }
  for (auto& blk : layout.mi) {
    blk.lambda_col = rel.add_variable(scalar_traits<N>::zero(),
                                      scalar_traits<N>::zero(),
                                      scalar_traits<N>::from_long(1));
  }
  layout.num_vars = rel.num_vars();

  const N zero = scalar_traits<N>::zero();
  // Clearing rows, one per commodity.
  for (int t = 0; t < auction.space.dimension(); ++t) {
    std::vector<N> row(layout.num_vars, zero);
    for (size_t b = 0; b < auction.convex_bids.size(); ++b) {
      const auto& blk = layout.convex[b];
      for (int j = 0; j < blk.n; ++j) {
        row[blk.offset + j] = auction.convex_bids[b].Q(t, j);
      }
    }
    for (size_t b = 0; b < auction.mi_bids.size(); ++b) {
      const auto& blk = layout.mi[b];
      for (int j = 0; j < blk.n; ++j) {
        row[blk.offset + j] = auction.mi_bids[b].Q(t, j);
      }
    }
    rel.add_row(std::move(row), lp::Relation::equal, zero);
  }
  // Convex bid constraints.
  for (size_t b = 0; b < auction.convex_bids.size(); ++b) {
    const auto& bid = auction.convex_bids[b];
    const auto& blk = layout.convex[b];
    for (int k = 0; k < bid.G.rows(); ++k) {
      std::vector<N> row(layout.num_vars, zero);
      for (int j = 0; j < blk.n; ++j) row[blk.offset + j] = bid.G(k, j);
      rel.add_row(std::move(row), lp::Relation::less_equal, bid.h[k]);
    }
  }
  // Gated hull constraints: A d - a lambda <= 0.
  for (size_t b = 0; b < auction.mi_bids.size(); ++b) {
    const auto& bid = auction.mi_bids[b];
    const auto& blk = layout.mi[b];
    for (int k = 0; k < bid.A.rows(); ++k) {
      std::vector<N> row(layout.num_vars, zero);
      for (int j = 0; j < blk.n; ++j) row[blk.offset + j] = bid.A(k, j);
      row[blk.lambda_col] = -bid.a[k];
      rel.add_row(std::move(row), lp::Relation::less_equal, zero);
    }
    for (int j = bid.first_integer_var(); j < bid.num_vars(); ++j) {
      prob.integer_variables.push_back(blk.offset + j);
    }
    prob.integer_variables.push_back(blk.lambda_col);
  }
  // Cuts restrict only the acceptance variables.
  auto lambda_col = [&](const std::string& id) {
    for (const auto& blk : layout.mi) {
      if (blk.id == id) return blk.lambda_col;
    }
    throw std::invalid_argument("cut references unknown bid " + id);
  };
  for (const auto& pattern : cuts.no_good) {
    std::vector<N> row(layout.num_vars, zero);
    long ones = 0;
    for (const auto& [id, val] : pattern) {
      row[lambda_col(id)] = scalar_traits<N>::from_long(val == 0 ? 1 : -1);
      if (val != 0) ++ones;
    }
    rel.add_row(std::move(row), lp::Relation::greater_equal,
                scalar_traits<N>::from_long(1 - ones));
  }
  for (const auto& group : cuts.heuristic) {
    std::vector<N> row(layout.num_vars, zero);
    for (const auto& id : group) {
      row[lambda_col(id)] = scalar_traits<N>::from_long(1);
    }
    rel.add_row(std::move(row), lp::Relation::less_equal,
                scalar_traits<N>::from_long(static_cast<long>(group.size()) - 1));
  }
  return {std::move(prob), std::move(layout)};
}

/// Pins the acceptance variables to a fixed pattern.
template <typename N>
void fix_lambda(mip::MixedIntegerProgram<N>& prob, const MasterLayout& layout,
                const LambdaSelection& lambda) {
  for (const auto& blk : layout.mi) {
    const auto it = lambda.find(blk.id);
    if (it == lambda.end()) continue;
    const N v = scalar_traits<N>::from_long(it->second);
    prob.relaxation.bounds[blk.lambda_col].lower = v;
    prob.relaxation.bounds[blk.lambda_col].upper = v;
  }
}

template <typename N>
model::Allocation<N> extract_allocation(const MasterLayout& layout,
                                        const std::vector<N>& x) {
  model::Allocation<N> alloc;
  for (const auto& blk : layout.convex) {
    alloc[blk.id] = std::vector<N>(x.begin() + blk.offset,
                                   x.begin() + blk.offset + blk.n);
  }
  for (const auto& blk : layout.mi) {
    alloc[blk.id] = std::vector<N>(x.begin() + blk.offset,
                                   x.begin() + blk.offset + blk.n);
  }
  return alloc;
}

template <typename N>
LambdaSelection extract_lambda(const MasterLayout& layout,
                               const std::vector<N>& x,
                               const Tolerances<N>& tol) {
  LambdaSelection sel;
  for (const auto& blk : layout.mi) {
    const N half = scalar_traits<N>::from_long(1) /
                   scalar_traits<N>::from_long(2);
    (void)tol;
    sel[blk.id] = x[blk.lambda_col] > half ? 1 : 0;
  }
  return sel;
}

/// Layout of the pricing program: prices first, then one multiplier
/// block per bid (convex bids in auction order, then mixed bids).
struct PriceLpLayout {
  struct MuBlock {
    std::string id;
    int offset = 0;
    int rows = 0;
    bool mixed_integer = false;
  };
  int num_pi = 0;
  std::vector<MuBlock> blocks;
};

/// Feasibility program for strict linear prices supporting (alloc,
/// lambda): stationarity of every bid's gated problem at its decision,
/// complementarity for convex bids by fixing multipliers of strictly
/// slack rows, and objective = total mixed-bid complementarity
/// violation (the "gap", zero iff loss-free prices exist).
template <typename N>
std::pair<lp::LinearProgram<N>, PriceLpLayout> build_price_lp(
    const model::Auction<N>& auction, const model::Allocation<N>& alloc,
    const LambdaSelection& lambda, const Tolerances<N>& tol) {
  lp::LinearProgram<N> prob;
  prob.sense = lp::Sense::minimize;
  PriceLpLayout layout;
  layout.num_pi = auction.space.dimension();
  const N zero = scalar_traits<N>::zero();

  for (int t = 0; t < layout.num_pi; ++t) {
    prob.add_variable(zero, std::nullopt, std::nullopt);
  }
  for (const auto& bid : auction.convex_bids) {
    const auto& d = alloc.at(bid.id);
    const auto act = bid.G.apply(d);
    PriceLpLayout::MuBlock blk{bid.id, prob.num_vars(), bid.G.rows(), false};
    for (int k = 0; k < bid.G.rows(); ++k) {
      const bool slack = bid.h[k] - act[k] > tol.feasibility;
      // Strictly slack rows carry zero multipliers (complementarity).
      prob.add_variable(zero, zero, slack ? std::optional<N>(zero)
                                          : std::nullopt);
    }
    layout.blocks.push_back(blk);
  }
  for (const auto& bid : auction.mi_bids) {
    PriceLpLayout::MuBlock blk{bid.id, prob.num_vars(), bid.A.rows(), true};
    const auto& d = alloc.at(bid.id);
    const auto act = bid.A.apply(d);
    const N lam = scalar_traits<N>::from_long(lambda.at(bid.id));
    for (int k = 0; k < bid.A.rows(); ++k) {
      // Objective weight: slack of the gated row at the decision.
      prob.add_variable(lam * bid.a[k] - act[k], zero, std::nullopt);
    }
    layout.blocks.push_back(blk);
  }

  // Stationarity rows: mu^T M + pi^T Q = c, per bid variable.
  size_t blk_idx = 0;
  auto add_stationarity = [&](const auto& bid, const Mat<N>& M) {
    const auto& blk = layout.blocks[blk_idx++];
    for (int j = 0; j < bid.num_vars(); ++j) {
      std::vector<N> row(prob.num_vars(), zero);
      for (int t = 0; t < layout.num_pi; ++t) row[t] = bid.Q(t, j);
      for (int k = 0; k < M.rows(); ++k) row[blk.offset + k] = M(k, j);
      prob.add_row(std::move(row), lp::Relation::equal, bid.c[j]);
    }
  };
  for (const auto& bid : auction.convex_bids) add_stationarity(bid, bid.G);
  for (const auto& bid : auction.mi_bids) add_stationarity(bid, bid.A);
  return {std::move(prob), std::move(layout)};
}

template <typename N>
struct PriceLpResult {
  bool feasible = false;
  N gap = scalar_traits<N>::zero();
  model::PriceVector<N> pi;
  std::map<std::string, std::vector<N>> mu;
  lp::LinearProgram<N> program;  // as built, for window passes
  PriceLpLayout layout;
};

template <typename N>
PriceLpResult<N> solve_price_lp(const model::Auction<N>& auction,
                                const model::Allocation<N>& alloc,
                                const LambdaSelection& lambda,
                                const Tolerances<N>& tol) {
  PriceLpResult<N> out;
  auto [prob, layout] = build_price_lp(auction, alloc, lambda, tol);
  const auto sol = lp::solve_lp(prob, tol);
  out.program = std::move(prob);
  out.layout = layout;
  if (sol.status != lp::LpStatus::optimal) return out;  // defensive
  out.feasible = true;
  out.gap = sol.objective;
  out.pi.assign(sol.x.begin(), sol.x.begin() + layout.num_pi);
  for (const auto& blk : layout.blocks) {
    out.mu[blk.id] = std::vector<N>(sol.x.begin() + blk.offset,
                                    sol.x.begin() + blk.offset + blk.rows);
  }
  return out;
}

namespace detail {

/// Minimizes coordinate `var` over `prob`; when unbounded below, picks
/// min(0, sup of the coordinate), keeping the reported point canonical.
template <typename N>
N pin_coordinate(lp::LinearProgram<N>& prob, int var,
                 const Tolerances<N>& tol) {
  const N zero = scalar_traits<N>::zero();
  for (auto& c : prob.objective) c = zero;
  prob.objective[var] = scalar_traits<N>::from_long(1);
  prob.sense = lp::Sense::minimize;
  const auto lo = lp::solve_lp(prob, tol);
  if (lo.status == lp::LpStatus::optimal) return lo.objective;
  lp::LinearProgram<N> capped = prob;
  capped.sense = lp::Sense::maximize;
  capped.bounds[var].upper = zero;
  const auto hi = lp::solve_lp(capped, tol);
  if (hi.status != lp::LpStatus::optimal) {
    throw std::logic_error("price window coordinate pin failed");
  }
  return hi.objective;
}

}  // namespace detail

/// Projects the optimal face of the pricing program onto each price
/// coordinate (the price window), and picks the canonical reported
/// price: lexicographically minimal, with coordinates that are
/// unbounded below clamped toward zero.
template <typename N>
std::pair<PriceWindow<N>, model::PriceVector<N>> price_window_and_report(
    const lp::LinearProgram<N>& price_program, const N& gap,
    int num_pi, const Tolerances<N>& tol) {
  const N zero = scalar_traits<N>::zero();
  lp::LinearProgram<N> base = price_program;
  // Pin the pricing objective at its optimum; the remaining feasible
  // set is exactly the optimal face.
  {
    std::vector<N> row = base.objective;
    base.add_row(std::move(row), lp::Relation::equal, gap);
  }
  PriceWindow<N> window;
  window.lower.assign(num_pi, std::nullopt);
  window.upper.assign(num_pi, std::nullopt);
  for (int t = 0; t < num_pi; ++t) {
    lp::LinearProgram<N> work = base;
    for (auto& c : work.objective) c = zero;
    work.objective[t] = scalar_traits<N>::from_long(1);
    work.sense = lp::Sense::minimize;
    const auto lo = lp::solve_lp(work, tol);
    if (lo.status == lp::LpStatus::optimal) window.lower[t] = lo.objective;
    work.sense = lp::Sense::maximize;
    const auto hi = lp::solve_lp(work, tol);
    if (hi.status == lp::LpStatus::optimal) window.upper[t] = hi.objective;
  }
  // Sequential lexicographic minimization for the reported price.
  lp::LinearProgram<N> work = base;
  model::PriceVector<N> report(num_pi, zero);
  for (int t = 0; t < num_pi; ++t) {
    report[t] = detail::pin_coordinate(work, t, tol);
    std::vector<N> row(work.num_vars(), zero);
    row[t] = scalar_traits<N>::from_long(1);
    work.add_row(std::move(row), lp::Relation::equal, report[t]);
  }
  return {std::move(window), std::move(report)};
}

namespace detail {

/// Completes a zero-gap iterate into a full outcome: canonical price,
/// window, settlement, certificate, and the equilibrium upgrade test.
template <typename N>
ClearingOutcome<N> finalize_outcome(const model::Auction<N>& auction,
                                    model::Allocation<N> alloc,
                                    LambdaSelection lambda, const N& welfare,
                                    PriceLpResult<N>& price,
                                    std::vector<IterationRecord<N>> iterations,
                                    const Tolerances<N>& tol) {
  ClearingOutcome<N> out;
  out.welfare = welfare;
  out.allocation = std::move(alloc);
  out.lambda = std::move(lambda);
  out.iterations = std::move(iterations);

  auto [window, report] = price_window_and_report(
      price.program, price.gap, price.layout.num_pi, tol);
  out.window = std::move(window);
  out.prices = report;
  out.settlement = model::evaluate(auction, out.allocation, report);

  // Multipliers consistent with the reported price: re-solve the
  // pricing program with every price coordinate pinned.
  {
    lp::LinearProgram<N> work = price.program;
    for (int t = 0; t < price.layout.num_pi; ++t) {
      std::vector<N> row(work.num_vars(), scalar_traits<N>::zero());
      row[t] = scalar_traits<N>::from_long(1);
      work.add_row(std::move(row), lp::Relation::equal, report[t]);
    }
    const auto sol = lp::solve_lp(work, tol);
    DualCertificate<N> cert;
    cert.gap = price.gap;
    cert.pi = report;
    if (sol.status == lp::LpStatus::optimal) {
      for (const auto& blk : price.layout.blocks) {
        cert.mu[blk.id] = std::vector<N>(
            sol.x.begin() + blk.offset, sol.x.begin() + blk.offset + blk.rows);
      }
    }
    out.certificate = std::move(cert);
  }

  // Equilibrium upgrade: every rejected bid must weakly prefer zero at
  // the reported price over its whole decision set.
  bool equilibrium = true;
  for (const auto& bid : auction.mi_bids) {
    if (out.lambda->at(bid.id) != 0) continue;
    bool zero_in = true;
    for (const N& v : bid.a) {
      if (v < -tol.feasibility) zero_in = false;
    }
    if (!zero_in) {
      equilibrium = false;
      break;
    }
    const auto opt = model::individual_optimum(bid, report, tol);
    if (opt.value > tol.feasibility) {
      equilibrium = false;
      break;
    }
  }
  out.status = equilibrium ? ClearingStatus::equilibrium
                           : ClearingStatus::model_a_optimal;
  return out;
}

}  // namespace detail

/// Welfare maximization alone: prices are not computed and the result
/// carries no optimality-at-price certificate.
template <typename N>
ClearingOutcome<N> solve_max_welfare(const model::Auction<N>& auction,
                                     const Tolerances<N>& tol) {
  auto [prob, layout] = build_master(auction, CutPool{});
  const auto sol = mip::solve_mip(prob, tol);
  ClearingOutcome<N> out;
  if (sol.status != lp::LpStatus::optimal) {
    out.status = ClearingStatus::infeasible;
    out.detail = "master problem is infeasible";
    return out;
  }
  out.status = ClearingStatus::welfare_only;
  out.welfare = sol.objective;
  out.allocation = extract_allocation(layout, sol.x);
  out.lambda = extract_lambda(layout, sol.x, tol);
  return out;
}

struct ModelAOptions {
  bool heuristic_cuts = false;  // false: exact no-good loop
  long max_iterations = 1L << 20;
};

/// Iterative master/pricing loop. Each round solves the welfare master
/// under the accrued cuts, prices the optimum, and either certifies a
/// zero gap or cuts the acceptance pattern and repeats.
template <typename N>
ClearingOutcome<N> solve_model_a(const model::Auction<N>& auction,
                                 const Tolerances<N>& tol,
                                 const ModelAOptions& opts) {
  for (const auto& bid : auction.mi_bids) {
    for (const N& v : bid.a) {
      if (v < -tol.feasibility) {
        throw std::invalid_argument(
            "bid " + bid.id + " cannot be rejected: 0 is outside its hull");
      }
    }
  }
  CutPool pool;
  std::vector<IterationRecord<N>> iterations;
  const long cap =
      std::min<long>(opts.max_iterations,
                     1L << std::min<size_t>(auction.mi_bids.size(), 20));

  for (long iter = 0; iter <= cap; ++iter) {
    auto [prob, layout] = build_master(auction, pool);
    const auto sol = mip::solve_mip(prob, tol);
    if (sol.status != lp::LpStatus::optimal) {
      ClearingOutcome<N> out;
      out.status = ClearingStatus::infeasible;
      out.iterations = std::move(iterations);
      out.detail = pool.size() == 0
                       ? "master problem is infeasible"
                       : "no acceptance pattern admits loss-free prices";
      return out;
    }
    auto alloc = extract_allocation(layout, sol.x);
    auto lambda = extract_lambda(layout, sol.x, tol);
    auto price = solve_price_lp(auction, alloc, lambda, tol);

    IterationRecord<N> rec;
    rec.iter = static_cast<int>(iter);
    rec.lambda = lambda;
    rec.welfare = sol.objective;
    rec.gap = price.feasible ? price.gap : scalar_traits<N>::from_long(-1);
    iterations.push_back(rec);

    if (price.feasible && !(price.gap > tol.complementarity)) {
      return detail::finalize_outcome(auction, std::move(alloc),
                                      std::move(lambda), sol.objective, price,
                                      std::move(iterations), tol);
    }

    // Cut the tested pattern and iterate.
    std::vector<std::string> loss_makers;
    if (opts.heuristic_cuts && price.feasible) {
      for (const auto& bid : auction.mi_bids) {
        const auto& d = alloc.at(bid.id);
        const auto act = bid.A.apply(d);
        const N lam = scalar_traits<N>::from_long(lambda.at(bid.id));
        N term = scalar_traits<N>::zero();
        const auto& mu = price.mu.at(bid.id);
        for (int k = 0; k < bid.A.rows(); ++k) {
          term += mu[k] * (act[k] - lam * bid.a[k]);
        }
        if (term < -tol.complementarity) loss_makers.push_back(bid.id);
      }
    }
    if (!loss_makers.empty()) {
      iterations.back().cut = "heuristic";
      pool.heuristic.push_back(std::move(loss_makers));
    } else {
      iterations.back().cut = "no_good";
      pool.no_good.push_back(lambda);
    }
  }
  throw std::logic_error("acceptance-pattern loop failed to terminate");
}

template <typename N>
ClearingOutcome<N> solve_model_a_exact(const model::Auction<N>& auction,
                                       const Tolerances<N>& tol) {
  ModelAOptions opts;
  opts.heuristic_cuts = false;
  return solve_model_a(auction, tol, opts);
}

template <typename N>
ClearingOutcome<N> solve_model_a_heuristic(const model::Auction<N>& auction,
                                           const Tolerances<N>& tol) {
  ModelAOptions opts;
  opts.heuristic_cuts = true;
  return solve_model_a(auction, tol, opts);
}

/// Purely convex auction: the welfare optimum plus clearing-row duals
/// form a competitive equilibrium whenever the program is solvable.
template <typename N>
ClearingOutcome<N> solve_convex_equilibrium(const model::Auction<N>& auction,
                                            const Tolerances<N>& tol) {
  if (!auction.mi_bids.empty()) {
    throw std::invalid_argument(
        "convex equilibrium requires an auction without mixed bids");
  }
  auto [prob, layout] = build_master(auction, CutPool{});
  const auto sol = lp::solve_lp(prob.relaxation, tol);
  if (sol.status != lp::LpStatus::optimal) {
    ClearingOutcome<N> out;
    out.status = ClearingStatus::infeasible;
    out.detail = "welfare program is infeasible";
    return out;
  }
  auto alloc = extract_allocation(layout, sol.x);
  LambdaSelection lambda;
  auto price = solve_price_lp(auction, alloc, lambda, tol);
  if (!price.feasible || price.gap > tol.complementarity) {
    throw std::logic_error("convex pricing program must have zero gap");
  }
  std::vector<IterationRecord<N>> iterations;
  IterationRecord<N> rec;
  rec.iter = 0;
  rec.welfare = sol.objective;
  rec.gap = price.gap;
  iterations.push_back(rec);
  return detail::finalize_outcome(auction, std::move(alloc),
                                  std::move(lambda), sol.objective, price,
                                  std::move(iterations), tol);
}

}  // namespace stricteq::clearing

#endif  // STRICTEQ_CLEARING_HPP_
