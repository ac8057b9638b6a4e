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

#ifndef STRICTEQ_NOLOSS_HPP_
#define STRICTEQ_NOLOSS_HPP_

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "stricteq/clearing.hpp"
#include "stricteq/parallel.hpp"

namespace stricteq::noloss {

/// How convex bids are priced: plain no-loss rows, or full
/// optimality-at-price (stationarity plus complementarity).
enum class ConvexTreatment { no_loss, optimal };

enum class NoLossStatus { optimal, feasible, infeasible };

inline const char* to_string(NoLossStatus s) {
  switch (s) {
    case NoLossStatus::optimal: return "optimal";
    case NoLossStatus::feasible: return "feasible";
    case NoLossStatus::infeasible: return "infeasible";
  }
  return "?";
}

template <typename N>
struct PriceCheck {
  bool feasible = false;
  model::PriceVector<N> pi;                 // max-min-slack point
  N min_slack = scalar_traits<N>::zero();   // worst surplus margin
};

/// Surplus floors per bid id; absent ids default to zero.
template <typename N>
using SurplusFloors = std::map<std::string, N>;

/// Decides whether some price vector gives every bid at least its
/// floor surplus at the given allocation, by maximizing the worst
/// margin (capped so the program stays bounded).
template <typename N>
PriceCheck<N> price_feasibility(const model::Auction<N>& auction,
                                const model::Allocation<N>& alloc,
                                const SurplusFloors<N>& floors,
                                ConvexTreatment treatment,
                                const Tolerances<N>& tol) {
  const N zero = scalar_traits<N>::zero();
  const N one = scalar_traits<N>::from_long(1);
  const int m = auction.space.dimension();
  lp::LinearProgram<N> prob;
  prob.sense = lp::Sense::maximize;
  for (int t = 0; t < m; ++t) prob.add_variable(zero, std::nullopt, std::nullopt);
  const int s_col = prob.add_variable(one, std::nullopt, one);

  auto floor_of = [&](const std::string& id) {
    const auto it = floors.find(id);
    return it == floors.end() ? zero : it->second;
  };
  auto add_surplus_row = [&](const auto& bid) {
    const auto& d = alloc.at(bid.id);
    const auto u = bid.Q.apply(d);
    N value = zero;
    for (int j = 0; j < bid.num_vars(); ++j) value += bid.c[j] * d[j];
    std::vector<N> row(prob.num_vars(), zero);
    for (int t = 0; t < m; ++t) row[t] = u[t];
    row[s_col] = one;
    prob.add_row(std::move(row), lp::Relation::less_equal,
                 value - floor_of(bid.id));
  };
  for (const auto& bid : auction.convex_bids) add_surplus_row(bid);
  for (const auto& bid : auction.mi_bids) add_surplus_row(bid);

  if (treatment == ConvexTreatment::optimal) {
    // Stationarity with complementarity pins each convex bid to an
    // individual optimum at the price.
    for (const auto& bid : auction.convex_bids) {
      const auto& d = alloc.at(bid.id);
      const auto act = bid.G.apply(d);
      const int mu0 = prob.num_vars();
      for (int k = 0; k < bid.G.rows(); ++k) {
        const bool slack = bid.h[k] - act[k] > tol.feasibility;
        prob.add_variable(zero, zero,
                          slack ? std::optional<N>(zero) : std::nullopt);
      }
      for (int j = 0; j < bid.num_vars(); ++j) {
        std::vector<N> row(prob.num_vars(), zero);
        for (int t = 0; t < m; ++t) row[t] = bid.Q(t, j);
        for (int k = 0; k < bid.G.rows(); ++k) row[mu0 + k] = bid.G(k, j);
        prob.add_row(std::move(row), lp::Relation::equal, bid.c[j]);
      }
      // Earlier surplus rows are narrower than the final variable
      // count; widen them lazily.
      for (auto& r : prob.rows) r.coeffs.resize(prob.num_vars(), zero);
    }
  }

  PriceCheck<N> out;
  const auto sol = lp::solve_lp(prob, tol);
  if (sol.status != lp::LpStatus::optimal) return out;  // stationarity failed
  out.min_slack = sol.objective;
  out.pi.assign(sol.x.begin(), sol.x.begin() + m);
  out.feasible = !(sol.objective < -tol.feasibility);
  return out;
}

/// Prices under which the fixed allocation meets every floor: a
/// polyhedron in price space alone.
template <typename N>
lp::LinearProgram<N> price_polyhedron(const model::Auction<N>& auction,
                                      const model::Allocation<N>& alloc,
                                      const SurplusFloors<N>& floors) {
  const N zero = scalar_traits<N>::zero();
  const int m = auction.space.dimension();
  lp::LinearProgram<N> prob;
  prob.sense = lp::Sense::minimize;
  for (int t = 0; t < m; ++t) prob.add_variable(zero, std::nullopt, std::nullopt);
  auto add = [&](const auto& bid) {
    const auto& d = alloc.at(bid.id);
    const auto u = bid.Q.apply(d);
    N value = zero;
    for (int j = 0; j < bid.num_vars(); ++j) value += bid.c[j] * d[j];
    const auto it = floors.find(bid.id);
    const N floor_i = it == floors.end() ? zero : it->second;
    std::vector<N> row(u.begin(), u.end());
    prob.add_row(std::move(row), lp::Relation::less_equal, value - floor_i);
  };
  for (const auto& bid : auction.convex_bids) add(bid);
  for (const auto& bid : auction.mi_bids) add(bid);
  return prob;
}

template <typename N>
struct NoLossOutcome {
  NoLossStatus status = NoLossStatus::infeasible;
  N welfare = scalar_traits<N>::zero();
  model::Allocation<N> allocation;
  std::optional<model::PriceVector<N>> prices;
  std::optional<clearing::PriceWindow<N>> window;
  std::optional<model::SettlementRecord<N>> settlement;
  std::string method;
  std::string detail;
  long candidates = 0;
};

struct NoLossOptions {
  ConvexTreatment convex = ConvexTreatment::no_loss;
  mip::EnumerationBudget budget{10, 200000};
  bool parallel = true;
  bool grid_check = true;    // single-commodity price sweep cross-check
  int grid_points = 33;
  int max_refinements = 5;
};

namespace detail {

template <typename N>
NoLossOutcome<N> finalize(const model::Auction<N>& auction,
                          model::Allocation<N> alloc, const N& welfare,
                          NoLossStatus status, std::string method,
                          std::string detail_note, long candidates,
                          const Tolerances<N>& tol) {
  NoLossOutcome<N> out;
  out.status = status;
  out.welfare = welfare;
  out.allocation = std::move(alloc);
  out.method = std::move(method);
  out.detail = std::move(detail_note);
  out.candidates = candidates;
  const auto poly = price_polyhedron(auction, out.allocation,
                                     SurplusFloors<N>{});
  auto [window, report] = clearing::price_window_and_report(
      poly, scalar_traits<N>::zero(), auction.space.dimension(), tol);
  out.window = std::move(window);
  out.prices = report;
  out.settlement = model::evaluate(auction, out.allocation, report);
  return out;
}

/// Integer columns of the master plus their value ranges.
template <typename N>
struct SliceSpace {
  std::vector<int> columns;
  std::vector<std::pair<long, long>> ranges;
  long total = 1;
};

template <typename N>
SliceSpace<N> slice_space(const mip::MixedIntegerProgram<N>& prob,
                          const Tolerances<N>& tol,
                          const mip::EnumerationBudget& budget) {
  SliceSpace<N> space;
  space.columns = prob.integer_variables;
  std::sort(space.columns.begin(), space.columns.end());
  if (space.columns.size() > static_cast<size_t>(budget.max_integer_variables)) {
    throw mip::BudgetExceeded("integer slice enumeration over budget");
  }
  for (const int col : space.columns) {
    const auto [a, b] = mip::integer_variable_range(prob, col, tol);
    const long lo = scalar_traits<N>::floor_long(
        scalar_traits<N>::ceil(a - tol.integrality));
    const long hi = scalar_traits<N>::floor_long(b + tol.integrality);
    space.ranges.emplace_back(lo, hi);
    const long width = hi - lo + 1;
    if (width <= 0 || space.total > budget.max_assignments / width) {
      throw mip::BudgetExceeded("integer slice enumeration over budget");
    }
    space.total *= width;
  }
  return space;
}

template <typename N>
void pin_slice(lp::LinearProgram<N>& prob, const SliceSpace<N>& space,
               long index) {
  long rest = index;
  for (size_t k = 0; k < space.columns.size(); ++k) {
    const long width = space.ranges[k].second - space.ranges[k].first + 1;
    const long v = space.ranges[k].first + rest % width;
    rest /= width;
    const N val = scalar_traits<N>::from_long(v);
    prob.bounds[space.columns[k]].lower = val;
    prob.bounds[space.columns[k]].upper = val;
  }
}

/// Candidate single-commodity prices: zero, every marginal value
/// ratio, every hull-vertex average-value ratio, midpoints between
/// neighbours, and one step beyond each end.
template <typename N>
std::vector<N> candidate_prices(const model::Auction<N>& auction,
                                const Tolerances<N>& tol) {
  const N zero = scalar_traits<N>::zero();
  const N one = scalar_traits<N>::from_long(1);
  const N two = scalar_traits<N>::from_long(2);
  std::vector<N> out{zero};
  auto add_ratios = [&](const auto& bid, const Mat<N>& M,
                        const std::vector<N>& rhs) {
    for (int j = 0; j < bid.num_vars(); ++j) {
      if (!(bid.Q(0, j) == zero)) out.push_back(bid.c[j] / bid.Q(0, j));
    }
    model::VertexBudget vb;
    const auto verts = model::enumerate_polytope_vertices(M, rhs, tol, vb);
    if (!verts) return;
    for (const auto& v : *verts) {
      N value = zero;
      N qty = zero;
      for (int j = 0; j < bid.num_vars(); ++j) {
        value += bid.c[j] * v[j];
        qty += bid.Q(0, j) * v[j];
      }
      if (!(qty == zero)) out.push_back(value / qty);
    }
  };
  for (const auto& bid : auction.convex_bids) add_ratios(bid, bid.G, bid.h);
  for (const auto& bid : auction.mi_bids) add_ratios(bid, bid.A, bid.a);

  std::sort(out.begin(), out.end());
  std::vector<N> dedup;
  for (const auto& p : out) {
    if (dedup.empty() || !approx_equal(dedup.back(), p, tol.feasibility)) {
      dedup.push_back(p);
    }
  }
  std::vector<N> full;
  full.push_back(dedup.front() - one);
  for (size_t i = 0; i < dedup.size(); ++i) {
    full.push_back(dedup[i]);
    if (i + 1 < dedup.size()) {
      full.push_back((dedup[i] + dedup[i + 1]) / two);
    }
  }
  full.push_back(dedup.back() + one);
  return full;
}

/// Best welfare within one slice given fixed prices: the no-loss rows
/// become linear, so one LP decides it.
template <typename N>
std::optional<std::pair<N, std::vector<N>>> slice_welfare_at_price(
    const lp::LinearProgram<N>& slice_prob,
    const clearing::MasterLayout& layout, const model::Auction<N>& auction,
    const model::PriceVector<N>& pi, const SurplusFloors<N>& floors,
    const Tolerances<N>& tol) {
  const N zero = scalar_traits<N>::zero();
  lp::LinearProgram<N> work = slice_prob;
  auto add_rows = [&](const auto& bids, const auto& blocks) {
    for (size_t b = 0; b < bids.size(); ++b) {
      const auto& bid = bids[b];
      const auto& blk = blocks[b];
      std::vector<N> row(work.num_vars(), zero);
      for (int j = 0; j < bid.num_vars(); ++j) {
        N coeff = bid.c[j];
        for (size_t t = 0; t < pi.size(); ++t) coeff -= pi[t] * bid.Q(t, j);
        row[blk.offset + j] = coeff;
      }
      const auto it = floors.find(bid.id);
      work.add_row(std::move(row), lp::Relation::greater_equal,
                   it == floors.end() ? zero : it->second);
    }
  };
  add_rows(auction.convex_bids, layout.convex);
  add_rows(auction.mi_bids, layout.mi);
  const auto sol = lp::solve_lp(work, tol);
  if (sol.status != lp::LpStatus::optimal) return std::nullopt;
  return std::make_pair(sol.objective, sol.x);
}

template <typename N>
struct Candidate {
  bool found = false;
  N welfare = scalar_traits<N>::zero();
  std::vector<N> x;
  long lps = 0;
};

/// Best no-loss candidate within one slice: the plain welfare optimum
/// if it admits prices, otherwise/additionally the best optimum over
/// the candidate price list.
template <typename N>
Candidate<N> slice_candidate(const lp::LinearProgram<N>& slice_prob,
                             const clearing::MasterLayout& layout,
                             const model::Auction<N>& auction,
                             const std::vector<N>& prices,
                             const SurplusFloors<N>& floors,
                             ConvexTreatment treatment,
                             const Tolerances<N>& tol) {
  Candidate<N> best;
  const auto sol = lp::solve_lp(slice_prob, tol);
  ++best.lps;
  if (sol.status != lp::LpStatus::optimal) return best;
  {
    const auto alloc = clearing::extract_allocation(layout, sol.x);
    const auto chk = price_feasibility(auction, alloc, floors, treatment, tol);
    ++best.lps;
    if (chk.feasible) {
      best.found = true;
      best.welfare = sol.objective;
      best.x = sol.x;
    }
  }
  for (const auto& p : prices) {
    const model::PriceVector<N> pi{p};
    const auto res =
        slice_welfare_at_price(slice_prob, layout, auction, pi, floors, tol);
    ++best.lps;
    if (!res) continue;
    if (treatment == ConvexTreatment::optimal) {
      const auto alloc = clearing::extract_allocation(layout, res->second);
      const auto chk =
          price_feasibility(auction, alloc, floors, treatment, tol);
      ++best.lps;
      if (!chk.feasible) continue;
    }
    if (!best.found ||
        compare(res->first, best.welfare, tol.feasibility) ==
            Ordering::greater) {
      best.found = true;
      best.welfare = res->first;
      best.x = res->second;
    }
  }
  return best;
}

}  // namespace detail

/// Welfare maximization, then repair: while no price spares every bid
/// a loss, force the worst loser out of the auction and re-solve.
template <typename N>
NoLossOutcome<N> solve_noloss_heuristic(const model::Auction<N>& auction,
                                        const Tolerances<N>& tol,
                                        const NoLossOptions& opts = {}) {
  std::set<std::string> forced;
  const size_t nbids = auction.num_bids();
  for (size_t round = 0; round <= nbids; ++round) {
    auto [prob, layout] = clearing::build_master(auction, clearing::CutPool{});
    const N zero = scalar_traits<N>::zero();
    auto pin_block = [&](const clearing::MasterLayout::Block& blk) {
      for (int j = 0; j < blk.n; ++j) {
        prob.relaxation.bounds[blk.offset + j].lower = zero;
        prob.relaxation.bounds[blk.offset + j].upper = zero;
      }
      if (blk.lambda_col >= 0) {
        prob.relaxation.bounds[blk.lambda_col].lower = zero;
        prob.relaxation.bounds[blk.lambda_col].upper = zero;
      }
    };
    for (const auto& blk : layout.convex) {
      if (forced.count(blk.id)) pin_block(blk);
    }
    for (const auto& blk : layout.mi) {
      if (forced.count(blk.id)) pin_block(blk);
    }
    const auto sol = mip::solve_mip(prob, tol);
    if (sol.status != lp::LpStatus::optimal) {
      NoLossOutcome<N> out;
      out.method = "heuristic";
      out.detail = "welfare program infeasible after " +
                   std::to_string(forced.size()) + " removals";
      return out;
    }
    auto alloc = clearing::extract_allocation(layout, sol.x);
    const auto chk = price_feasibility(auction, alloc, SurplusFloors<N>{},
                                       opts.convex, tol);
    if (chk.feasible) {
      return detail::finalize(auction, std::move(alloc), sol.objective,
                              NoLossStatus::feasible, "heuristic",
                              "removals=" + std::to_string(forced.size()),
                              static_cast<long>(round + 1), tol);
    }
    // Rank losers at the best-margin price; always rankable because the
    // plain no-loss program is never infeasible.
    const auto rank =
        opts.convex == ConvexTreatment::no_loss
            ? chk
            : price_feasibility(auction, alloc, SurplusFloors<N>{},
                                ConvexTreatment::no_loss, tol);
    const auto settle = model::evaluate(auction, alloc, rank.pi);
    std::optional<std::string> worst;
    for (const auto& [id, s] : settle.surpluses) {
      if (forced.count(id)) continue;
      if (!worst || s < settle.surpluses.at(*worst)) worst = id;
    }
    if (!worst) break;
    forced.insert(*worst);
  }
  NoLossOutcome<N> out;
  out.method = "heuristic";
  out.detail = "no repair sequence reached priceable allocation";
  return out;
}

/// Exhaustive desk-scale search: every integer slice, priced at its
/// unconstrained optimum and across the candidate price list; for one
/// commodity a refining uniform price sweep cross-checks the result.
template <typename N>
NoLossOutcome<N> solve_noloss_oracle(const model::Auction<N>& auction,
                                     const Tolerances<N>& tol,
                                     const NoLossOptions& opts = {}) {
  const auto built = clearing::build_master(auction, clearing::CutPool{});
  const auto& prob = built.first;
  const auto& layout = built.second;
  const auto space = detail::slice_space(prob, tol, opts.budget);
  const int m = auction.space.dimension();
  const bool single = m == 1;
  const std::vector<N> prices =
      single ? detail::candidate_prices(auction, tol) : std::vector<N>{};

  std::vector<detail::Candidate<N>> slots(space.total);
  for_each_index(static_cast<size_t>(space.total), opts.parallel,
                 [&](size_t i) {
                   lp::LinearProgram<N> slice = prob.relaxation;
                   detail::pin_slice(slice, space, static_cast<long>(i));
                   slots[i] = detail::slice_candidate(
                       slice, layout, auction, prices, SurplusFloors<N>{},
                       opts.convex, tol);
                 });
  long lps = 0;
  std::optional<size_t> best;
  for (size_t i = 0; i < slots.size(); ++i) {
    lps += slots[i].lps;
    if (!slots[i].found) continue;
    if (!best || compare(slots[i].welfare, slots[*best].welfare,
                         tol.feasibility) == Ordering::greater) {
      best = i;
    }
  }
  if (!best) {
    NoLossOutcome<N> out;
    out.method = "oracle";
    out.detail = "no slice admits loss-free prices";
    out.candidates = lps;
    return out;
  }

  std::string note;
  bool certified = false;
  if (single && opts.grid_check && space.total > 0) {
    // Uniform price sweep, refined until the best swept welfare stops
    // moving; guards the candidate list against missed price regions.
    const N zero = scalar_traits<N>::zero();
    const N grid_eps =
        scalar_traits<N>::exact
            ? zero
            : scalar_traits<N>::from_long(1) /
                  scalar_traits<N>::from_long(1000000);
    N lo = prices.front();
    N hi = prices.back();
    std::optional<N> prev;
    int points = opts.grid_points;
    int rounds = 0;
    for (; rounds < opts.max_refinements; ++rounds) {
      std::vector<std::optional<N>> sweep(points);
      for_each_index(static_cast<size_t>(points), opts.parallel, [&](size_t g) {
        const N theta = scalar_traits<N>::from_long(static_cast<long>(g)) /
                        scalar_traits<N>::from_long(points - 1);
        const model::PriceVector<N> pi{lo + theta * (hi - lo)};
        std::optional<N> best_here;
        for (long s = 0; s < space.total; ++s) {
          lp::LinearProgram<N> slice = prob.relaxation;
          detail::pin_slice(slice, space, s);
          const auto res = detail::slice_welfare_at_price(
              slice, layout, auction, pi, SurplusFloors<N>{}, tol);
          if (res && (!best_here || res->first > *best_here)) {
            best_here = res->first;
          }
        }
        sweep[g] = best_here;
      });
      std::optional<N> round_best;
      for (const auto& w : sweep) {
        if (w && (!round_best || *w > *round_best)) round_best = w;
      }
      lps += static_cast<long>(points) * space.total;
      if (round_best && prev) {
        N diff = *round_best - *prev;
        if (diff < zero) diff = zero - diff;
        if (!(diff > grid_eps)) {
          certified = true;
          break;
        }
      }
      prev = round_best;
      points = 2 * points - 1;
    }
    if (prev && compare(*prev, slots[*best].welfare, tol.feasibility) ==
                    Ordering::greater) {
      note = "price sweep exceeded candidate welfare; result not tight";
      certified = false;
    } else {
      note = "sweep rounds=" + std::to_string(rounds + (certified ? 1 : 0));
    }
  }

  auto alloc = clearing::extract_allocation(layout, slots[*best].x);
  const NoLossStatus status = (single && certified)
                                  ? NoLossStatus::optimal
                                  : NoLossStatus::feasible;
  if (!single) note = "multi-commodity search over structured candidates";
  return detail::finalize(auction, std::move(alloc), slots[*best].welfare,
                          status, "oracle", note, lps, tol);
}

template <typename N>
struct EfficiencyReport {
  bool efficient = true;
  N baseline_welfare = scalar_traits<N>::zero();
  std::optional<N> dominating_welfare;
  std::optional<model::Allocation<N>> witness;
  std::optional<model::PriceVector<N>> witness_prices;
  long candidates = 0;
};

/// An allocation-plus-price pitch is efficient when no alternative
/// gives every bid at least its current surplus and strictly more
/// total welfare.
template <typename N>
EfficiencyReport<N> check_efficiency(const model::Auction<N>& auction,
                                     const model::Allocation<N>& alloc,
                                     const model::PriceVector<N>& pi,
                                     const Tolerances<N>& tol,
                                     const NoLossOptions& opts = {}) {
  EfficiencyReport<N> out;
  const auto settle = model::evaluate(auction, alloc, pi);
  out.baseline_welfare = settle.welfare;
  SurplusFloors<N> floors = settle.surpluses;

  const auto built = clearing::build_master(auction, clearing::CutPool{});
  const auto& prob = built.first;
  const auto& layout = built.second;
  const auto space = detail::slice_space(prob, tol, opts.budget);
  const bool single = auction.space.dimension() == 1;
  const std::vector<N> prices =
      single ? detail::candidate_prices(auction, tol) : std::vector<N>{};

  std::vector<detail::Candidate<N>> slots(space.total);
  for_each_index(static_cast<size_t>(space.total), opts.parallel,
                 [&](size_t i) {
                   lp::LinearProgram<N> slice = prob.relaxation;
                   detail::pin_slice(slice, space, static_cast<long>(i));
                   slots[i] = detail::slice_candidate(slice, layout, auction,
                                                      prices, floors,
                                                      ConvexTreatment::no_loss,
                                                      tol);
                 });
  std::optional<size_t> best;
  for (size_t i = 0; i < slots.size(); ++i) {
    out.candidates += slots[i].lps;
    if (!slots[i].found) continue;
    if (!best || compare(slots[i].welfare, slots[*best].welfare,
                         tol.feasibility) == Ordering::greater) {
      best = i;
    }
  }
  if (best && compare(slots[*best].welfare, out.baseline_welfare,
                      tol.feasibility) == Ordering::greater) {
    out.efficient = false;
    out.dominating_welfare = slots[*best].welfare;
    auto walloc = clearing::extract_allocation(layout, slots[*best].x);
    const auto chk =
        price_feasibility(auction, walloc, floors,
                          ConvexTreatment::no_loss, tol);
    out.witness_prices = chk.pi;
    out.witness = std::move(walloc);
  }
  return out;
}

}  // namespace stricteq::noloss

#endif  // STRICTEQ_NOLOSS_HPP_
