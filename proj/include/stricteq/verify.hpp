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

#ifndef STRICTEQ_VERIFY_HPP_
#define STRICTEQ_VERIFY_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "stricteq/clearing.hpp"
#include "stricteq/noloss.hpp"
#include "stricteq/parallel.hpp"

namespace stricteq::verify {

struct CheckItem {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct CertificationReport {
  std::vector<CheckItem> items;
  bool pass = true;
  void add(std::string name, bool ok, std::string detail = "") {
    pass = pass && ok;
    items.push_back({std::move(name), ok, std::move(detail)});
  }
};

template <typename N>
N surplus_at(const std::vector<N>& c, const Mat<N>& Q, const std::vector<N>& d,
             const model::PriceVector<N>& pi) {
  N value = scalar_traits<N>::zero();
  for (size_t j = 0; j < d.size(); ++j) value += c[j] * d[j];
  const auto u = Q.apply(d);
  for (size_t t = 0; t < pi.size(); ++t) value -= pi[t] * u[t];
  return value;
}

/// Allocation sanity: row feasibility, integrality of trailing
/// variables, and commodity clearing.
template <typename N>
void check_allocation(const model::Auction<N>& auction,
                      const model::Allocation<N>& alloc,
                      const Tolerances<N>& tol, CertificationReport& report) {
  bool rows_ok = true;
  bool ints_ok = true;
  std::string row_detail;
  std::string int_detail;
  auto check_rows = [&](const std::string& id, const Mat<N>& M,
                        const std::vector<N>& rhs, const std::vector<N>& d) {
    const auto act = M.apply(d);
    for (int k = 0; k < M.rows(); ++k) {
      if (act[k] - rhs[k] > tol.feasibility) {
        rows_ok = false;
        if (row_detail.empty()) {
          row_detail = id + " violates row " + std::to_string(k);
        }
      }
    }
  };
  for (const auto& bid : auction.convex_bids) {
    check_rows(bid.id, bid.G, bid.h, alloc.at(bid.id));
  }
  for (const auto& bid : auction.mi_bids) {
    const auto& d = alloc.at(bid.id);
    // Rejected bids sit at the origin, which the raw hull may exclude.
    bool at_zero = true;
    for (const auto& v : d) {
      if (!approx_equal(v, scalar_traits<N>::zero(), tol.feasibility)) {
        at_zero = false;
      }
    }
    if (!at_zero) check_rows(bid.id, bid.A, bid.a, d);
    for (int j = bid.first_integer_var(); j < bid.num_vars(); ++j) {
      if (mip::detail::fractionality(d[j]) > tol.integrality) {
        ints_ok = false;
        if (int_detail.empty()) {
          int_detail = bid.id + " variable " + std::to_string(j) +
                       " is fractional";
        }
      }
    }
  }
  report.add("allocation_feasible", rows_ok, row_detail);
  report.add("allocation_integral", ints_ok, int_detail);

  bool clear_ok = true;
  std::string clear_detail;
  const auto settle =
      model::evaluate(auction, alloc, model::PriceVector<N>(
                                          auction.space.dimension(),
                                          scalar_traits<N>::zero()));
  for (size_t t = 0; t < settle.clearing_residual.size(); ++t) {
    if (!approx_equal(settle.clearing_residual[t], scalar_traits<N>::zero(),
                      tol.feasibility)) {
      clear_ok = false;
      clear_detail = "commodity " + auction.space.names[t] +
                     " residual " +
                     scalar_traits<N>::to_string(settle.clearing_residual[t]);
      break;
    }
  }
  report.add("market_clears", clear_ok, clear_detail);
}

/// Competitive equilibrium: every bid's assignment is feasible for its
/// own decision set and surplus-maximal at the prices.
template <typename N>
CertificationReport check_equilibrium(const model::Auction<N>& auction,
                                      const model::Allocation<N>& alloc,
                                      const model::PriceVector<N>& pi,
                                      const Tolerances<N>& tol) {
  CertificationReport report;
  check_allocation(auction, alloc, tol, report);
  bool own_ok = true;
  bool opt_ok = true;
  std::string own_detail;
  std::string opt_detail;
  auto check_bid = [&](const auto& bid, const N& best) {
    const auto& d = alloc.at(bid.id);
    const N s = surplus_at(bid.c, bid.Q, d, pi);
    if (best - s > tol.complementarity) {
      opt_ok = false;
      if (opt_detail.empty()) {
        opt_detail = bid.id + " surplus " + scalar_traits<N>::to_string(s) +
                     " below optimum " + scalar_traits<N>::to_string(best);
      }
    }
  };
  for (const auto& bid : auction.convex_bids) {
    check_bid(bid, model::individual_optimum(bid, pi, tol).value);
  }
  for (const auto& bid : auction.mi_bids) {
    const auto& d = alloc.at(bid.id);
    bool at_zero = true;
    for (const auto& v : d) {
      if (!approx_equal(v, scalar_traits<N>::zero(), tol.feasibility)) {
        at_zero = false;
      }
    }
    if (at_zero) {
      // The origin must belong to the bid's own decision set.
      for (const auto& v : bid.a) {
        if (v < -tol.feasibility) {
          own_ok = false;
          if (own_detail.empty()) {
            own_detail = bid.id + " rejected but 0 is outside its hull";
          }
        }
      }
    }
    check_bid(bid, model::individual_optimum(bid, pi, tol).value);
  }
  report.add("assignments_in_decision_sets", own_ok, own_detail);
  report.add("assignments_surplus_maximal", opt_ok, opt_detail);
  return report;
}

/// Model A support: accepted mixed bids are gated-optimal, rejected
/// ones sit at the origin, convex bids are optimal; claimed welfare
/// and prices are mutually consistent.
template <typename N>
CertificationReport check_model_a(const model::Auction<N>& auction,
                                  const model::Allocation<N>& alloc,
                                  const clearing::LambdaSelection& lambda,
                                  const model::PriceVector<N>& pi,
                                  const N& claimed_welfare,
                                  const Tolerances<N>& tol) {
  CertificationReport report;
  check_allocation(auction, alloc, tol, report);

  const auto settle = model::evaluate(auction, alloc, pi);
  report.add("welfare_matches", approx_equal(settle.welfare, claimed_welfare,
                                             tol.feasibility),
             "recomputed " + scalar_traits<N>::to_string(settle.welfare));

  bool ok = true;
  std::string detail;
  for (const auto& bid : auction.convex_bids) {
    const N s = surplus_at(bid.c, bid.Q, alloc.at(bid.id), pi);
    const N best = model::individual_optimum(bid, pi, tol).value;
    if (best - s > tol.complementarity) {
      ok = false;
      if (detail.empty()) detail = bid.id + " not surplus-maximal";
    }
  }
  report.add("convex_bids_optimal", ok, detail);

  bool mi_ok = true;
  std::string mi_detail;
  for (const auto& bid : auction.mi_bids) {
    const auto& d = alloc.at(bid.id);
    if (lambda.at(bid.id) == 0) {
      for (const auto& v : d) {
        if (!approx_equal(v, scalar_traits<N>::zero(), tol.feasibility)) {
          mi_ok = false;
          if (mi_detail.empty()) mi_detail = bid.id + " rejected but trades";
        }
      }
      continue;
    }
    const N s = surplus_at(bid.c, bid.Q, d, pi);
    const N best = model::individual_optimum(bid, pi, tol, 1).value;
    if (best - s > tol.complementarity) {
      mi_ok = false;
      if (mi_detail.empty()) mi_detail = bid.id + " not gated-optimal";
    }
  }
  report.add("accepted_bids_optimal_or_rejected", mi_ok, mi_detail);
  return report;
}

/// No-loss support: every bid's surplus at the prices is nonnegative.
template <typename N>
CertificationReport check_no_loss(const model::Auction<N>& auction,
                                  const model::Allocation<N>& alloc,
                                  const model::PriceVector<N>& pi,
                                  const N& claimed_welfare,
                                  const Tolerances<N>& tol) {
  CertificationReport report;
  check_allocation(auction, alloc, tol, report);
  const auto settle = model::evaluate(auction, alloc, pi);
  report.add("welfare_matches", approx_equal(settle.welfare, claimed_welfare,
                                             tol.feasibility),
             "recomputed " + scalar_traits<N>::to_string(settle.welfare));
  bool ok = true;
  std::string detail;
  for (const auto& [id, s] : settle.surpluses) {
    if (s < -tol.feasibility) {
      ok = false;
      detail = id + " loses " + scalar_traits<N>::to_string(s);
      break;
    }
  }
  report.add("no_participant_loses", ok, detail);
  return report;
}

template <typename N>
struct BruteForceResult {
  bool feasible = false;
  N welfare = scalar_traits<N>::zero();
  clearing::LambdaSelection lambda;
  model::Allocation<N> allocation;
  long patterns_checked = 0;
  long priceable_patterns = 0;
};

/// Ground-truth reference: tries every acceptance pattern, keeps the
/// best welfare among those whose pricing program closes to zero gap.
template <typename N>
BruteForceResult<N> brute_force_model_a(const model::Auction<N>& auction,
                                        const Tolerances<N>& tol,
                                        bool parallel = true) {
  BruteForceResult<N> out;
  const size_t k = auction.mi_bids.size();
  if (k > 20) throw mip::BudgetExceeded("too many acceptance patterns");
  const long total = 1L << k;

  struct Slot {
    bool priceable = false;
    bool feasible = false;
    N welfare = scalar_traits<N>::zero();
    clearing::LambdaSelection lambda;
    model::Allocation<N> allocation;
  };
  std::vector<Slot> slots(total);
  for_each_index(static_cast<size_t>(total), parallel, [&](size_t mask) {
    clearing::LambdaSelection lambda;
    for (size_t b = 0; b < k; ++b) {
      lambda[auction.mi_bids[b].id] = (mask >> b) & 1 ? 1 : 0;
    }
    auto [prob, layout] = clearing::build_master(auction, clearing::CutPool{});
    clearing::fix_lambda(prob, layout, lambda);
    const auto sol = mip::solve_mip(prob, tol);
    if (sol.status != lp::LpStatus::optimal) return;
    Slot& slot = slots[mask];
    slot.feasible = true;
    slot.welfare = sol.objective;
    slot.lambda = lambda;
    slot.allocation = clearing::extract_allocation(layout, sol.x);
    const auto price =
        clearing::solve_price_lp(auction, slot.allocation, lambda, tol);
    slot.priceable = price.feasible && !(price.gap > tol.complementarity);
  });

  std::optional<size_t> best;
  for (size_t i = 0; i < slots.size(); ++i) {
    ++out.patterns_checked;
    if (!slots[i].priceable) continue;
    ++out.priceable_patterns;
    if (!best || compare(slots[i].welfare, slots[*best].welfare,
                         tol.feasibility) == Ordering::greater) {
      best = i;
    }
  }
  if (best) {
    out.feasible = true;
    out.welfare = slots[*best].welfare;
    out.lambda = std::move(slots[*best].lambda);
    out.allocation = std::move(slots[*best].allocation);
  }
  return out;
}

/// Deterministic xorshift-style draw; avoids distribution classes so
/// results match across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed ? seed : 0x9e3779b97f4a7c15ULL) {}
  std::uint64_t next() {
    state_ ^= state_ << 13;
    state_ ^= state_ >> 7;
    state_ ^= state_ << 17;
    return state_;
  }
  long range(long lo, long hi) {  // inclusive
    return lo + static_cast<long>(next() % static_cast<std::uint64_t>(hi - lo + 1));
  }
  bool chance(int percent) { return range(0, 99) < percent; }

 private:
  std::uint64_t state_;
};

struct GeneratorOptions {
  int num_commodities = 1;
  int extra_limit_orders = 3;
  int fill_or_kill_bids = 2;
  int startup_bids = 1;
  long max_quantity = 4;
  long max_price = 12;
};

/// Seeded auction built from three bid templates (limit order,
/// fill-or-kill, capacity-with-startup-cost); every decision set
/// contains the origin and every hull has integral vertices.
template <typename N>
model::Auction<N> random_auction(std::uint64_t seed,
                                 const GeneratorOptions& opts = {}) {
  Rng rng(seed);
  model::Auction<N> auction;
  for (int t = 0; t < opts.num_commodities; ++t) {
    auction.space.names.push_back("market" + std::to_string(t + 1));
  }
  const int m = opts.num_commodities;
  auto from = [](long v) { return scalar_traits<N>::from_long(v); };
  int serial = 0;

  auto limit_order = [&](int t, bool buyer) {
    model::ConvexBid<N> bid;
    const long q = rng.range(1, opts.max_quantity);
    const long p = rng.range(1, opts.max_price);
    bid.id = (buyer ? "buy" : "sell") + std::to_string(++serial);
    bid.c = {from(buyer ? p : -p)};
    bid.Q = Mat<N>(m, 1);
    bid.Q(t, 0) = from(buyer ? 1 : -1);
    bid.G = Mat<N>::from_rows({{from(1)}, {from(-1)}});
    bid.h = {from(q), from(0)};
    auction.convex_bids.push_back(std::move(bid));
  };
  auto fill_or_kill = [&](int t, bool buyer) {
    model::MixedIntegerBid<N> bid;
    const long q = rng.range(1, opts.max_quantity);
    const long p = rng.range(1, opts.max_price);
    bid.id = "fok" + std::to_string(++serial);
    // Single binary variable scaled by the block size.
    bid.c = {from((buyer ? p : -p) * q)};
    bid.Q = Mat<N>(m, 1);
    bid.Q(t, 0) = from(buyer ? q : -q);
    bid.A = Mat<N>::from_rows({{from(1)}, {from(-1)}});
    bid.a = {from(1), from(0)};
    bid.z = 1;
    auction.mi_bids.push_back(std::move(bid));
  };
  auto startup = [&](int t) {
    model::MixedIntegerBid<N> bid;
    const long cap = rng.range(1, opts.max_quantity);
    const long p = rng.range(1, opts.max_price);
    const long fixed = rng.range(1, opts.max_price);
    bid.id = "gen" + std::to_string(++serial);
    // Variables: quantity sold, then the on/off commitment.
    bid.c = {from(-p), from(-fixed)};
    bid.Q = Mat<N>(m, 2);
    bid.Q(t, 0) = from(-1);
    bid.A = Mat<N>::from_rows({{from(1), from(-cap)},
                               {from(-1), from(0)},
                               {from(0), from(1)},
                               {from(0), from(-1)}});
    bid.a = {from(0), from(0), from(1), from(0)};
    bid.z = 1;
    auction.mi_bids.push_back(std::move(bid));
  };

  for (int t = 0; t < m; ++t) {
    limit_order(t, true);
    limit_order(t, false);
  }
  for (int i = 0; i < opts.extra_limit_orders; ++i) {
    limit_order(static_cast<int>(rng.range(0, m - 1)), rng.chance(50));
  }
  for (int i = 0; i < opts.fill_or_kill_bids; ++i) {
    fill_or_kill(static_cast<int>(rng.range(0, m - 1)), rng.chance(50));
  }
  for (int i = 0; i < opts.startup_bids; ++i) {
    startup(static_cast<int>(rng.range(0, m - 1)));
  }
  auction.canonicalize();
  return auction;
}

}  // namespace stricteq::verify

#endif  // STRICTEQ_VERIFY_HPP_
