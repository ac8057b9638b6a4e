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

#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "stricteq/io.hpp"
#include "stricteq/rational.hpp"

namespace {

using stricteq::Rational;
using stricteq::Tolerances;

// Exit codes: 0 solved/valid/verified, 1 verification failed,
// 2 model infeasible, 3 input or validation error.
constexpr int kOk = 0;
constexpr int kVerifyFailed = 1;
constexpr int kInfeasible = 2;
constexpr int kBadInput = 3;

struct Config {
  std::string command;
  std::string instance;
  std::string result;
  std::string output;
  std::string log;
  std::string csv;
  std::string model = "a-exact";
  std::string arithmetic = "rational";
  std::string convex = "noloss";
  double feasibility_eps = 1e-9;
  double integrality_eps = 1e-6;
  bool efficiency = false;
  unsigned long long seed = 0;  // reserved for seeded workloads
};

template <typename N>
Tolerances<N> make_tolerances(const Config& cfg) {
  Tolerances<N> tol;  // exact mode stays at zero regardless of flags
  if constexpr (!stricteq::scalar_traits<N>::exact) {
    tol.feasibility = cfg.feasibility_eps;
    tol.integrality = cfg.integrality_eps;
  }
  return tol;
}

void emit(const std::string& path, const std::string& content) {
  if (path.empty()) {
    std::cout << content;
    return;
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error(path + ": cannot open for writing");
  out << content;
}

template <typename N>
stricteq::noloss::NoLossOptions noloss_options(const Config& cfg) {
  stricteq::noloss::NoLossOptions opts;
  if (cfg.convex == "optimal") {
    opts.convex = stricteq::noloss::ConvexTreatment::optimal;
  }
  return opts;
}

template <typename N>
std::string validation_json(const stricteq::model::ValidationReport& report) {
  nlohmann::json root;
  root["schema"] = 1;
  root["check"] = "validate";
  root["valid"] = report.valid;
  nlohmann::json items = nlohmann::json::array();
  for (const auto& issue : report.issues) {
    items.push_back({{"severity", issue.error ? "error" : "warning"},
                     {"bid", issue.bid_id},
                     {"message", issue.message}});
  }
  root["issues"] = std::move(items);
  return root.dump(2) + "\n";
}

template <typename N>
int do_validate(const Config& cfg) {
  const auto auction = stricteq::io::load_auction_file<N>(cfg.instance);
  const auto tol = make_tolerances<N>(cfg);
  const auto report = stricteq::model::validate_instance(auction, tol);
  emit(cfg.output, validation_json<N>(report));
  return report.valid ? kOk : kBadInput;
}

template <typename N>
int do_solve(const Config& cfg) {
  const auto auction = stricteq::io::load_auction_file<N>(cfg.instance);
  const auto tol = make_tolerances<N>(cfg);
  const auto validation = stricteq::model::validate_instance(auction, tol);
  if (!validation.valid) {
    std::cerr << validation_json<N>(validation);
    return kBadInput;
  }

  std::string result;
  bool infeasible = false;
  std::string log_lines;
  std::string csv;
  auto handle_clearing = [&](const stricteq::clearing::ClearingOutcome<N>& o) {
    result = stricteq::io::clearing_result_json(cfg.model, o);
    log_lines = stricteq::io::iteration_log_lines(o.iterations);
    infeasible = o.status == stricteq::clearing::ClearingStatus::infeasible;
    if (o.settlement) {
      csv = stricteq::io::settlement_csv(auction, *o.settlement, o.allocation);
    }
  };
  auto handle_noloss = [&](const stricteq::noloss::NoLossOutcome<N>& o) {
    result = stricteq::io::noloss_result_json(cfg.model, o);
    infeasible = o.status == stricteq::noloss::NoLossStatus::infeasible;
    if (o.settlement) {
      csv = stricteq::io::settlement_csv(auction, *o.settlement, o.allocation);
    }
  };

  if (cfg.model == "welfare") {
    handle_clearing(stricteq::clearing::solve_max_welfare(auction, tol));
  } else if (cfg.model == "convex-eq") {
    if (!auction.mi_bids.empty()) {
      std::cerr << "error: convex-eq requires an instance without mi_bids\n";
      return kBadInput;
    }
    handle_clearing(stricteq::clearing::solve_convex_equilibrium(auction, tol));
  } else if (cfg.model == "a-exact") {
    handle_clearing(stricteq::clearing::solve_model_a_exact(auction, tol));
  } else if (cfg.model == "a-heuristic") {
    handle_clearing(stricteq::clearing::solve_model_a_heuristic(auction, tol));
  } else if (cfg.model == "b-heuristic") {
    handle_noloss(stricteq::noloss::solve_noloss_heuristic(
        auction, tol, noloss_options<N>(cfg)));
  } else if (cfg.model == "b-oracle") {
    handle_noloss(stricteq::noloss::solve_noloss_oracle(
        auction, tol, noloss_options<N>(cfg)));
  } else {
    std::cerr << "error: unknown model " << cfg.model << "\n";
    return kBadInput;
  }

  emit(cfg.output, result);
  if (!cfg.log.empty()) emit(cfg.log, log_lines);
  if (!cfg.csv.empty() && !csv.empty()) emit(cfg.csv, csv);
  return infeasible ? kInfeasible : kOk;
}

template <typename N>
int do_verify(const Config& cfg) {
  const auto auction = stricteq::io::load_auction_file<N>(cfg.instance);
  const auto tol = make_tolerances<N>(cfg);
  const auto parsed = stricteq::io::load_result_file<N>(cfg.result);
  stricteq::verify::CertificationReport report;

  if (parsed.status == "infeasible") {
    report.add("result_reports_infeasible", true, "nothing to certify");
    emit(cfg.output, stricteq::io::certification_json(report));
    return kOk;
  }
  for (const auto& bid : auction.convex_bids) {
    if (!parsed.allocation.count(bid.id)) {
      report.add("allocation_complete", false, "missing bid " + bid.id);
      emit(cfg.output, stricteq::io::certification_json(report));
      return kVerifyFailed;
    }
  }
  for (const auto& bid : auction.mi_bids) {
    if (!parsed.allocation.count(bid.id)) {
      report.add("allocation_complete", false, "missing bid " + bid.id);
      emit(cfg.output, stricteq::io::certification_json(report));
      return kVerifyFailed;
    }
  }

  if (parsed.model == "welfare") {
    stricteq::verify::check_allocation(auction, parsed.allocation, tol, report);
    const auto settle = stricteq::model::evaluate(
        auction, parsed.allocation,
        stricteq::model::PriceVector<N>(auction.space.dimension(),
                                        stricteq::scalar_traits<N>::zero()));
    report.add("welfare_matches",
               stricteq::approx_equal(settle.welfare, parsed.welfare,
                                      tol.feasibility),
               "recomputed " +
                   stricteq::scalar_traits<N>::to_string(settle.welfare));
  } else if (parsed.model == "convex-eq") {
    if (!parsed.prices) {
      report.add("prices_present", false, "");
    } else {
      report = stricteq::verify::check_equilibrium(auction, parsed.allocation,
                                                   *parsed.prices, tol);
    }
  } else if (parsed.model == "a-exact" || parsed.model == "a-heuristic") {
    if (!parsed.prices || !parsed.lambda) {
      report.add("prices_and_lambda_present", false, "");
    } else {
      report = stricteq::verify::check_model_a(auction, parsed.allocation,
                                               *parsed.lambda, *parsed.prices,
                                               parsed.welfare, tol);
    }
  } else if (parsed.model == "b-heuristic" || parsed.model == "b-oracle") {
    if (!parsed.prices) {
      report.add("prices_present", false, "");
    } else {
      report = stricteq::verify::check_no_loss(auction, parsed.allocation,
                                               *parsed.prices, parsed.welfare,
                                               tol);
      if (cfg.efficiency) {
        const auto eff = stricteq::noloss::check_efficiency(
            auction, parsed.allocation, *parsed.prices, tol);
        report.add("allocation_efficient", eff.efficient,
                   eff.dominating_welfare
                       ? "dominated by welfare " +
                             stricteq::scalar_traits<N>::to_string(
                                 *eff.dominating_welfare)
                       : "");
      }
    }
  } else {
    report.add("model_recognized", false, parsed.model);
  }
  emit(cfg.output, stricteq::io::certification_json(report));
  return report.pass ? kOk : kVerifyFailed;
}

template <typename N>
int do_report(const Config& cfg) {
  const auto auction = stricteq::io::load_auction_file<N>(cfg.instance);
  const auto parsed = stricteq::io::load_result_file<N>(cfg.result);
  if (parsed.status == "infeasible") {
    std::cerr << "error: result reports infeasible; no settlement to tabulate\n";
    return kBadInput;
  }
  if (!parsed.prices) {
    std::cerr << "error: result carries no prices\n";
    return kBadInput;
  }
  const auto settle =
      stricteq::model::evaluate(auction, parsed.allocation, *parsed.prices);
  emit(cfg.output.empty() ? cfg.csv : cfg.output,
       stricteq::io::settlement_csv(auction, settle, parsed.allocation));
  return kOk;
}

template <typename N>
int run(const Config& cfg) {
  try {
    if (cfg.command == "validate") return do_validate<N>(cfg);
    if (cfg.command == "solve") return do_solve<N>(cfg);
    if (cfg.command == "verify") return do_verify<N>(cfg);
    if (cfg.command == "report") return do_report<N>(cfg);
    std::cerr << "error: unknown command\n";
    return kBadInput;
  } catch (const stricteq::io::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kBadInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kBadInput;
  }
}

}  // namespace

int main(int argc, char** argv) {
  Config cfg;
  CLI::App app{"clearing engine for auctions with non-convex bids"};
  app.require_subcommand(1);

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("instance", cfg.instance, "instance JSON file")
        ->required();
    sub->add_option("--arithmetic", cfg.arithmetic, "rational|float")
        ->check(CLI::IsMember({"rational", "float"}));
    sub->add_option("--feasibility-eps", cfg.feasibility_eps,
                    "float-mode feasibility tolerance");
    sub->add_option("--integrality-eps", cfg.integrality_eps,
                    "float-mode integrality tolerance");
    sub->add_option("--output", cfg.output, "write primary output here");
    sub->add_option("--seed", cfg.seed, "seed for randomized workloads");
  };

  auto* validate = app.add_subcommand("validate", "check an instance file");
  add_common(validate);

  auto* solve = app.add_subcommand("solve", "clear an auction");
  add_common(solve);
  solve->add_option("--model", cfg.model,
                    "welfare|convex-eq|a-exact|a-heuristic|b-heuristic|b-oracle")
      ->check(CLI::IsMember({"welfare", "convex-eq", "a-exact", "a-heuristic",
                             "b-heuristic", "b-oracle"}));
  solve->add_option("--log", cfg.log, "iteration log (JSON lines)");
  solve->add_option("--report-csv", cfg.csv, "per-bid settlement table");
  solve->add_option("--convex", cfg.convex,
                    "noloss|optimal treatment of convex bids (model B)")
      ->check(CLI::IsMember({"noloss", "optimal"}));

  auto* verify = app.add_subcommand("verify", "re-certify a result file");
  add_common(verify);
  verify->add_option("--result", cfg.result, "result JSON file")->required();
  verify->add_flag("--efficiency", cfg.efficiency,
                   "also search for dominating allocations (model B)");

  auto* report = app.add_subcommand("report", "settlement table from a result");
  add_common(report);
  report->add_option("--result", cfg.result, "result JSON file")->required();
  report->add_option("--report-csv", cfg.csv, "write the table here");

  CLI11_PARSE(app, argc, argv);
  cfg.command = app.get_subcommands().front()->get_name();

  if (cfg.arithmetic == "float") return run<double>(cfg);
  return run<Rational>(cfg);
}
