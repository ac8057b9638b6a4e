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

#include <gtest/gtest.h>

#include <algorithm>
#include <optional>
#include <vector>

#include "stricteq/mip.hpp"
#include "stricteq/verify.hpp"
#include "test_support.hpp"

namespace stricteq {
namespace {

using lp::LpStatus;
using lp::Relation;
using lp::Sense;
using mip::MixedIntegerProgram;

Rational q(long num, long den = 1) { return Rational(num, den); }

MixedIntegerProgram<Rational> knapsack() {
  MixedIntegerProgram<Rational> prob;
  auto& rel = prob.relaxation;
  rel.sense = Sense::maximize;
  rel.add_variable(q(5), q(0), q(1));
  rel.add_variable(q(4), q(0), q(1));
  rel.add_variable(q(3), q(0), q(1));
  rel.add_row({q(2), q(3), q(1)}, Relation::less_equal, q(5));
  prob.integer_variables = {0, 1, 2};
  return prob;
}

TEST(Mip, BinaryKnapsack) {
  const auto sol = mip::solve_mip(knapsack(), Tolerances<Rational>());
  ASSERT_EQ(sol.status, LpStatus::optimal);
  EXPECT_EQ(sol.objective, q(9));
  EXPECT_EQ(sol.x[0], q(1));
  EXPECT_EQ(sol.x[1], q(1));
  EXPECT_EQ(sol.x[2], q(0));
}

TEST(Mip, MixedContinuousInteger) {
  // max 2x + 3z, x in [0, 3/2], z in {0,1,2}, x + z <= 5/2.
  MixedIntegerProgram<Rational> prob;
  auto& rel = prob.relaxation;
  rel.sense = Sense::maximize;
  rel.add_variable(q(2), q(0), q(3, 2));
  rel.add_variable(q(3), q(0), q(2));
  rel.add_row({q(1), q(1)}, Relation::less_equal, q(5, 2));
  prob.integer_variables = {1};
  const auto sol = mip::solve_mip(prob, Tolerances<Rational>());
  ASSERT_EQ(sol.status, LpStatus::optimal);
  EXPECT_EQ(sol.objective, q(7));
  EXPECT_EQ(sol.x[0], q(1, 2));
  EXPECT_EQ(sol.x[1], q(2));
}

TEST(Mip, ReturnsIntegralAssignments) {
  const auto sol = mip::solve_mip(knapsack(), Tolerances<Rational>());
  ASSERT_EQ(sol.status, LpStatus::optimal);
  for (int v : {0, 1, 2}) {
    EXPECT_EQ(mip::detail::fractionality(sol.x[v]), q(0));
  }
}

TEST(Mip, InfeasibleIntegerProblem) {
  // LP relaxation admits z = 1/2 but no integer point satisfies 2z = 1.
  MixedIntegerProgram<Rational> prob;
  prob.relaxation.sense = Sense::maximize;
  prob.relaxation.add_variable(q(1), q(0), q(1));
  prob.relaxation.add_row({q(2)}, Relation::equal, q(1));
  prob.integer_variables = {0};
  const auto sol = mip::solve_mip(prob, Tolerances<Rational>());
  EXPECT_EQ(sol.status, LpStatus::infeasible);
}

TEST(Mip, UnboundedRelaxationRejected) {
  MixedIntegerProgram<Rational> prob;
  prob.relaxation.sense = Sense::maximize;
  prob.relaxation.add_variable(q(1), q(0), std::nullopt);
  prob.integer_variables = {0};
  EXPECT_THROW(mip::solve_mip(prob, Tolerances<Rational>()),
               std::invalid_argument);
}

TEST(Mip, IncumbentTrailEndsAtOptimum) {
  const auto sol = mip::solve_mip(knapsack(), Tolerances<Rational>());
  ASSERT_EQ(sol.status, LpStatus::optimal);
  ASSERT_FALSE(sol.incumbents.empty());
  EXPECT_EQ(sol.incumbents.back().objective, sol.objective);
  // Incumbents only ever improve.
  for (size_t i = 1; i < sol.incumbents.size(); ++i) {
    EXPECT_GT(sol.incumbents[i].objective, sol.incumbents[i - 1].objective);
  }
  EXPECT_GE(sol.nodes_explored, 1);
}

TEST(Mip, DeterministicAcrossRuns) {
  const auto a = mip::solve_mip(knapsack(), Tolerances<Rational>());
  const auto b = mip::solve_mip(knapsack(), Tolerances<Rational>());
  EXPECT_EQ(a.x, b.x);
  EXPECT_EQ(a.nodes_explored, b.nodes_explored);
}

// Randomized agreement with the assignment-enumeration oracle.
TEST(Mip, MatchesAssignmentOracle) {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    verify::Rng rng(seed);
    MixedIntegerProgram<Rational> prob;
    auto& rel = prob.relaxation;
    rel.sense = Sense::maximize;
    const int k = static_cast<int>(rng.range(1, 2));  // integer vars
    const int c = static_cast<int>(rng.range(1, 2));  // continuous vars
    for (int j = 0; j < k; ++j) {
      rel.add_variable(q(rng.range(-5, 5)), q(0), q(rng.range(1, 3)));
      prob.integer_variables.push_back(j);
    }
    for (int j = 0; j < c; ++j) {
      rel.add_variable(q(rng.range(-5, 5)), q(0), q(rng.range(1, 4)));
    }
    const int rows = static_cast<int>(rng.range(1, 3));
    for (int i = 0; i < rows; ++i) {
      std::vector<Rational> coeffs;
      for (int j = 0; j < k + c; ++j) coeffs.push_back(q(rng.range(-3, 3)));
      rel.add_row(std::move(coeffs), Relation::less_equal, q(rng.range(0, 8)));
    }
    const auto sol = mip::solve_mip(prob, Tolerances<Rational>());
    const auto oracle = testing::oracle_mip(prob);
    ASSERT_EQ(sol.status == LpStatus::optimal, oracle.feasible)
        << "seed " << seed;
    if (oracle.feasible) {
      EXPECT_EQ(sol.objective, oracle.value) << "seed " << seed;
    }
  }
}

TEST(Mip, FloatModeSolvesKnapsack) {
  MixedIntegerProgram<double> prob;
  auto& rel = prob.relaxation;
  rel.sense = Sense::maximize;
  rel.add_variable(5.0, 0.0, 1.0);
  rel.add_variable(4.0, 0.0, 1.0);
  rel.add_variable(3.0, 0.0, 1.0);
  rel.add_row({2.0, 3.0, 1.0}, Relation::less_equal, 5.0);
  prob.integer_variables = {0, 1, 2};
  const auto sol = mip::solve_mip(prob, Tolerances<double>());
  ASSERT_EQ(sol.status, LpStatus::optimal);
  EXPECT_NEAR(sol.objective, 9.0, 1e-9);
}

TEST(Mip, IntegerVariableRange) {
  MixedIntegerProgram<Rational> prob;
  prob.relaxation.sense = Sense::maximize;
  prob.relaxation.add_variable(q(0), q(0), q(1));
  prob.relaxation.add_row({q(1)}, Relation::less_equal, q(3, 4));
  prob.integer_variables = {0};
  const auto [lo, hi] =
      mip::integer_variable_range(prob, 0, Tolerances<Rational>());
  EXPECT_EQ(lo, q(0));
  EXPECT_EQ(hi, q(3, 4));
}

TEST(Mip, EnumerateOptimaFindsAllTies) {
  // max z1 + z2 with z1 + z2 <= 1 over {0,1}^2: two optima.
  MixedIntegerProgram<Rational> prob;
  auto& rel = prob.relaxation;
  rel.sense = Sense::maximize;
  rel.add_variable(q(1), q(0), q(1));
  rel.add_variable(q(1), q(0), q(1));
  rel.add_row({q(1), q(1)}, Relation::less_equal, q(1));
  prob.integer_variables = {0, 1};
  auto optima = mip::enumerate_optima(prob, Tolerances<Rational>());
  ASSERT_EQ(optima.size(), 2u);
  std::sort(optima.begin(), optima.end());
  EXPECT_EQ(optima[0][0], q(0));
  EXPECT_EQ(optima[0][1], q(1));
  EXPECT_EQ(optima[1][0], q(1));
  EXPECT_EQ(optima[1][1], q(0));
}

TEST(Mip, EnumerationBudgetEnforced) {
  MixedIntegerProgram<Rational> prob;
  auto& rel = prob.relaxation;
  rel.sense = Sense::maximize;
  for (int j = 0; j < 7; ++j) {
    rel.add_variable(q(1), q(0), q(1));
    prob.integer_variables.push_back(j);
  }
  EXPECT_THROW(mip::enumerate_optima(prob, Tolerances<Rational>()),
               mip::BudgetExceeded);
}

TEST(Mip, UnboundedIntegerRangeRejected) {
  MixedIntegerProgram<Rational> prob;
  prob.relaxation.sense = Sense::minimize;
  prob.relaxation.add_variable(q(1), q(0), std::nullopt);
  prob.integer_variables = {0};
  EXPECT_THROW(
      mip::integer_variable_range(prob, 0, Tolerances<Rational>()),
      mip::BudgetExceeded);
}

}  // namespace
}  // namespace stricteq
