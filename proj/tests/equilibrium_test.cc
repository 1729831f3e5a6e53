// Copyright 2026 The adjmech Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>
#include <vector>

#include "adjmech/equilibrium.h"
#include "adjmech/error.h"

namespace adjmech {
namespace {

const AdjustmentRule kSqrtRule{2.0, 0.5};
const AdjustmentRule kNoAdjustment{0.0, 0.5};

SamplePlan Plan(std::size_t samples, std::uint64_t seed) {
  SamplePlan plan;
  plan.samples = samples;
  plan.seed = seed;
  return plan;
}

double MaxGap(const PiecewiseStrategy& s, double slope) {
  double gap = 0.0;
  for (std::size_t k = 0; k < s.grid().size(); ++k) {
    gap = std::max(gap, std::abs(s.bids()[k] - slope * s.grid()[k]));
  }
  return gap;
}

TEST_CASE("closed-form best response") {
  CHECK(BestResponseClosedForm(0.8, kSqrtRule, 0.0, 0.5) == doctest::Approx(0.4));
  CHECK(BestResponseClosedForm(0.9, kNoAdjustment, 0.0, 0.3) ==
        doctest::Approx(0.3));
  CHECK(BestResponseClosedForm(0.0, kSqrtRule, 0.3, 0.5) == 0.0);
  // Cap branch scales with s: alpha * (1 + beta sqrt(c)).
  CHECK(BestResponseClosedForm(1.0, kSqrtRule, 1.0 / 9.0, 0.25) ==
        doctest::Approx(0.25 * 5.0 / 3.0));

  try {
    BestResponseClosedForm(0.5, kSqrtRule, 0.0, 0.0);
    FAIL("expected DegenerateOpponent");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kDegenerateOpponent);
  }
  CHECK_THROWS_AS(BestResponseClosedForm(1.5, kSqrtRule, 0.0, 0.5), Error);
  CHECK_THROWS_AS(BestResponseClosedForm(0.5, kSqrtRule, -1.0, 0.5), Error);
}

TEST_CASE("grid oracle best response") {
  CHECK(std::abs(BestResponseGridOracle(0.8, kSqrtRule, 0.0, 0.5, 10001) - 0.4) <=
        1e-4);
  CHECK(std::abs(BestResponseGridOracle(0.9, kNoAdjustment, 0.0, 0.3, 10001) -
                 0.3) <= 1e-4);
  CHECK(BestResponseGridOracle(0.0, kSqrtRule, 0.2, 0.5, 10001) == 0.0);
  CHECK_THROWS_AS(BestResponseGridOracle(0.5, kSqrtRule, 0.0, 0.5, 99), Error);
}

TEST_CASE("grid oracle matches the closed form on random tuples") {
  std::mt19937_64 gen(17);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  constexpr std::size_t kPoints = 2001;
  for (int trial = 0; trial < 100; ++trial) {
    const double theta0 = unit(gen);
    const AdjustmentRule rule{5.0 * unit(gen), 0.5};
    const double cost = unit(gen);
    const double alpha = 0.05 + 0.95 * unit(gen);
    const double step = alpha * rule.Scale(cost) / (kPoints - 1);
    const double grid = BestResponseGridOracle(theta0, rule, cost, alpha, kPoints);
    const double exact = BestResponseClosedForm(theta0, rule, cost, alpha);
    CHECK(std::abs(grid - exact) <= step * (1 + 1e-9));
  }
}

TEST_CASE("linear fixed point") {
  const std::vector<double> probes = {0.0, 0.25, 0.5, 0.75, 1.0};
  CHECK(VerifyLinearFixedPoint(kSqrtRule, 1.0 / 9.0, probes));
  const std::vector<double> ends = {0.0, 1.0};
  CHECK(VerifyLinearFixedPoint(kNoAdjustment, 0.0, ends));
  CHECK_FALSE(VerifyLinearFixedPoint(kSqrtRule, 1.0 / 9.0, probes, 2, 0.25));
  CHECK_FALSE(VerifyLinearFixedPoint(kSqrtRule, 1.0 / 9.0,
                                     std::vector<double>{1.0}, 2, 0.25));

  // Three bidders: slope 2/3 against two rivals bidding 2/3 of their type.
  CHECK(VerifyLinearFixedPoint(kSqrtRule, 0.2, probes, 3));
  CHECK_FALSE(VerifyLinearFixedPoint(kSqrtRule, 0.2, probes, 3, 0.5));

  std::mt19937_64 gen(3);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 500; ++trial) {
    const AdjustmentRule rule{5.0 * unit(gen), 0.5};
    const std::vector<double> random_probes = {unit(gen), unit(gen), unit(gen)};
    CHECK(VerifyLinearFixedPoint(rule, unit(gen), random_probes));
  }
}

TEST_CASE("piecewise strategy win probability matches enumeration") {
  const PiecewiseStrategy s({0.0, 0.3, 0.6, 1.0}, {0.0, 0.15, 0.15, 0.5});
  CHECK(s.Bid(0.45) == doctest::Approx(0.15));
  CHECK(s.Bid(0.8) == doctest::Approx(0.15 + 0.35 * 0.5));
  // Brute force over a fine midpoint grid of rival types, ties split.
  constexpr int kTypes = 200000;
  for (double b : {0.0, 0.05, 0.15, 0.2, 0.49, 0.5, 0.7}) {
    double wins = 0.0;
    for (int i = 0; i < kTypes; ++i) {
      const double rival = s.Bid((i + 0.5) / kTypes);
      if (rival < b) wins += 1.0;
      else if (rival == b) wins += 0.5;
    }
    CHECK(s.WinProbability(b) == doctest::Approx(wins / kTypes).epsilon(1e-4));
  }
  // Breakpoints inside (0, 1) extend flat.
  const PiecewiseStrategy inner({0.2, 0.8}, {0.1, 0.4});
  CHECK(inner.WinProbability(0.1) == doctest::Approx(0.1));
  CHECK(inner.WinProbability(0.25) == doctest::Approx(0.5));
  CHECK(inner.WinProbability(0.4) == doctest::Approx(0.9));
}

TEST_CASE("piecewise strategy validation") {
  CHECK_THROWS_AS(PiecewiseStrategy({0.0, 1.0}, {0.5, 0.2}), Error);
  CHECK_THROWS_AS(PiecewiseStrategy({0.0, 1.0}, {-0.1, 0.2}), Error);
  CHECK_THROWS_AS(PiecewiseStrategy({0.5, 0.5}, {0.1, 0.2}), Error);
  CHECK_THROWS_AS(PiecewiseStrategy({0.0, 1.2}, {0.1, 0.2}), Error);
  try {
    PiecewiseStrategy({0.0, 0.5, 1.0}, {0.0, 0.3, 0.1});
    FAIL("expected InvalidStrategy");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kInvalidStrategy);
  }
}

TEST_CASE("iterated best response converges from truthful bidding") {
  const auto grid = PiecewiseStrategy::UniformGrid(101);
  constexpr std::size_t kPoints = 2001;
  const PiecewiseStrategy truthful =
      PiecewiseStrategy::FromFunction(grid, [](double t) { return t; });
  const PiecewiseStrategy out =
      IteratedBestResponse(kNoAdjustment, 0.0, truthful, 20, kPoints);
  CHECK(MaxGap(out, 0.5) <= 2.0 / (kPoints - 1));
}

TEST_CASE("iterated best response keeps the equilibrium") {
  const auto grid = PiecewiseStrategy::UniformGrid(51);
  constexpr std::size_t kPoints = 2001;
  const double c = 1.0 / 9.0;
  const double s = kSqrtRule.Scale(c);
  const PiecewiseStrategy eq = PiecewiseStrategy::FromFunction(
      grid, [s](double t) { return 0.5 * s * t; });
  const PiecewiseStrategy out = IteratedBestResponse(kSqrtRule, c, eq, 1, kPoints);
  CHECK(MaxGap(out, 0.5 * s) <= s / (kPoints - 1) * (1 + 1e-9));
}

TEST_CASE("iterated best response from starts above the equilibrium") {
  const auto grid = PiecewiseStrategy::UniformGrid(101);
  constexpr std::size_t kPoints = 2001;
  struct Point {
    AdjustmentRule rule;
    double cost;
    double start_slope;  // fraction of the adjusted type
  };
  const Point points[] = {
      {{0.0, 0.5}, 0.0, 1.0},  {{2.0, 0.5}, 0.0, 0.8},
      {{2.0, 0.5}, 1.0 / 9.0, 1.0}, {{1.0, 0.5}, 0.5, 0.6},
      {{4.0, 0.5}, 1.0, 0.75},
  };
  for (const Point& p : points) {
    const double s = p.rule.Scale(p.cost);
    const PiecewiseStrategy start = PiecewiseStrategy::FromFunction(
        grid, [&](double t) { return p.start_slope * s * t; });
    const PiecewiseStrategy out =
        IteratedBestResponse(p.rule, p.cost, start, 20, kPoints);
    CHECK(MaxGap(out, 0.5 * s) <= 2.0 * s / (kPoints - 1) * (1 + 1e-9));
  }
}

TEST_CASE("best responses never outbid the rival's top bid by more than a step") {
  // From an underbidding start the top bid can climb by at most one grid step
  // per update (only tie splitting at an atom rewards outbidding the rival's
  // maximum), so 20 rounds cannot reach theta / 2.
  const auto grid = PiecewiseStrategy::UniformGrid(101);
  constexpr std::size_t kPoints = 2001;
  const double s = kSqrtRule.Scale(0.0);
  const double step = s / (kPoints - 1);
  const PiecewiseStrategy low =
      PiecewiseStrategy::FromFunction(grid, [](double t) { return 0.1 * t; });
  const PiecewiseStrategy out = IteratedBestResponse(kSqrtRule, 0.0, low, 20, kPoints);
  CHECK(out.MaxBid() <= 0.1 * s + 40 * step + 1e-12);
  CHECK(MaxGap(out, 0.5 * s) > 2 * step);
}

TEST_CASE("iterated best response rejects bad input") {
  const auto grid = PiecewiseStrategy::UniformGrid(11);
  const PiecewiseStrategy ok =
      PiecewiseStrategy::FromFunction(grid, [](double t) { return t; });
  CHECK_THROWS_AS(IteratedBestResponse(kSqrtRule, 0.0, ok, 0, 101), Error);
}

TEST_CASE("Monte Carlo deviation check") {
  DeviationCheck check;
  check.rule = kSqrtRule;
  check.cost = 1.0 / 9.0;
  check.theta0 = 0.7;
  check.deviation_grid = 201;
  check.plan = Plan(100000, 1);
  const DeviationReport pass = VerifyBneMonteCarlo(check);
  CHECK(pass.passes);
  const double s = kSqrtRule.Scale(check.cost);
  CHECK(pass.equilibrium_bid == doctest::Approx(0.5 * s * 0.7));
  // Interim utility at equilibrium: (theta^c / 2) * theta0.
  const double analytic = 0.5 * s * 0.7 * 0.7;
  CHECK(std::abs(pass.equilibrium_utility.mean - analytic) <=
        4 * pass.equilibrium_utility.std_error);

  check.theta0 = 0.0;
  const DeviationReport zero = VerifyBneMonteCarlo(check);
  CHECK(zero.equilibrium_utility.mean == 0.0);
  CHECK(zero.passes);

  check.theta0 = 0.7;
  check.equilibrium_bid = 0.9 * s * 0.7;
  CHECK_FALSE(VerifyBneMonteCarlo(check).passes);

  check.equilibrium_bid.reset();
  check.plan = Plan(9999, 1);
  try {
    VerifyBneMonteCarlo(check);
    FAIL("expected InsufficientSamples");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kInsufficientSamples);
  }
}

TEST_CASE("deviation check is independent of thread count") {
  DeviationCheck check;
  check.rule = kSqrtRule;
  check.cost = 1.0 / 9.0;
  check.theta0 = 0.2;
  check.plan = Plan(50000, 9);
  check.plan.chunk_size = 4096;
  const DeviationReport a = VerifyBneMonteCarlo(check);
  check.plan.threads = 4;
  const DeviationReport b = VerifyBneMonteCarlo(check);
  CHECK(a.equilibrium_utility.mean == b.equilibrium_utility.mean);
  CHECK(a.best_deviation_utility.mean == b.best_deviation_utility.mean);
  CHECK(a.best_deviation_bid == b.best_deviation_bid);
}

}  // namespace
}  // namespace adjmech
