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

#include "adjmech/profit.h"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>

#include <boost/math/tools/toms748_solve.hpp>

#include "adjmech/equilibrium.h"
#include "adjmech/error.h"

namespace adjmech {
namespace {

constexpr std::size_t kMinUtilitySamples = 10000;

void CheckAgents(int agents) {
  if (agents < 2) {
    throw Error(ErrorCode::kInvalidArgument, "need at least two agents");
  }
}

// Maximizes f on [lo, hi]; returns the final bracket midpoint.
template <typename F>
double GoldenSectionMax(F&& f, double lo, double hi, double tol,
                        int* iterations) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = hi - inv_phi * (hi - lo);
  double x2 = lo + inv_phi * (hi - lo);
  double f1 = f(x1);
  double f2 = f(x2);
  int it = 0;
  while (hi - lo > tol) {
    if (++it > kOptimizerIterationCap) {
      throw Error(ErrorCode::kNoConvergence,
                  "golden-section search hit the iteration cap");
    }
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + inv_phi * (hi - lo);
      f2 = f(x2);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - inv_phi * (hi - lo);
      f1 = f(x1);
    }
  }
  *iterations = it;
  return 0.5 * (lo + hi);
}

OptimizationResult Finish(const AdjustmentRule& rule, int agents,
                          OptimizeMethod method, double c_star,
                          int iterations) {
  OptimizationResult result;
  result.c_star = c_star;
  result.profit_at_star = ExpectedProfit(rule, c_star, agents);
  result.method = method;
  result.iterations = iterations;
  result.profitable =
      c_star > 0.0 && result.profit_at_star > ExpectedProfit(rule, 0.0, agents);
  return result;
}

}  // namespace

double BaselineRevenueFactor(int agents) {
  CheckAgents(agents);
  return (agents - 1.0) / (agents + 1.0);
}

double EquilibriumBidFraction(int agents) {
  CheckAgents(agents);
  return (agents - 1.0) / agents;
}

std::string_view MethodName(OptimizeMethod method) {
  switch (method) {
    case OptimizeMethod::kClosedForm: return "closed-form";
    case OptimizeMethod::kGoldenSection: return "golden-section";
    case OptimizeMethod::kDerivativeRoot: return "derivative-root";
  }
  return "unknown";
}

OptimizeMethod ParseMethod(std::string_view name) {
  for (auto m : {OptimizeMethod::kClosedForm, OptimizeMethod::kGoldenSection,
                 OptimizeMethod::kDerivativeRoot}) {
    if (MethodName(m) == name) return m;
  }
  throw Error(ErrorCode::kInvalidArgument,
              "unknown method '" + std::string(name) + "'");
}

double ExpectedUtilityClosedForm(const AdjustmentRule& rule, double cost,
                                 int agents) {
  rule.Validate();
  return rule.Scale(cost) * BaselineRevenueFactor(agents);
}

EstimateWithCI ExpectedUtilityMonteCarlo(const AdjustmentRule& rule,
                                         double cost, int agents,
                                         const SamplePlan& plan) {
  rule.Validate();
  CheckAgents(agents);
  if (plan.samples < kMinUtilitySamples) {
    throw Error(ErrorCode::kInsufficientSamples,
                "utility estimate needs >= 10^4 samples, got " +
                    std::to_string(plan.samples));
  }
  const double fraction = EquilibriumBidFraction(agents);
  auto partials = MapStreams<MeanAccumulator>(
      plan, [&](RngStream& stream, std::size_t n) {
        MeanAccumulator acc;
        TypeProfile initial;
        initial.values.resize(static_cast<std::size_t>(agents));
        for (std::size_t i = 0; i < n; ++i) {
          for (double& v : initial.values) v = stream.Uniform01();
          const TypeProfile adjusted = AdjustTypes(initial, rule, cost);
          acc.Add(FirstPriceOutcome(adjusted.values, fraction).designer_receipt);
        }
        return acc;
      });
  MeanAccumulator total;
  for (const auto& p : partials) total.Merge(p);
  return total.ToEstimate(plan.seed, plan.base_stream);
}

double ExpectedProfit(const AdjustmentRule& rule, double cost, int agents) {
  return ExpectedUtilityClosedForm(rule, cost, agents) - cost;
}

double ProfitDerivative(const AdjustmentRule& rule, double cost, int agents) {
  rule.Validate();
  rule.Scale(cost);  // cost check
  if (cost == 0.0 && rule.gamma < 1.0) {
    throw Error(ErrorCode::kSingularDerivative,
                "profit slope is unbounded at c = 0 when gamma < 1");
  }
  return BaselineRevenueFactor(agents) * rule.beta * rule.gamma *
             std::pow(cost, rule.gamma - 1.0) -
         1.0;
}

ProfitCurvePoint EvaluateCurve(const AdjustmentRule& rule, double cost,
                               int agents) {
  ProfitCurvePoint point;
  point.cost = cost;
  point.expected_utility = ExpectedUtilityClosedForm(rule, cost, agents);
  point.expected_profit = point.expected_utility - cost;
  point.derivative = (cost == 0.0 && rule.gamma < 1.0)
                         ? (rule.beta > 0.0
                                ? std::numeric_limits<double>::infinity()
                                : -1.0)
                         : ProfitDerivative(rule, cost, agents);
  return point;
}

std::vector<ProfitCurvePoint> ProfitCurve(const AdjustmentRule& rule,
                                          int agents,
                                          std::span<const double> costs,
                                          int threads) {
  std::vector<ProfitCurvePoint> out(costs.size());
  ParallelFor(costs.size(), threads, [&](std::size_t i) {
    out[i] = EvaluateCurve(rule, costs[i], agents);
  });
  return out;
}

OptimizationResult OptimizeCost(const AdjustmentRule& rule, int agents,
                                OptimizeMethod method) {
  rule.Validate();
  const double r0 = BaselineRevenueFactor(agents);

  if (rule.beta == 0.0) return Finish(rule, agents, method, 0.0, 0);

  if (rule.gamma == 1.0) {
    // Linear utility: the slope R0 * beta - 1 is the same everywhere.
    const double gain = r0 * rule.beta;
    if (gain > 1.0) {
      throw Error(ErrorCode::kUnboundedProfit,
                  "linear adjustment with R0 * beta > 1 has no finite optimum");
    }
    return Finish(rule, agents, method, 0.0, 0);
  }

  const double closed_form =
      std::pow(r0 * rule.beta * rule.gamma, 1.0 / (1.0 - rule.gamma));
  const double upper = 2.0 * closed_form;

  switch (method) {
    case OptimizeMethod::kClosedForm:
      return Finish(rule, agents, method, closed_form, 0);

    case OptimizeMethod::kGoldenSection: {
      int iterations = 0;
      const double c = GoldenSectionMax(
          [&](double x) { return ExpectedProfit(rule, x, agents); }, 0.0,
          upper, kOptimizerTolerance, &iterations);
      return Finish(rule, agents, method, c, iterations);
    }

    case OptimizeMethod::kDerivativeRoot: {
      auto slope = [&](double x) { return ProfitDerivative(rule, x, agents); };
      const double lo = std::min(kDerivativeFloor, upper);
      const double f_lo = slope(lo);
      const double f_hi = slope(upper);
      // The root sits below the bracket floor; the gain from locating it
      // more precisely is below double resolution.
      if (f_lo <= 0.0) return Finish(rule, agents, method, lo, 0);
      std::uintmax_t iterations = kOptimizerIterationCap;
      const auto bracket = boost::math::tools::toms748_solve(
          slope, lo, upper, f_lo, f_hi,
          boost::math::tools::eps_tolerance<double>(
              std::numeric_limits<double>::digits - 3),
          iterations);
      if (iterations >= static_cast<std::uintmax_t>(kOptimizerIterationCap)) {
        throw Error(ErrorCode::kNoConvergence,
                    "derivative root search hit the iteration cap");
      }
      return Finish(rule, agents, method,
                    0.5 * (bracket.first + bracket.second),
                    static_cast<int>(iterations));
    }
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown optimization method");
}

ImplementabilityResult IsProfitableBayesianImplementable(
    const AdjustmentRule& rule, int agents) {
  const OptimizationResult opt =
      OptimizeCost(rule, agents, OptimizeMethod::kClosedForm);
  ImplementabilityResult result;
  result.witness.c_star = opt.c_star;
  result.witness.profit_at_star = opt.profit_at_star;
  result.witness.profit_at_zero = ExpectedProfit(rule, 0.0, agents);
  if (!opt.profitable) return result;

  std::vector<double> probes;
  for (int i = 0; i <= 20; ++i) probes.push_back(i / 20.0);
  result.implementable =
      VerifyLinearFixedPoint(rule, opt.c_star, probes, agents);
  return result;
}

bool ConcavityCheck(const AdjustmentRule& rule, int agents,
                    std::span<const double> costs) {
  if (costs.size() < 3) {
    throw Error(ErrorCode::kInvalidArgument, "concavity grid needs >= 3 points");
  }
  for (std::size_t i = 0; i < costs.size(); ++i) {
    if (!(costs[i] > 0.0) || (i > 0 && !(costs[i] > costs[i - 1]))) {
      throw Error(ErrorCode::kInvalidArgument,
                  "concavity grid must be positive and ascending");
    }
  }
  std::vector<double> u(costs.size());
  for (std::size_t i = 0; i < costs.size(); ++i) {
    u[i] = ExpectedUtilityClosedForm(rule, costs[i], agents);
  }
  for (std::size_t i = 1; i + 1 < costs.size(); ++i) {
    const double left = (u[i] - u[i - 1]) / (costs[i] - costs[i - 1]);
    const double right = (u[i + 1] - u[i]) / (costs[i + 1] - costs[i]);
    // Reduces to the plain second difference on a uniform grid.
    const double second = (right - left) * 0.5 * (costs[i + 1] - costs[i - 1]);
    if (second > 1e-12) return false;
  }
  return true;
}

double RevelationDivergence(const AdjustmentRule& rule, double cost) {
  rule.Validate();
  return 1.0 - 1.0 / rule.Scale(cost);
}

}  // namespace adjmech
