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

#ifndef ADJMECH_PROFIT_H_
#define ADJMECH_PROFIT_H_

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "adjmech/mc.h"
#include "adjmech/model.h"

namespace adjmech {

// Expected winning bid with no adjustment, (I-1)/(I+1) for uniform [0, 1]
// types under the symmetric first-price equilibrium. 1/3 for two bidders.
double BaselineRevenueFactor(int agents);

// Equilibrium bid as a fraction of the adjusted type, (I-1)/I.
double EquilibriumBidFraction(int agents);

struct ProfitCurvePoint {
  double cost = 0.0;
  double expected_utility = 0.0;
  double expected_profit = 0.0;
  double derivative = 0.0;  // +inf at c = 0 when gamma < 1.
};

enum class OptimizeMethod { kClosedForm, kGoldenSection, kDerivativeRoot };

std::string_view MethodName(OptimizeMethod method);
// Accepts closed-form, golden-section, derivative-root.
OptimizeMethod ParseMethod(std::string_view name);

struct OptimizationResult {
  double c_star = 0.0;
  double profit_at_star = 0.0;
  OptimizeMethod method = OptimizeMethod::kClosedForm;
  bool profitable = false;
  int iterations = 0;
};

inline constexpr int kOptimizerIterationCap = 10000;
inline constexpr double kOptimizerTolerance = 1e-9;
inline constexpr double kDerivativeFloor = 1e-12;

double ExpectedUtilityClosedForm(const AdjustmentRule& rule, double cost,
                                 int agents);

// Simulates the first-price auction at equilibrium bids and averages the
// designer's receipt. Needs plan.samples >= 10^4.
EstimateWithCI ExpectedUtilityMonteCarlo(const AdjustmentRule& rule,
                                         double cost, int agents,
                                         const SamplePlan& plan);

double ExpectedProfit(const AdjustmentRule& rule, double cost, int agents);

// d/dc of the expected profit. Throws kSingularDerivative at c = 0 for
// gamma < 1.
double ProfitDerivative(const AdjustmentRule& rule, double cost, int agents);

ProfitCurvePoint EvaluateCurve(const AdjustmentRule& rule, double cost,
                               int agents);
std::vector<ProfitCurvePoint> ProfitCurve(const AdjustmentRule& rule,
                                          int agents,
                                          std::span<const double> costs,
                                          int threads = 1);

// Maximizes expected profit over c >= 0. For gamma = 1 the answer follows
// from the slope at zero: R0 * beta < 1 gives c* = 0, R0 * beta = 1 is a
// tie resolved toward no spend and R0 * beta > 1 throws kUnboundedProfit.
OptimizationResult OptimizeCost(const AdjustmentRule& rule, int agents,
                                OptimizeMethod method);

struct ImplementabilityWitness {
  double c_star = 0.0;
  double profit_at_star = 0.0;
  double profit_at_zero = 0.0;
};

struct ImplementabilityResult {
  bool implementable = false;
  ImplementabilityWitness witness;
};

// c* > 0 and the linear first-price equilibrium survives at c*.
ImplementabilityResult IsProfitableBayesianImplementable(
    const AdjustmentRule& rule, int agents);

// Second divided differences of the expected utility over an ascending grid
// of positive costs are all <= 1e-12.
bool ConcavityCheck(const AdjustmentRule& rule, int agents,
                    std::span<const double> costs);

// Total-variation distance between the initial uniform [0, 1] type law and
// the adjusted uniform [0, s] law: 1 - 1/s.
double RevelationDivergence(const AdjustmentRule& rule, double cost);

}  // namespace adjmech

#endif  // ADJMECH_PROFIT_H_
