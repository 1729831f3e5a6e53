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

#ifndef ADJMECH_MODEL_H_
#define ADJMECH_MODEL_H_

// Domain types for the adjustable-type auction: initial and adjusted type
// profiles, the power-law adjustment rule, the highest-type-wins social
// choice function and the order-statistic facts used by the profit and
// baseline modules.

#include <cstdint>
#include <cstddef>
#include <span>
#include <vector>

namespace adjmech {

// Valuations move from theta to (1 + beta * c^gamma) * theta once the
// designer announces spend c. gamma = 1/2 is the square-root rule.
struct AdjustmentRule {
  double beta = 0.0;
  double gamma = 0.5;

  // Throws kInvalidArgument unless beta >= 0 and 0 < gamma <= 1.
  void Validate() const;

  // Multiplier applied to every initial type at spend c (c >= 0).
  double Scale(double cost) const;
};

enum class DistributionFamily { kUniform };

struct InitialDistribution {
  DistributionFamily family = DistributionFamily::kUniform;
  double low = 0.0;
  double high = 1.0;

  void Validate() const;  // kBadSupport unless low < high.
  bool IsStandardUniform() const { return low == 0.0 && high == 1.0; }
};

enum class ProfileKind { kInitial, kAdjusted };

struct TypeProfile {
  std::vector<double> values;
  ProfileKind kind = ProfileKind::kInitial;
  // Spend that produced the profile; 0 for initial profiles.
  double cost = 0.0;

  static TypeProfile Initial(std::vector<double> values);
  std::size_t size() const { return values.size(); }
};

// Allocation flags and transfers. transfers[i] <= 0 is what agent i pays.
struct Outcome {
  std::vector<int> allocation;
  int designer_keeps = 0;
  std::vector<double> transfers;
  double designer_receipt = 0.0;

  std::size_t winner() const;
};

struct ModelConfig {
  int agents = 2;
  AdjustmentRule adjustment;
  InitialDistribution distribution;
  std::uint64_t seed = 0;

  void Validate() const;
};

// Applies the rule to every value. Throws kInvalidCost for c < 0 and
// kWrongProfileKind when the input is already adjusted.
TypeProfile AdjustTypes(const TypeProfile& profile, const AdjustmentRule& rule,
                        double cost);

// Highest valuation wins (lowest index on ties) and pays half its valuation.
Outcome ScfOutcome(const TypeProfile& profile);

// Same allocation as ScfOutcome, but the winner pays bid_fraction of its
// valuation. ScfOutcome is the bid_fraction = 1/2 case.
Outcome FirstPriceOutcome(std::span<const double> valuations,
                          double bid_fraction);

// Quasi-linear utility theta * y_agent + t_agent.
double AgentUtility(const Outcome& outcome, std::size_t agent, double theta);

// E[max of `draws` i.i.d. draws]; low + (high - low) * n / (n + 1).
double MaxOrderStatisticMean(int draws, const InitialDistribution& dist);

// Density of an adjusted type when initial types are uniform on [0, 1]:
// 1/s on [0, s] with s = rule.Scale(c).
double AdjustedDensity(const AdjustmentRule& rule, double cost, double x);

}  // namespace adjmech

#endif  // ADJMECH_MODEL_H_
