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

#include "adjmech/model.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "adjmech/error.h"

namespace adjmech {

namespace {

void CheckCost(double cost) {
  if (!(cost >= 0.0) || !std::isfinite(cost)) {
    throw Error(ErrorCode::kInvalidCost,
                "adjustment cost must be finite and >= 0, got " +
                    std::to_string(cost));
  }
}

}  // namespace

void AdjustmentRule::Validate() const {
  if (!(beta >= 0.0) || !std::isfinite(beta)) {
    throw Error(ErrorCode::kInvalidArgument, "beta must be >= 0");
  }
  if (!(gamma > 0.0 && gamma <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "gamma must lie in (0, 1]");
  }
}

double AdjustmentRule::Scale(double cost) const {
  CheckCost(cost);
  return 1.0 + beta * std::pow(cost, gamma);
}

void InitialDistribution::Validate() const {
  if (!(low < high) || !std::isfinite(low) || !std::isfinite(high)) {
    throw Error(ErrorCode::kBadSupport, "distribution needs low < high");
  }
}

TypeProfile TypeProfile::Initial(std::vector<double> values) {
  for (double v : values) {
    if (!(v >= 0.0)) {
      throw Error(ErrorCode::kInvalidArgument, "valuations must be >= 0");
    }
  }
  return TypeProfile{std::move(values), ProfileKind::kInitial, 0.0};
}

std::size_t Outcome::winner() const {
  auto it = std::find(allocation.begin(), allocation.end(), 1);
  return static_cast<std::size_t>(it - allocation.begin());
}

void ModelConfig::Validate() const {
  if (agents < 2) {
    throw Error(ErrorCode::kInvalidArgument, "need at least two agents");
  }
  adjustment.Validate();
  distribution.Validate();
}

TypeProfile AdjustTypes(const TypeProfile& profile, const AdjustmentRule& rule,
                        double cost) {
  CheckCost(cost);
  if (profile.kind != ProfileKind::kInitial) {
    throw Error(ErrorCode::kWrongProfileKind,
                "only initial profiles can be adjusted");
  }
  rule.Validate();
  const double scale = rule.Scale(cost);
  TypeProfile adjusted{profile.values, ProfileKind::kAdjusted, cost};
  for (double& v : adjusted.values) v *= scale;
  return adjusted;
}

Outcome FirstPriceOutcome(std::span<const double> valuations,
                          double bid_fraction) {
  if (valuations.empty()) {
    throw Error(ErrorCode::kEmptyProfile, "no agents in profile");
  }
  // max_element keeps the first maximum: ties go to the lowest index.
  const auto best = std::max_element(valuations.begin(), valuations.end());
  const auto winner = static_cast<std::size_t>(best - valuations.begin());

  Outcome outcome;
  outcome.allocation.assign(valuations.size(), 0);
  outcome.transfers.assign(valuations.size(), 0.0);
  outcome.allocation[winner] = 1;
  const double payment = bid_fraction * valuations[winner];
  outcome.transfers[winner] = -payment;
  outcome.designer_receipt = payment;
  return outcome;
}

Outcome ScfOutcome(const TypeProfile& profile) {
  return FirstPriceOutcome(profile.values, 0.5);
}

double AgentUtility(const Outcome& outcome, std::size_t agent, double theta) {
  if (agent >= outcome.allocation.size() ||
      agent >= outcome.transfers.size()) {
    throw Error(ErrorCode::kBadIndex,
                "agent index " + std::to_string(agent) + " out of range");
  }
  return theta * outcome.allocation[agent] + outcome.transfers[agent];
}

double MaxOrderStatisticMean(int draws, const InitialDistribution& dist) {
  if (dist.family != DistributionFamily::kUniform) {
    throw Error(ErrorCode::kUnsupportedDistribution, "uniform family only");
  }
  dist.Validate();
  if (draws < 1) {
    throw Error(ErrorCode::kInvalidArgument, "need at least one draw");
  }
  const double n = draws;
  return dist.low + (dist.high - dist.low) * n / (n + 1.0);
}

double AdjustedDensity(const AdjustmentRule& rule, double cost, double x) {
  const double scale = rule.Scale(cost);
  return (x >= 0.0 && x <= scale) ? 1.0 / scale : 0.0;
}

}  // namespace adjmech
