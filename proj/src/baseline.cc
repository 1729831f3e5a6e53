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

#include "adjmech/baseline.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "adjmech/error.h"
#include "adjmech/profit.h"

namespace adjmech {
namespace {

constexpr std::size_t kMinAuctionSamples = 100000;

void CheckReserve(double reserve) {
  if (!(reserve >= 0.0 && reserve <= 1.0)) {
    throw Error(ErrorCode::kInvalidReserve,
                "reserve must lie in [0, 1], got " + std::to_string(reserve));
  }
}

void CheckBidders(int agents) {
  if (agents < 1) {
    throw Error(ErrorCode::kInvalidArgument, "need at least one bidder");
  }
}

void CheckAuctionSamples(const SamplePlan& plan) {
  if (plan.samples < kMinAuctionSamples) {
    throw Error(ErrorCode::kInsufficientSamples,
                "auction simulation needs >= 10^5 samples, got " +
                    std::to_string(plan.samples));
  }
}

struct AuctionDraw {
  double bidder0_surplus = 0.0;
  double revenue = 0.0;
};

// One second-price auction with reserve: the highest valuation at or above
// the reserve wins and pays max(reserve, second-highest valuation).
AuctionDraw SimulateReserveAuction(RngStream& stream, double reserve,
                                   int agents) {
  double first = -1.0;
  double second = -1.0;
  double own = 0.0;
  std::size_t winner = 0;
  for (int i = 0; i < agents; ++i) {
    const double x = stream.Uniform01();
    if (i == 0) own = x;
    if (x > first) {
      second = first;
      first = x;
      winner = static_cast<std::size_t>(i);
    } else if (x > second) {
      second = x;
    }
  }
  AuctionDraw draw;
  if (first < reserve) return draw;
  const double price = std::max(reserve, second);
  draw.revenue = price;
  if (winner == 0) draw.bidder0_surplus = own - price;
  return draw;
}

}  // namespace

double OptimalReserve(const InitialDistribution& dist) {
  if (dist.family != DistributionFamily::kUniform) {
    throw Error(ErrorCode::kUnsupportedDistribution, "uniform family only");
  }
  dist.Validate();
  if (dist.low < 0.0) {
    throw Error(ErrorCode::kUnsupportedDistribution,
                "valuations must be non-negative");
  }
  // Virtual value r - (high - r) vanishes at high / 2.
  return std::max(dist.low, 0.5 * dist.high);
}

double ExpectedPaymentPerBidder(double reserve, int agents) {
  CheckReserve(reserve);
  CheckBidders(agents);
  const double r = reserve;
  const double n = agents;
  // r (1 - r) r^(I-1) + (I-1) int_r^1 (y^(I-1) - y^I) dy
  const double at_reserve = std::pow(r, n) * (1.0 - r);
  const double above = (n - 1.0) * ((1.0 - std::pow(r, n)) / n -
                                    (1.0 - std::pow(r, n + 1.0)) / (n + 1.0));
  return at_reserve + above;
}

double SellerRevenue(double reserve, int agents) {
  return agents * ExpectedPaymentPerBidder(reserve, agents);
}

double MidpointAgentProfit(double reserve, int agents) {
  if (agents != 2 || reserve != 0.5) {
    throw Error(ErrorCode::kUnsupportedCase,
                "the midpoint agent-profit figure is defined for two bidders "
                "at reserve 1/2 only");
  }
  const double midpoint = 0.5 * (reserve + 1.0);
  return midpoint - ExpectedPaymentPerBidder(reserve, agents);
}

EstimateWithCI AgentProfitOracleMonteCarlo(double reserve, int agents,
                                           const SamplePlan& plan) {
  CheckReserve(reserve);
  CheckBidders(agents);
  CheckAuctionSamples(plan);
  return EstimateByStreams(plan, [&](RngStream& stream) {
    return SimulateReserveAuction(stream, reserve, agents).bidder0_surplus;
  });
}

EstimateWithCI SellerRevenueMonteCarlo(double reserve, int agents,
                                       const SamplePlan& plan) {
  CheckReserve(reserve);
  CheckBidders(agents);
  CheckAuctionSamples(plan);
  return EstimateByStreams(plan, [&](RngStream& stream) {
    return SimulateReserveAuction(stream, reserve, agents).revenue;
  });
}

double AdjustedAgentProfit(const AdjustmentRule& rule, int agents) {
  rule.Validate();
  if (agents != 2 || rule.gamma != 0.5) {
    throw Error(ErrorCode::kUnsupportedCase,
                "adjusted agent profit is derived for gamma = 1/2 and two "
                "bidders only");
  }
  const double c_star =
      OptimizeCost(rule, agents, OptimizeMethod::kClosedForm).c_star;
  // The winner keeps half its adjusted type; each bidder wins half the time.
  const double winner_profit =
      0.5 * rule.Scale(c_star) *
      MaxOrderStatisticMean(agents, InitialDistribution{});
  return winner_profit / agents;
}

BaselineReport RunBaseline(double reserve, int agents, const SamplePlan& plan) {
  BaselineReport report;
  report.reserve = reserve;
  report.payment_per_bidder = ExpectedPaymentPerBidder(reserve, agents);
  report.seller_revenue = SellerRevenue(reserve, agents);
  report.paper_agent_profit =
      (agents == 2 && reserve == 0.5) ? MidpointAgentProfit(reserve, agents)
                                      : std::nan("");
  report.oracle_agent_profit =
      AgentProfitOracleMonteCarlo(reserve, agents, plan);
  return report;
}

}  // namespace adjmech
