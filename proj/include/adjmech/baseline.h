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

#ifndef ADJMECH_BASELINE_H_
#define ADJMECH_BASELINE_H_

// The classical optimal auction used as a benchmark: a second-price auction
// with the revenue-maximizing reserve for i.i.d. uniform [0, 1] bidders.

#include "adjmech/mc.h"
#include "adjmech/model.h"

namespace adjmech {

struct BaselineReport {
  double reserve = 0.0;
  double payment_per_bidder = 0.0;
  double seller_revenue = 0.0;
  double paper_agent_profit = 0.0;
  EstimateWithCI oracle_agent_profit;
};

// Root of r = (1 - F(r)) / f(r), clipped to the support: max(low, high/2).
double OptimalReserve(const InitialDistribution& dist);

// r (1 - F(r)) G(r) + int_r^1 y (1 - F(y)) g(y) dy with F(y) = y and
// G(y) = y^(I-1). Throws kInvalidReserve outside [0, 1].
double ExpectedPaymentPerBidder(double reserve, int agents);

double SellerRevenue(double reserve, int agents);

// Midpoint of [reserve, 1] minus the expected payment. This is the 13/24
// figure for two bidders at reserve 1/2 and is only defined there
// (kUnsupportedCase otherwise). It is not a bidder's true surplus; see
// AgentProfitOracleMonteCarlo.
double MidpointAgentProfit(double reserve, int agents);

// Ex-ante surplus of bidder 0 in a simulated second-price auction with
// reserve. Needs plan.samples >= 10^5.
EstimateWithCI AgentProfitOracleMonteCarlo(double reserve, int agents,
                                           const SamplePlan& plan);

// Seller revenue of the same simulated auction.
EstimateWithCI SellerRevenueMonteCarlo(double reserve, int agents,
                                       const SamplePlan& plan);

// Ex-ante bidder profit with adjustable types at c* = beta^2 / 36:
// 1/6 + beta^2 / 36. Square-root rule and two bidders only.
double AdjustedAgentProfit(const AdjustmentRule& rule, int agents);

BaselineReport RunBaseline(double reserve, int agents, const SamplePlan& plan);

}  // namespace adjmech

#endif  // ADJMECH_BASELINE_H_
