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

#ifndef ADJMECH_EQUILIBRIUM_H_
#define ADJMECH_EQUILIBRIUM_H_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "adjmech/mc.h"
#include "adjmech/model.h"

namespace adjmech {

// b = alpha * adjusted type.
struct LinearStrategy {
  double alpha = 0.5;

  void Validate() const;
  double Bid(double adjusted_type) const { return alpha * adjusted_type; }
};

// Bids as a function of the *initial* type, piecewise linear between
// breakpoints and flat outside them. Bids must be non-negative and
// non-decreasing.
class PiecewiseStrategy {
 public:
  // Throws kInvalidStrategy on a malformed grid or non-monotone bids.
  PiecewiseStrategy(std::vector<double> grid, std::vector<double> bids);

  static PiecewiseStrategy FromFunction(std::vector<double> grid,
                                        const std::function<double(double)>& f);
  // `points` breakpoints evenly spaced on [0, 1].
  static std::vector<double> UniformGrid(std::size_t points);

  const std::vector<double>& grid() const { return grid_; }
  const std::vector<double>& bids() const { return bids_; }

  double Bid(double initial_type) const;
  double MaxBid() const { return bids_.back(); }

  // Probability that a bid b beats this strategy when the initial type is
  // uniform on [0, 1]; ties with an atom of the strategy are split evenly.
  double WinProbability(double bid) const;

 private:
  std::vector<double> grid_;
  std::vector<double> bids_;
};

struct DeviationReport {
  double equilibrium_bid = 0.0;
  EstimateWithCI equilibrium_utility;
  double best_deviation_bid = 0.0;
  EstimateWithCI best_deviation_utility;
  bool passes = false;
};

// Best bid for a bidder of initial type theta0 in [0, 1] facing
// `opponents` rivals who all bid opponent_alpha times their adjusted type.
// With one rival this is theta^c / 2 when theta0 / 2 <= alpha and the
// rival's top bid alpha * s otherwise. Throws kDegenerateOpponent for
// opponent_alpha <= 0.
double BestResponseClosedForm(double theta0, const AdjustmentRule& rule,
                              double cost, double opponent_alpha,
                              int opponents = 1);

// Exhaustive search of (theta^c - b) * min(1, b / (alpha * s)) over
// grid_points bids evenly spaced on [0, alpha * s]. Two-bidder only.
double BestResponseGridOracle(double theta0, const AdjustmentRule& rule,
                              double cost, double opponent_alpha,
                              std::size_t grid_points);

// True iff every probe's closed-form best response against rivals playing
// opponent_alpha (default (I-1)/I) equals ((I-1)/I) * theta^c.
bool VerifyLinearFixedPoint(const AdjustmentRule& rule, double cost,
                            std::span<const double> probes, int agents = 2,
                            std::optional<double> opponent_alpha = {});

// Two-bidder best-response dynamics on piecewise strategies. Each round
// first agent 0 and then agent 1 replace their strategy by the grid best
// response (grid_points bids on [0, s]) to the other's current strategy.
// Returns the last strategy produced.
PiecewiseStrategy IteratedBestResponse(const AdjustmentRule& rule, double cost,
                                       const PiecewiseStrategy& initial,
                                       int rounds, std::size_t grid_points);

struct DeviationCheck {
  AdjustmentRule rule;
  double cost = 0.0;
  double theta0 = 0.5;
  std::size_t deviation_grid = 201;
  SamplePlan plan;
  // Replaces the equilibrium bid theta^c / 2 under test.
  std::optional<double> equilibrium_bid;
};

// Monte Carlo check of the interim deviation inequality for one type, with
// the rival bidding half its adjusted type. Throws kInsufficientSamples for
// fewer than 10^4 samples.
DeviationReport VerifyBneMonteCarlo(const DeviationCheck& check);

}  // namespace adjmech

#endif  // ADJMECH_EQUILIBRIUM_H_
