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

#include "adjmech/equilibrium.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "adjmech/error.h"

namespace adjmech {
namespace {

constexpr std::size_t kMinDeviationSamples = 10000;

void CheckInitialType(double theta0) {
  if (!(theta0 >= 0.0 && theta0 <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument,
                "initial type must lie in [0, 1], got " +
                    std::to_string(theta0));
  }
}

void CheckOpponentAlpha(double alpha) {
  if (!(alpha > 0.0)) {
    throw Error(ErrorCode::kDegenerateOpponent,
                "opponent slope must be > 0; win probability at b = 0 is "
                "undefined");
  }
  if (alpha > 1.0) {
    throw Error(ErrorCode::kInvalidArgument, "opponent slope must be <= 1");
  }
}

// Measure of {theta in [0, 1] : bid(theta) <= b} and {... < b} for a
// non-decreasing piecewise-linear bid function given by (xs, ys), which
// already spans [0, 1].
double LevelMeasure(const std::vector<double>& xs, const std::vector<double>& ys,
                    double b, bool inclusive) {
  if (inclusive) {
    if (b < ys.front()) return 0.0;
    if (b >= ys.back()) return 1.0;
    // Last breakpoint with y <= b; the next one is strictly above b.
    const auto j = static_cast<std::size_t>(
        std::upper_bound(ys.begin(), ys.end(), b) - ys.begin()) - 1;
    return xs[j] + (b - ys[j]) / (ys[j + 1] - ys[j]) * (xs[j + 1] - xs[j]);
  }
  if (b <= ys.front()) return 0.0;
  if (b > ys.back()) return 1.0;
  // First breakpoint with y >= b; the previous one is strictly below b.
  const auto j = static_cast<std::size_t>(
      std::lower_bound(ys.begin(), ys.end(), b) - ys.begin());
  return xs[j - 1] + (b - ys[j - 1]) / (ys[j] - ys[j - 1]) * (xs[j] - xs[j - 1]);
}

PiecewiseStrategy GridBestResponse(const PiecewiseStrategy& opponent,
                                   const std::vector<double>& types,
                                   double scale, std::size_t grid_points) {
  const double step = scale / static_cast<double>(grid_points - 1);
  std::vector<double> win(grid_points);
  for (std::size_t j = 0; j < grid_points; ++j) {
    win[j] = opponent.WinProbability(step * static_cast<double>(j));
  }
  std::vector<double> bids(types.size());
  double floor = 0.0;
  for (std::size_t k = 0; k < types.size(); ++k) {
    const double value = scale * types[k];
    double best_bid = 0.0;
    double best = value * win[0];
    for (std::size_t j = 1; j < grid_points; ++j) {
      const double b = step * static_cast<double>(j);
      if (b > value) break;
      const double u = (value - b) * win[j];
      if (u > best) {
        best = u;
        best_bid = b;
      }
    }
    // Argmaxes are monotone in type; the running max only absorbs
    // floating-point ties.
    floor = std::max(floor, best_bid);
    bids[k] = floor;
  }
  return PiecewiseStrategy(types, std::move(bids));
}

}  // namespace

void LinearStrategy::Validate() const {
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    throw Error(ErrorCode::kInvalidStrategy, "alpha must lie in [0, 1]");
  }
}

PiecewiseStrategy::PiecewiseStrategy(std::vector<double> grid,
                                     std::vector<double> bids)
    : grid_(std::move(grid)), bids_(std::move(bids)) {
  if (grid_.size() < 2 || grid_.size() != bids_.size()) {
    throw Error(ErrorCode::kInvalidStrategy,
                "need >= 2 breakpoints and one bid per breakpoint");
  }
  for (std::size_t i = 0; i < grid_.size(); ++i) {
    if (!(grid_[i] >= 0.0 && grid_[i] <= 1.0)) {
      throw Error(ErrorCode::kInvalidStrategy, "breakpoints must lie in [0, 1]");
    }
    if (i > 0 && !(grid_[i] > grid_[i - 1])) {
      throw Error(ErrorCode::kInvalidStrategy,
                  "breakpoints must be strictly ascending");
    }
    if (!(bids_[i] >= 0.0)) {
      throw Error(ErrorCode::kInvalidStrategy, "bids must be >= 0");
    }
    if (i > 0 && bids_[i] < bids_[i - 1]) {
      throw Error(ErrorCode::kInvalidStrategy, "bids must be non-decreasing");
    }
  }
}

PiecewiseStrategy PiecewiseStrategy::FromFunction(
    std::vector<double> grid, const std::function<double(double)>& f) {
  std::vector<double> bids(grid.size());
  std::transform(grid.begin(), grid.end(), bids.begin(), f);
  return PiecewiseStrategy(std::move(grid), std::move(bids));
}

std::vector<double> PiecewiseStrategy::UniformGrid(std::size_t points) {
  if (points < 2) {
    throw Error(ErrorCode::kInvalidArgument, "grid needs >= 2 points");
  }
  std::vector<double> grid(points);
  for (std::size_t i = 0; i < points; ++i) {
    grid[i] = static_cast<double>(i) / static_cast<double>(points - 1);
  }
  return grid;
}

double PiecewiseStrategy::Bid(double initial_type) const {
  if (initial_type <= grid_.front()) return bids_.front();
  if (initial_type >= grid_.back()) return bids_.back();
  const auto hi = static_cast<std::size_t>(
      std::upper_bound(grid_.begin(), grid_.end(), initial_type) -
      grid_.begin());
  const std::size_t lo = hi - 1;
  const double w = (initial_type - grid_[lo]) / (grid_[hi] - grid_[lo]);
  return bids_[lo] + w * (bids_[hi] - bids_[lo]);
}

double PiecewiseStrategy::WinProbability(double bid) const {
  std::vector<double> xs = grid_;
  std::vector<double> ys = bids_;
  if (xs.front() > 0.0) {
    xs.insert(xs.begin(), 0.0);
    ys.insert(ys.begin(), ys.front());
  }
  if (xs.back() < 1.0) {
    xs.push_back(1.0);
    ys.push_back(ys.back());
  }
  return 0.5 * (LevelMeasure(xs, ys, bid, /*inclusive=*/false) +
                LevelMeasure(xs, ys, bid, /*inclusive=*/true));
}

double BestResponseClosedForm(double theta0, const AdjustmentRule& rule,
                              double cost, double opponent_alpha,
                              int opponents) {
  CheckInitialType(theta0);
  CheckOpponentAlpha(opponent_alpha);
  rule.Validate();
  if (opponents < 1) {
    throw Error(ErrorCode::kInvalidArgument, "need at least one opponent");
  }
  const double scale = rule.Scale(cost);
  // (theta^c - b) * (b / (alpha s))^m peaks at m/(m+1) * theta^c; beyond the
  // rivals' top bid alpha * s the bidder wins for sure and should not go
  // higher.
  const double shade = opponents / (opponents + 1.0);
  if (shade * theta0 <= opponent_alpha) return shade * scale * theta0;
  return opponent_alpha * scale;
}

double BestResponseGridOracle(double theta0, const AdjustmentRule& rule,
                              double cost, double opponent_alpha,
                              std::size_t grid_points) {
  CheckInitialType(theta0);
  CheckOpponentAlpha(opponent_alpha);
  rule.Validate();
  if (grid_points < 100) {
    throw Error(ErrorCode::kInvalidArgument, "grid oracle needs >= 100 points");
  }
  const double scale = rule.Scale(cost);
  const double value = scale * theta0;
  const double top = opponent_alpha * scale;
  double best_bid = 0.0;
  double best = -1.0;
  for (std::size_t j = 0; j < grid_points; ++j) {
    const double b =
        top * static_cast<double>(j) / static_cast<double>(grid_points - 1);
    const double u = (value - b) * std::min(1.0, b / top);
    if (u > best) {
      best = u;
      best_bid = b;
    }
  }
  return best_bid;
}

bool VerifyLinearFixedPoint(const AdjustmentRule& rule, double cost,
                            std::span<const double> probes, int agents,
                            std::optional<double> opponent_alpha) {
  if (agents < 2) {
    throw Error(ErrorCode::kInvalidArgument, "need at least two agents");
  }
  const double shade = (agents - 1.0) / agents;
  const double alpha = opponent_alpha.value_or(shade);
  const double scale = rule.Scale(cost);
  for (double theta0 : probes) {
    const double response =
        BestResponseClosedForm(theta0, rule, cost, alpha, agents - 1);
    const double target = shade * scale * theta0;
    if (std::abs(response - target) > 1e-12 * std::max(1.0, target)) {
      return false;
    }
  }
  return true;
}

PiecewiseStrategy IteratedBestResponse(const AdjustmentRule& rule, double cost,
                                       const PiecewiseStrategy& initial,
                                       int rounds, std::size_t grid_points) {
  rule.Validate();
  if (rounds < 1) {
    throw Error(ErrorCode::kInvalidArgument, "need at least one round");
  }
  if (grid_points < 2) {
    throw Error(ErrorCode::kInvalidArgument, "bid grid needs >= 2 points");
  }
  const double scale = rule.Scale(cost);
  PiecewiseStrategy first = initial;
  PiecewiseStrategy second = initial;
  for (int r = 0; r < rounds; ++r) {
    first = GridBestResponse(second, initial.grid(), scale, grid_points);
    second = GridBestResponse(first, initial.grid(), scale, grid_points);
  }
  return second;
}

DeviationReport VerifyBneMonteCarlo(const DeviationCheck& check) {
  CheckInitialType(check.theta0);
  check.rule.Validate();
  if (check.plan.samples < kMinDeviationSamples) {
    throw Error(ErrorCode::kInsufficientSamples,
                "deviation check needs >= 10^4 samples, got " +
                    std::to_string(check.plan.samples));
  }
  if (check.deviation_grid < 2) {
    throw Error(ErrorCode::kInvalidArgument, "deviation grid needs >= 2 bids");
  }
  const double scale = check.rule.Scale(check.cost);
  const double value = scale * check.theta0;

  // Slot 0 is the equilibrium bid; the rest span [0, s/2], the rival's
  // bid range.
  std::vector<double> bids(check.deviation_grid + 1);
  bids[0] = check.equilibrium_bid.value_or(0.5 * value);
  for (std::size_t j = 0; j < check.deviation_grid; ++j) {
    bids[j + 1] = 0.5 * scale * static_cast<double>(j) /
                  static_cast<double>(check.deviation_grid - 1);
  }

  auto partials = MapStreams<std::vector<MeanAccumulator>>(
      check.plan, [&](RngStream& stream, std::size_t n) {
        std::vector<MeanAccumulator> acc(bids.size());
        for (std::size_t i = 0; i < n; ++i) {
          const double rival_bid = 0.5 * scale * stream.Uniform01();
          for (std::size_t j = 0; j < bids.size(); ++j) {
            acc[j].Add(rival_bid < bids[j] ? value - bids[j] : 0.0);
          }
        }
        return acc;
      });
  std::vector<MeanAccumulator> total(bids.size());
  for (const auto& chunk : partials) {
    for (std::size_t j = 0; j < bids.size(); ++j) total[j].Merge(chunk[j]);
  }

  std::size_t best = 1;
  for (std::size_t j = 2; j < bids.size(); ++j) {
    if (total[j].mean() > total[best].mean()) best = j;
  }

  DeviationReport report;
  report.equilibrium_bid = bids[0];
  report.equilibrium_utility =
      total[0].ToEstimate(check.plan.seed, check.plan.base_stream);
  report.best_deviation_bid = bids[best];
  report.best_deviation_utility =
      total[best].ToEstimate(check.plan.seed, check.plan.base_stream);
  const double combined =
      std::hypot(report.equilibrium_utility.std_error,
                 report.best_deviation_utility.std_error);
  report.passes = report.best_deviation_utility.mean <=
                  report.equilibrium_utility.mean + 3.0 * combined;
  return report;
}

}  // namespace adjmech
