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
#include <functional>
#include <vector>

#include "adjmech/baseline.h"
#include "adjmech/error.h"

namespace adjmech {
namespace {

SamplePlan Plan(std::size_t samples, std::uint64_t seed) {
  SamplePlan plan;
  plan.samples = samples;
  plan.seed = seed;
  return plan;
}

double Simpson(const std::function<double(double)>& f, double a, double b,
               int panels = 4000) {
  if (b <= a) return 0.0;
  const double h = (b - a) / panels;
  double sum = f(a) + f(b);
  for (int i = 1; i < panels; ++i) sum += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
  return sum * h / 3.0;
}

// Expected payment by quadrature of r(1-F(r))G(r) + int_r^1 y(1-F(y))g(y)dy.
double PaymentOracle(double r, int n) {
  const double G = std::pow(r, n - 1);
  if (n == 1) return r * (1 - r);
  const double tail = Simpson(
      [n](double y) { return y * (1 - y) * (n - 1) * std::pow(y, n - 2); }, r, 1);
  return r * (1 - r) * G + tail;
}

// Bidder surplus: E[x 1{x wins}] = int_r^1 x * x^(n-1) dx, minus payment.
double SurplusOracle(double r, int n) {
  return Simpson([n](double x) { return std::pow(x, n); }, r, 1) -
         PaymentOracle(r, n);
}

ErrorCode CodeOf(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::kInvalidArgument;
}

TEST_CASE("optimal reserve") {
  CHECK(OptimalReserve({}) == 0.5);
  CHECK(OptimalReserve({DistributionFamily::kUniform, 0.0, 2.0}) == 1.0);
  // Support entirely above the unconstrained root.
  CHECK(OptimalReserve({DistributionFamily::kUniform, 0.8, 1.0}) == 0.8);
  CHECK(CodeOf([] { OptimalReserve({DistributionFamily::kUniform, 1.0, 0.0}); }) ==
        ErrorCode::kBadSupport);

  const EstimateWithCI at_half = SellerRevenueMonteCarlo(0.5, 2, Plan(1000000, 4));
  const EstimateWithCI at_zero = SellerRevenueMonteCarlo(0.0, 2, Plan(1000000, 5));
  CHECK(at_half.mean - at_zero.mean >
        4 * std::hypot(at_half.std_error, at_zero.std_error));
}

TEST_CASE("expected payment per bidder") {
  CHECK(std::abs(ExpectedPaymentPerBidder(0.5, 2) - 5.0 / 24.0) < 1e-15);
  CHECK(std::abs(ExpectedPaymentPerBidder(0.0, 2) - 1.0 / 6.0) < 1e-15);
  CHECK(ExpectedPaymentPerBidder(1.0, 2) == 0.0);
  for (int n : {1, 2, 3, 5}) {
    for (double r : {0.0, 0.1, 0.3, 0.5, 0.77, 0.95}) {
      CHECK(ExpectedPaymentPerBidder(r, n) ==
            doctest::Approx(PaymentOracle(r, n)).epsilon(1e-10));
    }
  }
  CHECK(CodeOf([] { ExpectedPaymentPerBidder(1.2, 2); }) ==
        ErrorCode::kInvalidReserve);
  CHECK(CodeOf([] { ExpectedPaymentPerBidder(-0.1, 2); }) ==
        ErrorCode::kInvalidReserve);

  // Continuous on [0, 1] and decreasing to 0 as r -> 1.
  double prev = ExpectedPaymentPerBidder(0.5, 2);
  for (int i = 1; i <= 500; ++i) {
    const double r = 0.5 + 0.5 * i / 500.0;
    const double m = ExpectedPaymentPerBidder(r, 2);
    CHECK(m <= prev);
    CHECK(prev - m < 1e-3);
    prev = m;
  }
  CHECK(ExpectedPaymentPerBidder(1.0 - 1e-9, 2) < 1e-8);
}

TEST_CASE("seller revenue") {
  CHECK(std::abs(SellerRevenue(0.5, 2) - 5.0 / 12.0) < 1e-15);
  CHECK(std::abs(SellerRevenue(0.0, 2) - 1.0 / 3.0) < 1e-15);
  CHECK(SellerRevenue(1.0, 2) == 0.0);

  double best_r = -1.0;
  double best = -1.0;
  for (int i = 0; i <= 9; ++i) {
    const double r = i / 10.0;
    if (SellerRevenue(r, 2) > best) {
      best = SellerRevenue(r, 2);
      best_r = r;
    }
  }
  CHECK(best_r == 0.5);

  const EstimateWithCI mc = SellerRevenueMonteCarlo(0.5, 2, Plan(1000000, 6));
  CHECK(std::abs(mc.mean - 5.0 / 12.0) <= 4 * mc.std_error);
}

TEST_CASE("midpoint agent profit") {
  CHECK(MidpointAgentProfit(0.5, 2) == doctest::Approx(13.0 / 24.0).epsilon(1e-15));
  CHECK(CodeOf([] { MidpointAgentProfit(0.4, 2); }) == ErrorCode::kUnsupportedCase);
  CHECK(CodeOf([] { MidpointAgentProfit(0.5, 3); }) == ErrorCode::kUnsupportedCase);
}

TEST_CASE("agent profit oracle") {
  CHECK(SurplusOracle(0.5, 2) == doctest::Approx(1.0 / 12.0).epsilon(1e-12));
  CHECK(SurplusOracle(0.0, 2) == doctest::Approx(1.0 / 6.0).epsilon(1e-12));

  const EstimateWithCI half = AgentProfitOracleMonteCarlo(0.5, 2, Plan(1000000, 7));
  CHECK(std::abs(half.mean - 1.0 / 12.0) <= 4 * half.std_error);
  CHECK(half.samples == 1000000);

  const EstimateWithCI zero = AgentProfitOracleMonteCarlo(0.0, 2, Plan(1000000, 8));
  CHECK(std::abs(zero.mean - 1.0 / 6.0) <= 4 * zero.std_error);

  const EstimateWithCI none = AgentProfitOracleMonteCarlo(1.0, 2, Plan(100000, 9));
  CHECK(none.mean == 0.0);
  CHECK(none.std_error == 0.0);

  const EstimateWithCI three = AgentProfitOracleMonteCarlo(0.5, 3, Plan(1000000, 10));
  CHECK(std::abs(three.mean - SurplusOracle(0.5, 3)) <= 4 * three.std_error);

  CHECK(CodeOf([] { AgentProfitOracleMonteCarlo(0.5, 2, Plan(99999, 1)); }) ==
        ErrorCode::kInsufficientSamples);
}

TEST_CASE("adjusted agent profit") {
  CHECK(AdjustedAgentProfit({2.0, 0.5}, 2) == doctest::Approx(5.0 / 18.0));
  CHECK(AdjustedAgentProfit({0.0, 0.5}, 2) == doctest::Approx(1.0 / 6.0));
  CHECK(AdjustedAgentProfit({std::sqrt(27.0 / 2.0), 0.5}, 2) ==
        doctest::Approx(13.0 / 24.0).epsilon(1e-14));
  for (double beta = 0.0; beta <= 6.0; beta += 0.25) {
    CHECK(AdjustedAgentProfit({beta, 0.5}, 2) ==
          doctest::Approx(1.0 / 6.0 + beta * beta / 36.0));
  }
  CHECK(CodeOf([] { AdjustedAgentProfit({2.0, 1.0}, 2); }) ==
        ErrorCode::kUnsupportedCase);
  CHECK(CodeOf([] { AdjustedAgentProfit({2.0, 0.5}, 3); }) ==
        ErrorCode::kUnsupportedCase);
}

TEST_CASE("baseline report") {
  const BaselineReport r = RunBaseline(0.5, 2, Plan(200000, 11));
  CHECK(r.reserve == 0.5);
  CHECK(r.seller_revenue == doctest::Approx(2 * r.payment_per_bidder));
  CHECK(r.paper_agent_profit == doctest::Approx(13.0 / 24.0));
  CHECK(std::abs(r.oracle_agent_profit.mean - 1.0 / 12.0) <=
        4 * r.oracle_agent_profit.std_error);

  const BaselineReport zero = RunBaseline(0.0, 2, Plan(200000, 12));
  CHECK(std::isnan(zero.paper_agent_profit));
  CHECK(zero.seller_revenue == doctest::Approx(1.0 / 3.0));
}

}  // namespace
}  // namespace adjmech
