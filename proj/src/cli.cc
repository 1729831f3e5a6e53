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

#include "adjmech/cli.h"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "adjmech/baseline.h"
#include "adjmech/equilibrium.h"
#include "adjmech/mc.h"

namespace adjmech::cli {
namespace {

using Json = nlohmann::ordered_json;

class IoFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Writes to config.out when set, otherwise to `fallback`.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : out_(&fallback) {
    if (path.empty()) return;
    file_.open(path, std::ios::binary | std::ios::trunc);
    if (!file_) throw IoFailure("cannot open '" + path + "' for writing");
    out_ = &file_;
    path_ = path;
  }

  std::ostream& stream() { return *out_; }

  void Close() {
    if (path_.empty()) return;
    file_.close();
    if (!file_) throw IoFailure("failed writing '" + path_ + "'");
  }

 private:
  std::ofstream file_;
  std::ostream* out_;
  std::string path_;
};

const char* PassFail(bool ok) { return ok ? "PASS" : "FAIL"; }

SamplePlan PlanFor(const RunConfig& config, std::uint64_t base_stream) {
  SamplePlan plan;
  plan.samples = config.samples;
  plan.seed = config.seed;
  plan.base_stream = base_stream;
  plan.threads = config.threads;
  return plan;
}

template <typename T>
T Take(const Json& value, std::string_view key) {
  try {
    return value.get<T>();
  } catch (const Json::exception&) {
    throw Error(ErrorCode::kInvalidArgument,
                "config key '" + std::string(key) + "' has the wrong type");
  }
}

void ApplyDistribution(const Json& value, InitialDistribution& dist) {
  if (!value.is_object()) {
    throw Error(ErrorCode::kInvalidArgument,
                "config key 'distribution' must be an object");
  }
  for (const auto& [key, v] : value.items()) {
    if (key == "family") {
      if (Take<std::string>(v, key) != "uniform") {
        throw Error(ErrorCode::kUnsupportedDistribution,
                    "only the uniform family is supported");
      }
    } else if (key == "low") {
      dist.low = Take<double>(v, key);
    } else if (key == "high") {
      dist.high = Take<double>(v, key);
    } else {
      throw Error(ErrorCode::kInvalidArgument,
                  "unknown distribution key '" + key + "'");
    }
  }
}

double OracleCompanion(double reserve) {
  // Two bidders: E[x 1{win}] = int_r^1 x^2 dx, minus the expected payment.
  return (1.0 - reserve * reserve * reserve) / 3.0 -
         ExpectedPaymentPerBidder(reserve, 2);
}

}  // namespace

ModelConfig RunConfig::model() const {
  ModelConfig m;
  m.agents = agents;
  m.adjustment = rule();
  m.distribution = distribution;
  m.seed = seed;
  return m;
}

void RunConfig::Validate() const {
  model().Validate();
  if (!distribution.IsStandardUniform()) {
    throw Error(ErrorCode::kUnsupportedDistribution,
                "closed forms assume uniform [0, 1] initial types");
  }
  if (threads < 1) {
    throw Error(ErrorCode::kInvalidArgument, "threads must be >= 1");
  }
  if (cost && !(*cost >= 0.0)) {
    throw Error(ErrorCode::kInvalidCost, "cost must be >= 0");
  }
  if (!(beta_step > 0.0) || !(beta_max >= beta_min) || !(beta_min >= 0.0)) {
    throw Error(ErrorCode::kInvalidArgument,
                "beta grid needs 0 <= beta_min <= beta_max and beta_step > 0");
  }
}

std::string RunConfig::ToJson() const {
  Json j;
  j["agents"] = agents;
  j["beta"] = beta;
  j["gamma"] = gamma;
  j["distribution"] = {
      {"family", "uniform"}, {"low", distribution.low}, {"high", distribution.high}};
  j["seed"] = seed;
  j["samples"] = samples;
  j["cost"] = cost ? Json(*cost) : Json(nullptr);
  j["reserve"] = reserve ? Json(*reserve) : Json(nullptr);
  j["threads"] = threads;
  j["method"] = std::string(MethodName(method));
  j["beta_min"] = beta_min;
  j["beta_max"] = beta_max;
  j["beta_step"] = beta_step;
  return j.dump();
}

RunConfig ApplyJsonConfig(std::string_view json_text, RunConfig base) {
  Json j;
  try {
    j = Json::parse(json_text);
  } catch (const Json::parse_error& e) {
    throw Error(ErrorCode::kInvalidArgument,
                std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) {
    throw Error(ErrorCode::kInvalidArgument, "config must be a JSON object");
  }
  for (const auto& [key, v] : j.items()) {
    if (key == "agents") {
      base.agents = Take<int>(v, key);
    } else if (key == "beta") {
      base.beta = Take<double>(v, key);
    } else if (key == "gamma") {
      base.gamma = Take<double>(v, key);
    } else if (key == "distribution") {
      ApplyDistribution(v, base.distribution);
    } else if (key == "seed") {
      base.seed = Take<std::uint64_t>(v, key);
    } else if (key == "samples") {
      base.samples = Take<std::size_t>(v, key);
    } else if (key == "cost") {
      base.cost = v.is_null() ? std::nullopt
                              : std::optional<double>(Take<double>(v, key));
    } else if (key == "reserve") {
      base.reserve = v.is_null() ? std::nullopt
                                 : std::optional<double>(Take<double>(v, key));
    } else if (key == "threads") {
      base.threads = Take<int>(v, key);
    } else if (key == "out") {
      base.out = Take<std::string>(v, key);
    } else if (key == "method") {
      base.method = ParseMethod(Take<std::string>(v, key));
    } else if (key == "beta_min") {
      base.beta_min = Take<double>(v, key);
    } else if (key == "beta_max") {
      base.beta_max = Take<double>(v, key);
    } else if (key == "beta_step") {
      base.beta_step = Take<double>(v, key);
    } else {
      throw Error(ErrorCode::kInvalidArgument, "unknown config key '" + key + "'");
    }
  }
  return base;
}

int ExitCodeFor(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return kExitUsage;
    case ErrorCode::kInsufficientSamples: return kExitInsufficientSamples;
    default: return kExitModelError;
  }
}

std::string HeaderLine(const RunConfig& config, std::string_view command) {
  std::ostringstream os;
  os << kToolName << ' ' << kVersion << " command=" << command
     << " generator=" << kGeneratorName << " seed=" << config.seed
     << " config=" << config.ToJson();
  return os.str();
}

std::string FormatNumber(double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.9g", value);
  return buf;
}

std::vector<double> BetaGrid(const RunConfig& config) {
  const auto steps = static_cast<std::size_t>(
      std::floor((config.beta_max - config.beta_min) / config.beta_step + 1e-9));
  std::vector<double> grid(steps + 1);
  for (std::size_t k = 0; k <= steps; ++k) {
    grid[k] = config.beta_min + static_cast<double>(k) * config.beta_step;
  }
  return grid;
}

std::vector<SweepRow> SweepRows(const RunConfig& config) {
  config.Validate();
  const std::vector<double> betas = BetaGrid(config);
  const double myerson_revenue =
      SellerRevenue(OptimalReserve(config.distribution), config.agents);
  const bool reference_case = config.agents == 2 && config.gamma == 0.5;
  const double myerson_agent = reference_case ? MidpointAgentProfit(0.5, 2) : 0.0;

  std::vector<SweepRow> rows(betas.size());
  ParallelFor(betas.size(), config.threads, [&](std::size_t k) {
    const AdjustmentRule rule{betas[k], config.gamma};
    const OptimizationResult opt =
        OptimizeCost(rule, config.agents, config.method);
    SweepRow& row = rows[k];
    row.beta = betas[k];
    row.c_star = opt.c_star;
    row.profit_star = opt.profit_at_star;
    row.beats_myerson = opt.profit_at_star > myerson_revenue;
    if (reference_case) {
      row.agent_profit = AdjustedAgentProfit(rule, config.agents);
      row.beats_myerson_agent = row.agent_profit > myerson_agent;
    } else {
      row.agent_profit = std::nan("");
    }
  });
  return rows;
}

std::string SweepCsvBody(const std::vector<SweepRow>& rows) {
  std::string body =
      "beta,c_star,profit_star,beats_myerson,agent_profit,beats_myerson_agent\n";
  for (const SweepRow& r : rows) {
    body += FormatNumber(r.beta) + ',' + FormatNumber(r.c_star) + ',' +
            FormatNumber(r.profit_star) + ',' +
            (r.beats_myerson ? "true" : "false") + ',' +
            FormatNumber(r.agent_profit) + ',' +
            (r.beats_myerson_agent ? "true" : "false") + '\n';
  }
  return body;
}

std::string ReportMarkdown(const RunConfig& config) {
  config.Validate();
  constexpr int kAgents = 2;
  const AdjustmentRule rule = config.rule();
  const double beta = config.beta;
  const OptimizationResult opt =
      OptimizeCost(rule, kAgents, OptimizeMethod::kClosedForm);
  const double reserve = OptimalReserve(config.distribution);

  std::ostringstream md;
  md << "<!-- " << HeaderLine(config, "report") << " -->\n";
  md << "# Adjustable-type auction: replication report\n\n";
  md << "Two bidders, uniform [0, 1] initial types, beta = "
     << FormatNumber(beta) << ", gamma = " << FormatNumber(config.gamma)
     << ".\n\n";

  md << "## Closed forms\n\n";
  md << "| quantity | reference | computed | abs diff |\n";
  md << "|---|---|---|---|\n";
  auto row = [&](std::string_view name, std::string_view label,
                 double reference, double computed) {
    md << "| " << name << " | " << label << " = " << FormatNumber(reference)
       << " | " << FormatNumber(computed) << " | "
       << FormatNumber(std::abs(reference - computed)) << " |\n";
  };
  row("initial expected profit", "1/3", 1.0 / 3.0,
      ExpectedProfit(rule, 0.0, kAgents));
  row("optimal adjustment cost", "beta^2/36", beta * beta / 36.0, opt.c_star);
  row("maximum expected profit", "(1/3)(1+beta^2/12)",
      (1.0 + beta * beta / 12.0) / 3.0, opt.profit_at_star);
  row("optimal-auction revenue", "5/12", 5.0 / 12.0,
      SellerRevenue(reserve, kAgents));
  row("expected payment per bidder", "5/24", 5.0 / 24.0,
      ExpectedPaymentPerBidder(reserve, kAgents));
  row("optimal-auction agent profit (midpoint)", "13/24", 13.0 / 24.0,
      MidpointAgentProfit(0.5, kAgents));
  row("E[max of two types]", "2/3", 2.0 / 3.0,
      MaxOrderStatisticMean(kAgents, config.distribution));
  row("optimal reserve", "1/2", 0.5, reserve);
  if (config.gamma == 0.5) {
    row("adjusted agent profit", "1/6+beta^2/36", 1.0 / 6.0 + beta * beta / 36.0,
        AdjustedAgentProfit(rule, kAgents));
  }
  md << "\nProfitable: " << (opt.profitable ? "yes" : "no")
     << "; revelation divergence at c* = "
     << FormatNumber(RevelationDivergence(rule, opt.c_star)) << ".\n\n";

  md << "## Monte Carlo checks\n\n";
  md << "samples = " << config.samples << ", seed = " << config.seed
     << ", 95% half-width = 1.96 standard errors.\n\n";
  md << "| quantity | target | estimate | std error | 95% half-width | "
        "within 4 sigma |\n";
  md << "|---|---|---|---|---|---|\n";
  auto mc_row = [&](std::string_view name, double target,
                    const EstimateWithCI& est) {
    const bool ok = std::abs(est.mean - target) <= 4.0 * est.std_error;
    md << "| " << name << " | " << FormatNumber(target) << " | "
       << FormatNumber(est.mean) << " | " << FormatNumber(est.std_error)
       << " | " << FormatNumber(est.HalfWidth()) << " | " << (ok ? "yes" : "no")
       << " |\n";
  };
  mc_row("designer utility, c = 0", 1.0 / 3.0,
         ExpectedUtilityMonteCarlo(rule, 0.0, kAgents, PlanFor(config, 0)));
  mc_row("designer utility, c = c*",
         ExpectedUtilityClosedForm(rule, opt.c_star, kAgents),
         ExpectedUtilityMonteCarlo(rule, opt.c_star, kAgents,
                                   PlanFor(config, std::uint64_t{1} << 32)));
  mc_row("optimal-auction revenue", SellerRevenue(reserve, kAgents),
         SellerRevenueMonteCarlo(reserve, kAgents,
                                 PlanFor(config, std::uint64_t{2} << 32)));
  const EstimateWithCI oracle = AgentProfitOracleMonteCarlo(
      reserve, kAgents, PlanFor(config, std::uint64_t{3} << 32));
  mc_row("optimal-auction agent surplus", OracleCompanion(reserve), oracle);

  md << "\n## Bidder profit in the optimal auction\n\n";
  md << "| paper_agent_profit | oracle_agent_profit | 95% half-width |\n";
  md << "|---|---|---|\n";
  md << "| " << FormatNumber(MidpointAgentProfit(0.5, kAgents)) << " | "
     << FormatNumber(oracle.mean) << " | " << FormatNumber(oracle.HalfWidth())
     << " |\n\n";
  md << "The midpoint figure subtracts the expected payment from the mean of "
        "[r, 1], as if every valuation were above the reserve. The simulated "
        "surplus counts only auctions the bidder wins and converges to 1/12. "
        "Both are reported; the gap is expected.\n";
  return md.str();
}

int CmdOptimizeCost(const RunConfig& config, std::ostream& out) {
  config.Validate();
  const AdjustmentRule rule = config.rule();
  const OptimizationResult opt =
      OptimizeCost(rule, config.agents, config.method);
  Sink sink(config.out, out);
  std::ostream& os = sink.stream();
  os << "# " << HeaderLine(config, "optimize-cost") << '\n';
  os << "c_star=" << FormatNumber(opt.c_star) << '\n';
  os << "profit_at_star=" << FormatNumber(opt.profit_at_star) << '\n';
  os << "profit_at_zero="
     << FormatNumber(ExpectedProfit(rule, 0.0, config.agents)) << '\n';
  os << "profitable=" << (opt.profitable ? "true" : "false") << '\n';
  os << "method=" << MethodName(opt.method) << '\n';
  os << "iterations=" << opt.iterations << '\n';
  sink.Close();
  return kExitOk;
}

int CmdVerifyBne(const RunConfig& config, std::ostream& out) {
  config.Validate();
  if (config.agents != 2) {
    throw Error(ErrorCode::kUnsupportedCase,
                "verify-bne checks the two-bidder equilibrium");
  }
  const AdjustmentRule rule = config.rule();
  const double cost = config.cost.value_or(
      OptimizeCost(rule, config.agents, OptimizeMethod::kClosedForm).c_star);
  const std::vector<double> probes = {0.0, 0.25, 0.5, 0.75, 1.0};
  const std::vector<double> mc_types = {0.2, 0.7};

  // Run the sampling first so a sample-size error leaves no partial output.
  std::vector<DeviationReport> reports;
  for (std::size_t k = 0; k < mc_types.size(); ++k) {
    DeviationCheck check;
    check.rule = rule;
    check.cost = cost;
    check.theta0 = mc_types[k];
    check.plan = PlanFor(config, static_cast<std::uint64_t>(k) << 32);
    reports.push_back(VerifyBneMonteCarlo(check));
  }
  const bool fixed_point = VerifyLinearFixedPoint(rule, cost, probes);

  Sink sink(config.out, out);
  std::ostream& os = sink.stream();
  os << "# " << HeaderLine(config, "verify-bne") << '\n';
  os << "cost=" << FormatNumber(cost)
     << " scale=" << FormatNumber(rule.Scale(cost)) << '\n';
  os << "fixed_point probes=0,0.25,0.5,0.75,1 " << PassFail(fixed_point)
     << '\n';
  bool all = fixed_point;
  for (std::size_t k = 0; k < reports.size(); ++k) {
    const DeviationReport& r = reports[k];
    os << "deviation theta0=" << FormatNumber(mc_types[k])
       << " equilibrium_bid=" << FormatNumber(r.equilibrium_bid)
       << " equilibrium_utility=" << FormatNumber(r.equilibrium_utility.mean)
       << " se=" << FormatNumber(r.equilibrium_utility.std_error)
       << " best_deviation_bid=" << FormatNumber(r.best_deviation_bid)
       << " best_deviation_utility="
       << FormatNumber(r.best_deviation_utility.mean)
       << " se=" << FormatNumber(r.best_deviation_utility.std_error) << ' '
       << PassFail(r.passes) << '\n';
    all = all && r.passes;
  }
  os << "verify-bne " << PassFail(all) << '\n';
  sink.Close();
  return all ? kExitOk : kExitModelError;
}

int CmdBaseline(const RunConfig& config, std::ostream& out) {
  config.Validate();
  const double reserve =
      config.reserve.value_or(OptimalReserve(config.distribution));
  const BaselineReport report =
      RunBaseline(reserve, config.agents, PlanFor(config, 0));
  Sink sink(config.out, out);
  std::ostream& os = sink.stream();
  os << "# " << HeaderLine(config, "baseline-myerson") << '\n';
  os << "reserve=" << FormatNumber(report.reserve) << '\n';
  os << "payment_per_bidder=" << FormatNumber(report.payment_per_bidder)
     << '\n';
  os << "seller_revenue=" << FormatNumber(report.seller_revenue) << '\n';
  os << "paper_agent_profit=" << FormatNumber(report.paper_agent_profit)
     << '\n';
  os << "oracle_agent_profit=" << FormatNumber(report.oracle_agent_profit.mean)
     << " se=" << FormatNumber(report.oracle_agent_profit.std_error)
     << " half_width_95=" << FormatNumber(report.oracle_agent_profit.HalfWidth())
     << " samples=" << report.oracle_agent_profit.samples << '\n';
  sink.Close();
  return kExitOk;
}

int CmdSweep(const RunConfig& config, std::ostream& out) {
  const std::vector<SweepRow> rows = SweepRows(config);
  Sink sink(config.out, out);
  sink.stream() << "# " << HeaderLine(config, "sweep") << '\n'
                << SweepCsvBody(rows);
  sink.Close();
  return kExitOk;
}

int CmdReport(const RunConfig& config, std::ostream& out) {
  const std::string md = ReportMarkdown(config);
  Sink sink(config.out, out);
  sink.stream() << md;
  sink.Close();
  return kExitOk;
}

int Main(const std::vector<std::string>& args, std::ostream& out,
         std::ostream& err) {
  CLI::App app{"Adjustable-type first-price auction analysis", "adjmech"};
  app.require_subcommand(1);

  std::string config_path;
  std::optional<double> beta, gamma, cost, reserve, beta_min, beta_max,
      beta_step;
  std::optional<int> agents, threads;
  std::optional<std::size_t> samples;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out_path, method;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--config", config_path, "flat JSON config file");
    cmd->add_option("--beta", beta, "adjustment coefficient");
    cmd->add_option("--gamma", gamma, "adjustment exponent in (0, 1]");
    cmd->add_option("--agents", agents, "number of bidders");
    cmd->add_option("--cost", cost, "adjustment cost (default: c*)");
    cmd->add_option("--reserve", reserve, "reserve price (baseline)");
    cmd->add_option("--samples", samples, "Monte Carlo samples");
    cmd->add_option("--seed", seed, "base seed");
    cmd->add_option("--threads", threads, "worker threads");
    cmd->add_option("--out", out_path, "output file");
    cmd->add_option("--method", method,
                    "closed-form|golden-section|derivative-root");
    cmd->add_option("--beta-min", beta_min, "sweep grid start");
    cmd->add_option("--beta-max", beta_max, "sweep grid end");
    cmd->add_option("--beta-step", beta_step, "sweep grid step");
  };

  struct Command {
    const char* name;
    const char* help;
    int (*run)(const RunConfig&, std::ostream&);
  };
  const Command commands[] = {
      {"optimize-cost", "optimal adjustment cost and profit", CmdOptimizeCost},
      {"verify-bne", "check the linear first-price equilibrium", CmdVerifyBne},
      {"baseline-myerson", "optimal-auction benchmark", CmdBaseline},
      {"sweep", "CSV sweep over beta", CmdSweep},
      {"report", "markdown replication report", CmdReport},
  };
  std::vector<CLI::App*> subs;
  for (const Command& c : commands) {
    CLI::App* sub = app.add_subcommand(c.name, c.help);
    add_common(sub);
    subs.push_back(sub);
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    RunConfig config;
    if (const char* env = std::getenv("ADJMECH_SEED"); env && *env) {
      try {
        config.seed = std::stoull(env);
      } catch (const std::exception&) {
        throw Error(ErrorCode::kInvalidArgument, "ADJMECH_SEED is not a number");
      }
    }
    if (!config_path.empty()) {
      std::ifstream in(config_path);
      if (!in) throw IoFailure("cannot read config '" + config_path + "'");
      std::stringstream text;
      text << in.rdbuf();
      config = ApplyJsonConfig(text.str(), config);
    }
    if (beta) config.beta = *beta;
    if (gamma) config.gamma = *gamma;
    if (agents) config.agents = *agents;
    if (cost) config.cost = cost;
    if (reserve) config.reserve = reserve;
    if (samples) config.samples = *samples;
    if (seed) config.seed = *seed;
    if (threads) config.threads = *threads;
    if (out_path) config.out = *out_path;
    if (method) config.method = ParseMethod(*method);
    if (beta_min) config.beta_min = *beta_min;
    if (beta_max) config.beta_max = *beta_max;
    if (beta_step) config.beta_step = *beta_step;

    for (std::size_t i = 0; i < subs.size(); ++i) {
      if (subs[i]->parsed()) return commands[i].run(config, out);
    }
    return kExitUsage;
  } catch (const Error& e) {
    err << "adjmech: " << e.what() << '\n';
    if (e.code() == ErrorCode::kInvalidArgument) err << app.help();
    return ExitCodeFor(e.code());
  } catch (const IoFailure& e) {
    err << "adjmech: " << e.what() << '\n';
    return kExitIo;
  }
}

}  // namespace adjmech::cli
