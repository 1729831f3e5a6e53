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

#ifndef ADJMECH_CLI_H_
#define ADJMECH_CLI_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "adjmech/error.h"
#include "adjmech/model.h"
#include "adjmech/profit.h"

namespace adjmech::cli {

inline constexpr std::string_view kToolName = "adjmech";
inline constexpr std::string_view kVersion = "0.1.0";

enum ExitCode : int {
  kExitOk = 0,
  kExitModelError = 2,
  kExitUsage = 64,
  kExitInsufficientSamples = 65,
  kExitIo = 66,
};

struct RunConfig {
  int agents = 2;
  double beta = 2.0;
  double gamma = 0.5;
  InitialDistribution distribution;
  std::uint64_t seed = 0;
  std::size_t samples = 1000000;
  std::optional<double> cost;     // default: closed-form c*
  std::optional<double> reserve;  // default: optimal reserve
  int threads = 1;
  std::string out;
  OptimizeMethod method = OptimizeMethod::kClosedForm;
  double beta_min = 0.0;
  double beta_max = 5.0;
  double beta_step = 0.05;

  AdjustmentRule rule() const { return {beta, gamma}; }
  ModelConfig model() const;
  // Structural checks; per-operation preconditions are left to the library.
  void Validate() const;
  // Canonical one-line JSON, used in output headers.
  std::string ToJson() const;
};

// Overlays the keys of a flat JSON object onto `base`. Unknown keys and
// badly typed values throw kInvalidArgument.
RunConfig ApplyJsonConfig(std::string_view json_text, RunConfig base = {});

int ExitCodeFor(ErrorCode code);

// "# adjmech <version> generator=... seed=... config={...}"
std::string HeaderLine(const RunConfig& config, std::string_view command);

// 9 significant digits, '.' decimal separator.
std::string FormatNumber(double value);

struct SweepRow {
  double beta = 0.0;
  double c_star = 0.0;
  double profit_star = 0.0;
  bool beats_myerson = false;
  double agent_profit = 0.0;  // NaN when the comparison is undefined.
  bool beats_myerson_agent = false;
};

std::vector<double> BetaGrid(const RunConfig& config);
std::vector<SweepRow> SweepRows(const RunConfig& config);
std::string SweepCsvBody(const std::vector<SweepRow>& rows);

std::string ReportMarkdown(const RunConfig& config);

// Subcommands. Each prints to `out`, or to config.out when set, and returns
// an exit code; library errors propagate as adjmech::Error.
int CmdOptimizeCost(const RunConfig& config, std::ostream& out);
int CmdVerifyBne(const RunConfig& config, std::ostream& out);
int CmdBaseline(const RunConfig& config, std::ostream& out);
int CmdSweep(const RunConfig& config, std::ostream& out);
int CmdReport(const RunConfig& config, std::ostream& out);

// Full command line: parsing, config file, ADJMECH_SEED, dispatch and the
// mapping of errors to exit codes.
int Main(const std::vector<std::string>& args, std::ostream& out,
         std::ostream& err);

}  // namespace adjmech::cli

#endif  // ADJMECH_CLI_H_
