#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "chainscope/config.hpp"
#include "chainscope/recurrence.hpp"
#include "chainscope/report.hpp"

namespace chainscope {

enum ExitCode : int {
  kExitOk = 0,
  kExitVerificationFailed = 1,
  kExitConfigError = 2,
  kExitNumericError = 3,
};

struct RunConfig {
  std::string command;  // analyze | lyapunov | rigidity | outer | examples | selftest
  std::string system;
  std::vector<std::size_t> grid;                 // empty: catalog default
  std::vector<std::vector<std::size_t>> ladder;  // analyze; empty: derived from grid
  double T = 1.0;
  Thresholds thresholds;
  std::string out = "chainscope-out";
  std::uint64_t seed = 1;
  std::string potential;           // rigidity
  std::string family;              // outer: config file path or inline "k=v;k=v"
  std::vector<double> base;        // lyapunov: base point coordinates
  std::size_t samples = 1000;      // lyapunov: random verification samples
  std::optional<double> energy;    // rigidity/outer: level c
  std::size_t threads = 0;         // 0: CHAINSCOPE_THREADS or hardware
  Config params;                   // catalog parameters
};

/// Keys of a run config file that are not catalog parameters.
const std::vector<std::string>& run_keys();

/// Builds a RunConfig from resolved key=value settings (config file merged
/// with command-line flags). Unknown keys become catalog parameters. Throws
/// ConfigError on invalid values.
RunConfig make_run_config(const std::string& command, const Config& settings);

/// Positive-and-finite checks on every numeric parameter.
void validate(const RunConfig& cfg);

/// "2048" or "64x32".
std::vector<std::size_t> parse_grid(const std::string& text);
/// "2048,4096" or "64x32,128x64".
std::vector<std::vector<std::size_t>> parse_ladder(const std::string& text);

struct RunResult {
  int status = kExitOk;
  Report report;
  std::string text;  // human summary
};

/// Dispatches to the compute modules. Exceptions propagate.
RunResult execute(const RunConfig& cfg);

/// execute() plus artifact writing and error-to-exit-code mapping. The human
/// summary goes to `out`, error messages to `err`.
int run(const RunConfig& cfg, std::ostream& out, std::ostream& err);

}  // namespace chainscope
