#pragma once

#include <map>
#include <string>
#include <vector>

#include "syzlab/cli/config.hpp"

namespace syz::cli {

inline constexpr const char* kToolVersion = "0.1.0";

struct RunOptions {
  int jobs = 1;
  bool override_char_guard = false;
};

enum ExitCode : int { kExitOk = 0, kExitConfig = 1, kExitExpectation = 2 };

struct RunOutcome {
  nlohmann::json report;                    // deterministic, carries its own hash
  nlohmann::json timing;                    // wall-clock milliseconds, kept apart
  std::map<std::string, std::string> csv;   // file name -> contents
  std::vector<std::string> lines;           // human-readable summary
  int exit_code = kExitOk;
};

/// Runs every task. Throws ConfigError for inadmissible parameters.
RunOutcome run_config(const RunConfig& cfg, const RunOptions& opts);

/// report.json, timing.json and CSV tables under `dir`, each written atomically.
void write_outcome(const RunOutcome& out, const std::string& dir);

}  // namespace syz::cli
