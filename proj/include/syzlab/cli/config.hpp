#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

namespace syz::cli {

/// Malformed or inadmissible configuration; maps to exit code 1.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct CurveSpec {
  long long a = 0;
  long long b = 0;
};

enum class TaskType { Hilbert, Ideal, Generators, HNormality, Betti, Npr, Sweep, It0, Linkage };

struct TaskSpec {
  TaskType type = TaskType::Hilbert;
  std::string label;          // "task <index> (<type>)"
  int line = 0;               // source line of the task table
  nlohmann::json params;      // every key except `expect`
  nlohmann::json expect;      // object, possibly empty
};

struct RunConfig {
  std::string name;
  std::string source;              // file name or builtin:<name>
  std::optional<std::uint32_t> prime;  // nullopt for rational
  std::string kind = "kummer";     // ambient | kummer
  int cap = 6;
  std::vector<CurveSpec> curves;
  std::vector<int> degrees;
  std::vector<TaskSpec> tasks;
  nlohmann::json echo;             // canonical echo of the whole file
};

std::string to_string(TaskType t);

/// Parse TOML text. Errors carry "<source>:<line>: message".
RunConfig parse_config(const std::string& text, const std::string& source);
RunConfig load_config_file(const std::string& path);

}  // namespace syz::cli
