#include <filesystem>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "syzlab/cli/builtins.hpp"
#include "syzlab/cli/config.hpp"
#include "syzlab/cli/runner.hpp"

namespace {

using namespace syz::cli;

int run_one(const RunConfig& cfg, const RunOptions& opts, const std::string& out_dir) {
  const auto outcome = run_config(cfg, opts);
  write_outcome(outcome, (std::filesystem::path(out_dir) / cfg.name).string());
  for (const auto& l : outcome.lines) std::cout << l << "\n";
  std::cout << cfg.name << ": " << (outcome.exit_code == kExitOk ? "ok" : "FAILED") << " (hash "
            << outcome.report["hash"].get<std::string>() << ")\n";
  return outcome.exit_code;
}

RunConfig resolve(const std::string& target) {
  if (std::filesystem::exists(target)) return load_config_file(target);
  if (const auto* b = find_builtin(target)) return parse_config(b->toml, "builtin:" + b->name);
  throw ConfigError(target + ":0: no such config file or built-in configuration");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact syzygy and multiplication-map laboratory for Kummer varieties"};
  app.require_subcommand(1);

  auto* run = app.add_subcommand("run", "run a TOML configuration or a built-in by name");
  std::string target, suite, out_dir = "syzlab-out";
  RunOptions opts;
  run->add_option("config", target, "config.toml or built-in name");
  run->add_option("--jobs,-j", opts.jobs, "worker threads")->check(CLI::PositiveNumber);
  run->add_option("--suite", suite, "run a named suite of built-ins")->check(CLI::IsMember({"acceptance"}));
  run->add_option("--out", out_dir, "output directory");
  run->add_flag("--override-char-guard", opts.override_char_guard, "allow characteristics dividing p+1 or p+2");

  app.add_subcommand("list", "list built-in configurations");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  if (app.got_subcommand("list")) {
    for (const auto& b : builtins()) {
      std::cout << b.name << "  [criteria";
      for (int c : b.criteria) std::cout << " " << c;
      std::cout << "]  " << b.summary << "\n";
    }
    return 0;
  }

  try {
    if (!suite.empty()) {
      if (!target.empty()) throw ConfigError("run: give either a config or --suite, not both");
      int code = kExitOk;
      for (const auto& b : builtins()) {
        const int c = run_one(parse_config(b.toml, "builtin:" + b.name), opts, out_dir);
        code = std::max(code, c);
      }
      return code;
    }
    if (target.empty()) throw ConfigError("run: missing config (file path or built-in name)");
    return run_one(resolve(target), opts, out_dir);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  }
}
