#include <filesystem>
#include <fstream>
#include <set>

#include "doctest.h"
#include "syzlab/cli/builtins.hpp"
#include "syzlab/cli/report.hpp"
#include "syzlab/cli/runner.hpp"

using namespace syz::cli;

namespace {

const char* kHeader = R"(name = "t"
field = 10007
kind = "ambient"
cap = 5
curves = [{ a = 0, b = 7 }]
degrees = [4]
)";

std::string error_of(const std::string& text) {
  try {
    const auto cfg = parse_config(text, "cfg.toml");
    run_config(cfg, {});
  } catch (const ConfigError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("FNV-1a reference values") {
  CHECK(fnv1a64("") == 0xcbf29ce484222325ULL);
  CHECK(fnv1a64("a") == 0xaf63dc4c8601ec8cULL);
  CHECK(hex64(0xabcULL) == "0000000000000abc");
}

TEST_CASE("config errors are line anchored") {
  CHECK(error_of("name = \"x\"\ncurves = [\n") .rfind("cfg.toml:", 0) == 0);
  CHECK(error_of(std::string(kHeader) + "bogus = 1\n").find("cfg.toml:7: unknown key 'bogus'") != std::string::npos);
  CHECK(error_of(std::string(kHeader) + "\n[[tasks]]\ntype = \"betti\"\np_max = 1.5\nq_max = 3\n").find("cfg.toml:10:") !=
        std::string::npos);
  CHECK(error_of(std::string(kHeader) + "\n[[tasks]]\ntype = \"frobnicate\"\n").find("cfg.toml:9:") != std::string::npos);
  const auto missing = error_of(std::string(kHeader) + "\n[[tasks]]\ntype = \"npr\"\n");
  CHECK(missing.find("cfg.toml:8: task 0 (npr): missing parameter 'p'") != std::string::npos);
  CHECK(error_of(std::string(kHeader) + "\n[[tasks]]\ntype = \"npr\"\np = 1\nr = 1\nh_max = 1\n").find("h_max") !=
        std::string::npos);
  CHECK(error_of(std::string(kHeader) + "\n[[tasks]]\ntype = \"betti\"\np_max = 1\nq_max = 9\n")
            .find("extend MultTable cap") != std::string::npos);
  CHECK(error_of(std::string(kHeader) + "\n[[tasks]]\ntype = \"hilbert\"\nexpect = { nothing = 1 }\n")
            .find("names no result field") != std::string::npos);
  CHECK(error_of("name = \"s\"\nfield = 11\ncurves = [{ a = 0, b = 0 }]\ndegrees = [1]\n[[tasks]]\ntype = \"hilbert\"\n")
            .find("curve") != std::string::npos);
  CHECK(error_of("name = \"s\"\nfield = 10007\ncurves = [{ a = 0, b = 7 }]\ndegrees = [1, 1]\n").find("one degree") !=
        std::string::npos);
}

TEST_CASE("empty task list") {
  const auto cfg = parse_config(kHeader, "cfg.toml");
  const auto out = run_config(cfg, {});
  CHECK(out.exit_code == kExitOk);
  CHECK(out.report["tasks"].empty());
  CHECK(out.report["config"]["degrees"] == nlohmann::json::array({4}));
}

TEST_CASE("expectations drive the exit code") {
  const std::string base = std::string(kHeader) + "\n[[tasks]]\ntype = \"betti\"\np_max = 3\nq_max = 5\n";
  const auto good = run_config(parse_config(base + "expect = { nonzero = [[0, 0, 1], [1, 2, 2], [2, 4, 1]] }\n", "c"), {});
  CHECK(good.exit_code == kExitOk);
  const auto bad = run_config(parse_config(base + "expect = { nonzero = [[0, 0, 1]] }\n", "c"), {});
  CHECK(bad.exit_code == kExitExpectation);
  CHECK(bad.report["tasks"][0]["failed_expectations"].size() == 1);
  const auto bounds =
      run_config(parse_config(std::string(kHeader) + "\n[[tasks]]\ntype = \"hilbert\"\nk_max = 3\n"
                              "expect = { max_v_dim = 4, min_v_dim = 4, values = [4, 8, 12] }\n", "c"), {});
  CHECK(bounds.exit_code == kExitOk);
}

TEST_CASE("characteristic guard and override") {
  const std::string text = "name = \"g\"\nfield = 5\nkind = \"ambient\"\ncap = 4\ncurves = [{ a = 0, b = 2 }]\n"
                           "degrees = [3]\n\n[[tasks]]\ntype = \"npr\"\np = 3\n";
  const auto cfg = parse_config(text, "g.toml");
  CHECK_THROWS_AS(run_config(cfg, {}), ConfigError);
  RunOptions o;
  o.override_char_guard = true;
  CHECK_NOTHROW(run_config(cfg, o));
}

TEST_CASE("rational field backend") {
  const std::string text = "name = \"q\"\nfield = \"rational\"\nkind = \"ambient\"\ncap = 4\ncurves = [{ a = 0, b = 7 }]\n"
                           "degrees = [3]\n\n[[tasks]]\ntype = \"betti\"\np_max = 2\nq_max = 4\n"
                           "expect = { nonzero = [[0, 0, 1], [1, 3, 1]], euler_consistent = true }\n";
  CHECK(run_config(parse_config(text, "q.toml"), {}).exit_code == kExitOk);
}

TEST_CASE("reports are deterministic and self-hashing") {
  const auto* b = find_builtin("thm34-equiv");
  REQUIRE(b);
  const auto cfg = parse_config(b->toml, "builtin");
  const auto a = run_config(cfg, {});
  RunOptions par;
  par.jobs = 3;
  const auto c = run_config(cfg, par);
  CHECK(canonical_dump(a.report) == canonical_dump(c.report));
  auto stripped = a.report;
  stripped.erase("hash");
  CHECK(a.report["hash"] == hex64(fnv1a64(canonical_dump(stripped))));
  CHECK(a.csv == c.csv);
}

TEST_CASE("atomic report writing") {
  const auto dir = std::filesystem::temp_directory_path() / "syzlab_cli_test";
  std::filesystem::remove_all(dir);
  const auto out = run_config(parse_config(kHeader, "cfg.toml"), {});
  write_outcome(out, dir.string());
  CHECK(std::filesystem::exists(dir / "report.json"));
  CHECK(std::filesystem::exists(dir / "timing.json"));
  for (const auto& e : std::filesystem::directory_iterator(dir)) CHECK(e.path().extension() != ".tmp");
  std::ifstream in(dir / "report.json");
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  CHECK(text == canonical_dump(out.report));
  std::filesystem::remove_all(dir);
}

TEST_CASE("every built-in parses and names its criteria") {
  std::set<int> covered;
  for (const auto& b : builtins()) {
    const auto cfg = parse_config(b.toml, "builtin:" + b.name);
    CHECK(cfg.name == b.name);
    CHECK_FALSE(cfg.tasks.empty());
    covered.insert(b.criteria.begin(), b.criteria.end());
  }
  for (int c = 1; c <= 10; ++c) CHECK(covered.count(c) == 1);
}
