#pragma once

#include <string>
#include <vector>

namespace syz::cli {

struct Builtin {
  std::string name;
  std::vector<int> criteria;  // acceptance criteria this configuration witnesses
  std::string summary;
  std::string toml;
};

const std::vector<Builtin>& builtins();
const Builtin* find_builtin(const std::string& name);

}  // namespace syz::cli
