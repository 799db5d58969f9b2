#include "syzlab/cli/config.hpp"

#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "tomlplusplus/toml.hpp"

namespace syz::cli {

namespace {

std::string where(const std::string& source, const toml::node& n) {
  return source + ":" + std::to_string(n.source().begin.line) + ": ";
}

nlohmann::json to_json(const toml::node& n, const std::string& source) {
  if (const auto* t = n.as_table()) {
    nlohmann::json obj = nlohmann::json::object();
    for (auto&& [k, v] : *t) obj[std::string(k.str())] = to_json(v, source);
    return obj;
  }
  if (const auto* a = n.as_array()) {
    nlohmann::json arr = nlohmann::json::array();
    for (auto&& v : *a) arr.push_back(to_json(v, source));
    return arr;
  }
  if (const auto* i = n.as_integer()) return i->get();
  if (const auto* s = n.as_string()) return s->get();
  if (const auto* b = n.as_boolean()) return b->get();
  throw ConfigError(where(source, n) + "only integers, strings, booleans, arrays and tables are allowed");
}

const std::map<std::string, TaskType>& task_types() {
  static const std::map<std::string, TaskType> m = {
      {"hilbert", TaskType::Hilbert},       {"ideal", TaskType::Ideal},   {"generators", TaskType::Generators},
      {"hnormality", TaskType::HNormality}, {"betti", TaskType::Betti},   {"npr", TaskType::Npr},
      {"sweep", TaskType::Sweep},           {"it0", TaskType::It0},       {"linkage", TaskType::Linkage}};
  return m;
}

long long int_value(const toml::node& n, const std::string& source, const std::string& key) {
  const auto* i = n.as_integer();
  if (!i) throw ConfigError(where(source, n) + "'" + key + "' must be an integer");
  return i->get();
}

}  // namespace

std::string to_string(TaskType t) {
  for (const auto& [name, type] : task_types())
    if (type == t) return name;
  return "unknown";
}

RunConfig parse_config(const std::string& text, const std::string& source) {
  toml::table root;
  try {
    root = toml::parse(text, source);
  } catch (const toml::parse_error& e) {
    throw ConfigError(source + ":" + std::to_string(e.source().begin.line) + ": " + std::string(e.description()));
  }

  RunConfig cfg;
  cfg.source = source;
  cfg.prime = 10007;
  static const std::set<std::string> known = {"name", "field", "kind", "cap", "curves", "degrees", "tasks"};
  for (auto&& [k, v] : root) {
    const std::string key(k.str());
    if (!known.count(key)) throw ConfigError(where(source, v) + "unknown key '" + key + "'");
  }

  if (const auto* n = root.get("name")) {
    if (!n->is_string()) throw ConfigError(where(source, *n) + "'name' must be a string");
    cfg.name = n->as_string()->get();
  } else {
    throw ConfigError(source + ":1: missing 'name'");
  }
  if (const auto* f = root.get("field")) {
    if (const auto* s = f->as_string()) {
      if (s->get() != "rational") throw ConfigError(where(source, *f) + "field must be a prime or \"rational\"");
      cfg.prime.reset();
    } else {
      const auto p = int_value(*f, source, "field");
      if (p < 2 || p > 0xFFFFFFFFLL) throw ConfigError(where(source, *f) + "field prime out of range");
      cfg.prime = static_cast<std::uint32_t>(p);
    }
  }
  if (const auto* k = root.get("kind")) {
    const auto* s = k->as_string();
    if (!s || (s->get() != "ambient" && s->get() != "kummer"))
      throw ConfigError(where(source, *k) + "kind must be \"ambient\" or \"kummer\"");
    cfg.kind = s->get();
  }
  if (const auto* c = root.get("cap")) {
    const auto v = int_value(*c, source, "cap");
    if (v < 1 || v > 12) throw ConfigError(where(source, *c) + "cap must lie in [1, 12]");
    cfg.cap = static_cast<int>(v);
  }
  if (const auto* cs = root.get("curves")) {
    const auto* arr = cs->as_array();
    if (!arr) throw ConfigError(where(source, *cs) + "'curves' must be an array of {a, b} tables");
    for (auto&& c : *arr) {
      const auto* t = c.as_table();
      if (!t || !t->get("a") || !t->get("b")) throw ConfigError(where(source, c) + "curve needs integer keys a and b");
      cfg.curves.push_back({int_value(*t->get("a"), source, "a"), int_value(*t->get("b"), source, "b")});
    }
  }
  if (const auto* ds = root.get("degrees")) {
    const auto* arr = ds->as_array();
    if (!arr) throw ConfigError(where(source, *ds) + "'degrees' must be an array of integers");
    for (auto&& d : *arr) {
      const auto v = int_value(d, source, "degrees");
      if (v < 1) throw ConfigError(where(source, d) + "degrees must be positive");
      cfg.degrees.push_back(static_cast<int>(v));
    }
  }
  if (cfg.curves.empty()) throw ConfigError(source + ":1: missing 'curves'");
  if (cfg.degrees.size() != cfg.curves.size())
    throw ConfigError(source + ":1: 'degrees' must give one degree per curve");

  if (const auto* ts = root.get("tasks")) {
    const auto* arr = ts->as_array();
    if (!arr) throw ConfigError(where(source, *ts) + "'tasks' must be an array of tables");
    std::size_t index = 0;
    for (auto&& t : *arr) {
      const auto* tbl = t.as_table();
      if (!tbl) throw ConfigError(where(source, t) + "task must be a table");
      TaskSpec spec;
      spec.line = static_cast<int>(t.source().begin.line);
      const auto* type = tbl->get("type");
      if (!type || !type->is_string()) throw ConfigError(where(source, t) + "task needs a string 'type'");
      const auto it = task_types().find(type->as_string()->get());
      if (it == task_types().end())
        throw ConfigError(where(source, *type) + "unknown task type '" + type->as_string()->get() + "'");
      spec.type = it->second;
      spec.label = "task " + std::to_string(index) + " (" + it->first + ")";
      spec.params = nlohmann::json::object();
      spec.expect = nlohmann::json::object();
      for (auto&& [k, v] : *tbl) {
        const std::string key(k.str());
        if (key == "expect") {
          if (!v.is_table()) throw ConfigError(where(source, v) + "'expect' must be a table");
          spec.expect = to_json(v, source);
        } else if (key != "type") {
          spec.params[key] = to_json(v, source);
        }
      }
      cfg.tasks.push_back(std::move(spec));
      ++index;
    }
  }
  cfg.echo = to_json(root, source);
  return cfg;
}

RunConfig load_config_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError(path + ":0: cannot open config file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), path);
}

}  // namespace syz::cli
