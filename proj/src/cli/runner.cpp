#include "syzlab/cli/runner.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <filesystem>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#include "syzlab/cli/report.hpp"
#include "syzlab/exact/linalg.hpp"
#include "syzlab/koszul/koszul.hpp"
#include "syzlab/mult/multlab.hpp"

namespace syz::cli {

namespace {

using json = nlohmann::json;
using PF = exact::PrimeField;

// Keys every task may carry to override the system it runs on.
const std::set<std::string> kSystemKeys = {"degrees", "kind", "cap", "field"};

struct TaskContext {
  const RunConfig* cfg;
  const TaskSpec* task;
  const RunOptions* opts;
  int inner_jobs = 1;

  std::string at() const { return cfg->source + ":" + std::to_string(task->line) + ": " + task->label + ": "; }
};

class Params {
 public:
  Params(const TaskContext& ctx, std::set<std::string> allowed) : ctx_(ctx), p_(ctx.task->params) {
    allowed.insert(kSystemKeys.begin(), kSystemKeys.end());
    for (const auto& [k, v] : p_.items())
      if (!allowed.count(k)) fail("unknown parameter '" + k + "'");
  }

  [[noreturn]] void fail(const std::string& msg) const { throw ConfigError(ctx_.at() + msg); }

  bool has(const std::string& k) const { return p_.contains(k); }

  int integer(const std::string& k, std::optional<int> def = std::nullopt) const {
    if (!p_.contains(k)) {
      if (!def) fail("missing parameter '" + k + "'");
      return *def;
    }
    if (!p_[k].is_number_integer()) fail("'" + k + "' must be an integer");
    return p_[k].get<int>();
  }

  std::string string(const std::string& k, const std::string& def) const {
    if (!p_.contains(k)) return def;
    if (!p_[k].is_string()) fail("'" + k + "' must be a string");
    return p_[k].get<std::string>();
  }

  std::vector<int> int_list(const std::string& k, std::vector<int> def) const {
    if (!p_.contains(k)) return def;
    if (!p_[k].is_array()) fail("'" + k + "' must be an array of integers");
    std::vector<int> out;
    for (const auto& v : p_[k]) {
      if (!v.is_number_integer()) fail("'" + k + "' must be an array of integers");
      out.push_back(v.get<int>());
    }
    return out;
  }

  std::vector<std::vector<int>> int_rows(const std::string& k, std::size_t width) const {
    if (!p_.contains(k) || !p_[k].is_array()) fail("'" + k + "' must be an array of integer arrays");
    std::vector<std::vector<int>> out;
    for (const auto& row : p_[k]) {
      if (!row.is_array() || row.size() != width) fail("'" + k + "' rows must have " + std::to_string(width) + " entries");
      std::vector<int> r;
      for (const auto& v : row) {
        if (!v.is_number_integer()) fail("'" + k + "' rows must hold integers");
        r.push_back(v.get<int>());
      }
      out.push_back(std::move(r));
    }
    return out;
  }

 private:
  const TaskContext& ctx_;
  const json& p_;
};

struct SystemSpec {
  std::optional<std::uint32_t> prime;
  std::vector<int> degrees;
  ring::SystemKind kind = ring::SystemKind::Kummer;
  int cap = 6;
};

SystemSpec system_spec(const TaskContext& ctx, const Params& p) {
  SystemSpec s;
  s.prime = ctx.cfg->prime;
  if (p.has("field")) {
    const int f = p.integer("field");
    if (f < 2) p.fail("field must be a prime");
    s.prime = static_cast<std::uint32_t>(f);
  }
  s.degrees = p.int_list("degrees", ctx.cfg->degrees);
  if (s.degrees.size() != ctx.cfg->curves.size()) p.fail("'degrees' must give one degree per curve");
  for (int d : s.degrees)
    if (d < 1) p.fail("degrees must be positive");
  const std::string kind = p.string("kind", ctx.cfg->kind);
  if (kind == "ambient")
    s.kind = ring::SystemKind::Ambient;
  else if (kind == "kummer")
    s.kind = ring::SystemKind::Kummer;
  else
    p.fail("kind must be \"ambient\" or \"kummer\"");
  s.cap = p.integer("cap", ctx.cfg->cap);
  if (s.cap < 1 || s.cap > 12) p.fail("cap must lie in [1, 12]");
  return s;
}

template <class K>
av::AbelianProduct<K> make_variety(const K& f, const TaskContext& ctx, const Params& p) {
  std::vector<ell::Curve<K>> cs;
  for (const auto& c : ctx.cfg->curves) {
    try {
      cs.push_back(ell::Curve<K>::from_ints(f, c.a, c.b));
    } catch (const std::exception& e) {
      p.fail("curve y^2 = x^3 + " + std::to_string(c.a) + "x + " + std::to_string(c.b) + " over " + f.name() + ": " +
             e.what());
    }
  }
  return av::AbelianProduct<K>(std::move(cs));
}

PF prime_field(std::uint32_t q, const Params& p) {
  try {
    return PF(q);
  } catch (const std::exception& e) {
    p.fail(e.what());
  }
}

void guard(std::uint32_t characteristic, int p, const TaskContext& ctx, const Params& params) {
  if (ctx.opts->override_char_guard) return;
  try {
    exact::check_syzygy_characteristic(characteristic, p);
  } catch (const std::exception& e) {
    params.fail(std::string(e.what()) + " (use --override-char-guard to force)");
  }
}

json key_map(const std::map<int, std::size_t>& m) {
  json o = json::object();
  for (const auto& [k, v] : m) o[std::to_string(k)] = v;
  return o;
}

// ---- ring tasks ---------------------------------------------------------

template <class K>
json ring_task(const TaskContext& ctx, const Params& p, const SystemSpec& spec, const K& field) {
  const auto x = make_variety(field, ctx, p);
  ring::SectionRing<K> r(ring::LinearSystem<K>(x, av::ProductBundle<K>::polarization(x, spec.degrees), spec.kind),
                         spec.cap);
  const auto type = ctx.task->type;
  json res = json::object();

  if (type == TaskType::Hilbert) {
    const int k_max = p.integer("k_max", spec.cap);
    if (k_max < 1) p.fail("k_max must be positive");
    const auto vals = ring::hilbert_values(r, k_max);
    json expected = json::array();
    for (int k = 1; k <= k_max; ++k) expected.push_back(r.system().expected_dimension(k));
    res["values"] = vals;
    res["closed_form"] = expected;
    res["range"] = "k in [1, " + std::to_string(k_max) + "]";
    res["v_dim"] = r.v_dim();
    return res;
  }
  if (type == TaskType::Ideal) {
    const int k_min = p.integer("k_min", 2), k_max = p.integer("k_max", spec.cap);
    if (k_min < 1 || k_max < k_min) p.fail("need 1 <= k_min <= k_max");
    json dims = json::object(), sym = json::object(), below = json::object();
    std::optional<ring::IdealPiece<K>> prev;
    for (int k = k_min; k <= k_max; ++k) {
      auto piece = ring::ideal_piece(r, k);
      dims[std::to_string(k)] = piece.dimension();
      sym[std::to_string(k)] = ring::multichoose(r.v_dim(), static_cast<std::uint64_t>(k));
      if (prev) below[std::to_string(k)] = ring::ideal_multiplication_rank(r, *prev, k) == piece.dimension();
      prev = std::move(piece);
    }
    res["dims"] = dims;
    res["sym_dims"] = sym;
    res["generated_from_below"] = below;
    res["range"] = "k in [" + std::to_string(k_min) + ", " + std::to_string(k_max) + "]";
    return res;
  }
  if (type == TaskType::Generators) {
    const int k_max = p.integer("k_max", spec.cap);
    if (k_max < 2) p.fail("k_max must be at least 2");
    const auto g = ring::generator_degrees(r, k_max);
    json set = json::array();
    for (const auto& [d, c] : g) set.push_back(d);
    res["degrees"] = key_map(g);
    res["degree_set"] = set;
    res["max_degree"] = g.empty() ? 0 : g.rbegin()->first;
    res["range"] = "k in [2, " + std::to_string(k_max) + "]";
    return res;
  }
  if (type == TaskType::HNormality) {
    const int k_min = p.integer("k_min", 1), k_max = p.integer("k_max", spec.cap);
    if (k_min < 1 || k_max < k_min) p.fail("need 1 <= k_min <= k_max");
    json normal = json::object(), ranks = json::object(), sym = json::object(), target = json::object();
    bool all = true;
    for (int k = k_min; k <= k_max; ++k) {
      const auto rank = exact::rank(ring::sym_map(r, k).matrix);
      const bool ok = rank == r.dim(k);
      all = all && ok;
      normal[std::to_string(k)] = ok;
      ranks[std::to_string(k)] = rank;
      sym[std::to_string(k)] = ring::multichoose(r.v_dim(), static_cast<std::uint64_t>(k));
      target[std::to_string(k)] = r.dim(k);
    }
    res["normal"] = normal;
    res["ranks"] = ranks;
    res["sym_dims"] = sym;
    res["target_dims"] = target;
    res["all"] = all;
    res["range"] = "k in [" + std::to_string(k_min) + ", " + std::to_string(k_max) + "]";
    return res;
  }

  const koszul::KoszulEngine<K> engine(r);
  if (type == TaskType::Betti) {
    const int p_max = p.integer("p_max"), q_max = p.integer("q_max");
    if (p_max < 0 || q_max < 0) p.fail("p_max and q_max must be non-negative");
    guard(field.characteristic(), p_max, ctx, p);
    if (q_max > r.cap()) throw ring::CapExceeded();
    const auto t = koszul::betti_table(engine, p_max, q_max, ctx.inner_jobs);
    json nz = json::array();
    for (const auto& [pp, q, b] : t.nonzero()) nz.push_back(json::array({pp, q, b}));
    res["nonzero"] = nz;
    res["v_dim"] = t.v_dim;
    res["hilbert"] = t.hilbert;
    res["range"] = "p in [0, " + std::to_string(p_max) + "], q in [0, " + std::to_string(q_max) + "]";
    // Euler check wherever the antidiagonal fits inside the table
    bool euler = true;
    int checked = -1;
    for (int q = 0; q <= q_max; ++q) {
      if (std::min<int>(static_cast<int>(t.v_dim), q) > p_max) break;
      const auto [a, b] = koszul::euler_characteristic(engine, q);
      euler = euler && a == b;
      checked = q;
    }
    res["euler_consistent"] = euler;
    res["euler_range"] = "q in [0, " + std::to_string(checked) + "]";
    return res;
  }
  if (type == TaskType::Npr) {
    const int pp = p.integer("p"), rr = p.integer("r", 0);
    std::optional<int> h_max;
    if (p.has("h_max")) h_max = p.integer("h_max");
    if (pp < 0 || rr < 0) p.fail("p and r must be non-negative");
    if (h_max && *h_max < rr + 1) p.fail("h_max must be at least r+1");
    guard(field.characteristic(), pp, ctx, p);
    const auto v = koszul::check_Npr(engine, pp, rr, h_max, true, ctx.inner_jobs);
    res["state"] = koszul::to_string(v.state);
    res["h_range"] = json::array({v.h_lo, v.h_hi});
    res["stable"] = v.stable;
    res["verdict"] = v.describe();
    if (v.witness) {
      res["witness"] = json::array({v.witness->first, v.witness->second});
      res["witness_beta"] = v.witness_beta;
    }
    return res;
  }
  p.fail("task type not available on this system");
}

// ---- twist sweeps --------------------------------------------------------

mult::SweepMode sweep_mode(const Params& p) {
  const std::string mode = p.string("mode", "exhaustive");
  if (mode == "exhaustive") return mult::SweepMode::exhaustive();
  if (mode == "sampled") {
    const int n = p.integer("samples");
    if (n < 1) p.fail("samples must be positive");
    return mult::SweepMode::sampled(static_cast<std::size_t>(n), static_cast<std::uint64_t>(p.integer("seed", 0)));
  }
  p.fail("mode must be \"exhaustive\" or \"sampled\"");
}

std::vector<std::uint32_t> primes_for(const Params& p, const SystemSpec& spec) {
  std::vector<std::uint32_t> out;
  if (p.has("q")) {
    for (int q : p.int_list("q", {})) {
      if (q < 5) p.fail("sweep primes must be at least 5");
      out.push_back(static_cast<std::uint32_t>(q));
    }
  } else {
    if (!spec.prime) p.fail("twist sweeps need a prime field");
    out.push_back(*spec.prime);
  }
  if (out.empty()) p.fail("'q' must list at least one prime");
  return out;
}

std::string verdict_word(koszul::VerdictState s) { return koszul::to_string(s); }

json run_sweep(const TaskContext& ctx, const Params& p, const SystemSpec& spec, std::map<std::string, std::string>& csv,
               std::vector<std::string>& violations) {
  const std::string probe = p.string("probe", "mplus");
  if (probe != "mplus" && probe != "m" && probe != "equiv") p.fail("probe must be \"mplus\", \"m\" or \"equiv\"");
  const int n = p.integer("n", 1), h = p.integer("h", 2);
  if (n < 1 || h < 1) p.fail("n and h must be positive");
  if (probe == "equiv" && (n != 1 || h != 2)) p.fail("the equivalence probe is defined for n = 1, h = 2");
  const auto mode = sweep_mode(p);
  const auto primes = primes_for(p, spec);

  json per_q = json::array(), counts = json::array();
  std::size_t max_failures = 0, mismatches = 0;
  bool contains_zero = true, bounded = true;
  std::optional<std::pair<std::uint32_t, std::size_t>> prev;
  const std::size_t g = ctx.cfg->curves.size();
  for (const auto q : primes) {
    const PF f = prime_field(q, p);
    const auto x = make_variety(f, ctx, p);
    const auto a = av::ProductBundle<PF>::polarization(x, spec.degrees);
    mult::SweepReport rep;
    try {
      rep = mult::sweep_alpha(
          x, mode,
          [&](const mult::Alpha& al) {
            mult::AlphaVerdict v;
            v.alpha = al;
            if (probe == "equiv") {
              const auto e = mult::equiv_m_mplus(x, a, al);
              v.state = e.m_plus ? koszul::VerdictState::Holds : koszul::VerdictState::Fails;
              v.detail = (e.m ? 1u : 0u) | (e.m_plus ? 2u : 0u);
            } else {
              const auto pr = mult::mult_probe(x, a, n, h, al,
                                               probe == "m" ? mult::ParitySource::Full : mult::ParitySource::Plus);
              v.state = pr.surjective() ? koszul::VerdictState::Holds : koszul::VerdictState::Fails;
              v.detail = pr.corank();
            }
            return v;
          },
          ctx.inner_jobs);
    } catch (const mult::BudgetExceeded& e) {
      p.fail(e.what());
    }
    std::ostringstream table;
    std::size_t local_mismatch = 0;
    if (probe == "equiv") {
      table << "alpha,m,m_plus\n";
      for (const auto& v : rep.verdicts) {
        const bool m = v.detail & 1u, mp = v.detail & 2u;
        if (m != mp) {
          ++local_mismatch;
          violations.push_back("q=" + std::to_string(q) + " alpha=" + mult::alpha_to_string(f, v.alpha) +
                               ": m and m+ disagree");
        }
        table << "\"" << mult::alpha_to_string(f, v.alpha) << "\"," << (m ? "surjective" : "fails") << ","
              << (mp ? "surjective" : "fails") << "\n";
      }
    } else {
      table << "alpha,verdict,corank\n";
      for (const auto& v : rep.verdicts)
        table << "\"" << mult::alpha_to_string(f, v.alpha) << "\"," << (v.state == koszul::VerdictState::Holds ? "surjective" : "fails")
              << "," << v.detail << "\n";
    }
    csv["sweep_" + std::to_string(ctx.task->line) + "_q" + std::to_string(q) + ".csv"] = table.str();

    json fails = json::array();
    for (const auto& al : rep.failures) fails.push_back(mult::alpha_to_string(f, al));
    const bool zero_failed =
        std::find(rep.failures.begin(), rep.failures.end(), mult::Alpha::zero(g)) != rep.failures.end();
    contains_zero = contains_zero && zero_failed;
    json entry = {{"q", q},
                  {"domain", mode.describe() + " over E(F_" + std::to_string(q) + ")^" + std::to_string(g)},
                  {"total", rep.total},
                  {"failure_count", rep.failure_count()},
                  {"failures", fails},
                  {"contains_zero", zero_failed}};
    if (probe == "equiv") entry["mismatches"] = local_mismatch;
    per_q.push_back(entry);
    counts.push_back(rep.failure_count());
    max_failures = std::max(max_failures, rep.failure_count());
    mismatches += local_mismatch;
    // count / q^{2g-1} must not grow along the prime list
    if (prev) {
      unsigned __int128 lhs = rep.failure_count(), rhs = prev->second;
      for (std::size_t i = 0; i + 1 < 2 * g; ++i) {
        lhs *= prev->first;
        rhs *= q;
      }
      bounded = bounded && lhs <= rhs;
    }
    prev = std::make_pair(q, rep.failure_count());
  }
  json res = {{"probe", probe},
              {"n", n},
              {"h", h},
              {"per_q", per_q},
              {"failure_counts", counts},
              {"failure_count", max_failures},
              {"contains_zero", contains_zero},
              {"bounded_growth", bounded}};
  if (probe == "equiv") res["mismatches"] = mismatches;
  return res;
}

json run_it0(const TaskContext& ctx, const Params& p, const SystemSpec& spec, std::map<std::string, std::string>& csv) {
  const int n = p.integer("n", 1), pp = p.integer("p"), m = p.integer("m");
  if (n < 1 || m < 1) p.fail("n and m must be positive");
  if (pp < 1) p.fail("p must be at least 1");
  if (pp > mult::kMaxIt0Depth) p.fail("recursion depth p = " + std::to_string(pp) + " exceeds " + std::to_string(mult::kMaxIt0Depth));
  const auto mode = sweep_mode(p);
  json per_q = json::array();
  std::size_t inconclusive = 0, certified = 0, total = 0;
  for (const auto q : primes_for(p, spec)) {
    const PF f = prime_field(q, p);
    const auto x = make_variety(f, ctx, p);
    const auto a = av::ProductBundle<PF>::polarization(x, spec.degrees);
    mult::SweepReport rep;
    try {
      rep = mult::it0_check(x, a, n, pp, m, mode, ctx.inner_jobs);
    } catch (const mult::BudgetExceeded& e) {
      p.fail(e.what());
    }
    std::ostringstream table;
    table << "alpha,certificate,h0_dimension\n";
    std::size_t lo = SIZE_MAX, hi = 0;
    for (const auto& v : rep.verdicts) {
      table << "\"" << mult::alpha_to_string(f, v.alpha) << "\"," << verdict_word(v.state) << "," << v.detail << "\n";
      lo = std::min(lo, v.detail);
      hi = std::max(hi, v.detail);
    }
    csv["it0_" + std::to_string(ctx.task->line) + "_q" + std::to_string(q) + ".csv"] = table.str();
    json fails = json::array();
    for (const auto& al : rep.failures) fails.push_back(mult::alpha_to_string(f, al));
    per_q.push_back({{"q", q},
                     {"domain", mode.describe() + " over E(F_" + std::to_string(q) + ")^" + std::to_string(x.g())},
                     {"total", rep.total},
                     {"certified", rep.total - rep.failure_count()},
                     {"inconclusive", rep.failure_count()},
                     {"inconclusive_twists", fails},
                     {"h0_dimension_range", json::array({rep.total ? lo : 0, hi})}});
    inconclusive += rep.failure_count();
    certified += rep.total - rep.failure_count();
    total += rep.total;
  }
  return {{"n", n},         {"p", pp},           {"m", m},          {"per_q", per_q},
          {"total", total}, {"certified", certified}, {"inconclusive", inconclusive}};
}

json run_linkage(const TaskContext& ctx, const Params& p, const SystemSpec& spec, std::vector<std::string>& violations) {
  if (spec.kind != ring::SystemKind::Kummer) p.fail("linkage needs a Kummer system");
  if (!spec.prime) p.fail("linkage needs a prime field");
  const auto cells = p.int_rows("cells", 3);
  const auto mode = sweep_mode(p);
  const PF f = prime_field(*spec.prime, p);
  const auto x = make_variety(f, ctx, p);
  const auto a = av::ProductBundle<PF>::polarization(x, spec.degrees);
  json out = json::array();
  std::size_t linked = 0, bad = 0;
  for (const auto& c : cells) {
    const int n = c[0], pp = c[1], m = c[2];
    if (n < 1 || pp < 1 || m < 1) p.fail("cells need n, p, m >= 1");
    if (pp > mult::kMaxIt0Depth) p.fail("recursion depth exceeds " + std::to_string(mult::kMaxIt0Depth));
    json cell = {{"n", n}, {"p", pp}, {"m", m}};
    mult::SweepReport rep;
    try {
      rep = mult::it0_check(x, a, n, pp, m, mode, ctx.inner_jobs);
    } catch (const mult::BudgetExceeded& e) {
      p.fail(e.what());
    }
    const bool certified = rep.failure_count() == 0;
    cell["certified"] = certified;
    cell["sweep"] = mode.describe() + " over E(F_" + std::to_string(*spec.prime) + ")^" + std::to_string(x.g());
    // M^{(x)p} (x) A^{2(nh-1)} corresponds to the Koszul cell (p, h) of the system A^n
    if (m % 2 != 0 || (m / 2 + 1) % n != 0) {
      cell["status"] = "unmatched";
      out.push_back(cell);
      continue;
    }
    const int h = (m / 2 + 1) / n;
    guard(f.characteristic(), pp, ctx, p);
    std::vector<int> deg;
    for (int d : spec.degrees) deg.push_back(n * d);
    ring::SectionRing<PF> r(
        ring::LinearSystem<PF>(x, av::ProductBundle<PF>::polarization(x, deg), ring::SystemKind::Kummer), h + 2);
    const auto beta = koszul::KoszulEngine<PF>(r).middle_homology_dim(pp, h);
    cell["h"] = h;
    cell["koszul_beta"] = beta;
    if (certified) {
      ++linked;
      if (beta != 0) {
        ++bad;
        violations.push_back("cell (n=" + std::to_string(n) + ", p=" + std::to_string(pp) + ", h=" + std::to_string(h) +
                             ") certified but not exact");
      }
      cell["status"] = beta == 0 ? "linked" : "violation";
    } else {
      cell["status"] = "premise-open";
    }
    out.push_back(cell);
  }
  return {{"cells", out}, {"linked", linked}, {"violations", bad}};
}

// ---- expectations --------------------------------------------------------

bool starts_with(const std::string& s, const std::string& prefix) { return s.rfind(prefix, 0) == 0; }

std::vector<std::string> evaluate(const json& expect, const json& result, const TaskContext& ctx) {
  std::vector<std::string> fails;
  for (const auto& [key, want] : expect.items()) {
    if (result.contains(key)) {
      if (result[key] != want) fails.push_back(key + ": expected " + want.dump() + ", got " + result[key].dump());
      continue;
    }
    const auto split = [&](const std::string& prefix) -> const json* {
      if (!starts_with(key, prefix)) return nullptr;
      const auto rest = key.substr(prefix.size());
      return result.contains(rest) ? &result[rest] : nullptr;
    };
    if (const json* got = split("max_")) {
      if (!got->is_number() || !want.is_number()) throw ConfigError(ctx.at() + "'" + key + "' compares non-numbers");
      if (got->get<long long>() > want.get<long long>())
        fails.push_back(key + ": " + got->dump() + " exceeds " + want.dump());
    } else if (const json* got = split("min_")) {
      if (!got->is_number() || !want.is_number()) throw ConfigError(ctx.at() + "'" + key + "' compares non-numbers");
      if (got->get<long long>() < want.get<long long>())
        fails.push_back(key + ": " + got->dump() + " below " + want.dump());
    } else if (const json* got = split("subset_")) {
      if (!got->is_array() || !want.is_array()) throw ConfigError(ctx.at() + "'" + key + "' compares non-arrays");
      for (const auto& e : *got)
        if (std::find(want.begin(), want.end(), e) == want.end())
          fails.push_back(key + ": " + e.dump() + " not in " + want.dump());
    } else if (const json* got = split("contains_")) {
      if (!got->is_array()) throw ConfigError(ctx.at() + "'" + key + "' needs an array result");
      if (std::find(got->begin(), got->end(), want) == got->end())
        fails.push_back(key + ": " + want.dump() + " missing from " + got->dump());
    } else {
      throw ConfigError(ctx.at() + "expectation '" + key + "' names no result field");
    }
  }
  return fails;
}

struct TaskResult {
  json entry;
  std::map<std::string, std::string> csv;
  long long ms = 0;
  bool ok = true;
  std::string line;
};

TaskResult run_task(const TaskContext& ctx) {
  const auto t0 = std::chrono::steady_clock::now();
  TaskResult tr;
  std::vector<std::string> violations;
  json result;
  static const std::map<TaskType, std::set<std::string>> allowed = {
      {TaskType::Hilbert, {"k_max"}},
      {TaskType::Ideal, {"k_min", "k_max"}},
      {TaskType::Generators, {"k_max"}},
      {TaskType::HNormality, {"k_min", "k_max"}},
      {TaskType::Betti, {"p_max", "q_max"}},
      {TaskType::Npr, {"p", "r", "h_max"}},
      {TaskType::Sweep, {"probe", "n", "h", "q", "mode", "samples", "seed"}},
      {TaskType::It0, {"n", "p", "m", "q", "mode", "samples", "seed"}},
      {TaskType::Linkage, {"cells", "mode", "samples", "seed"}}};
  const Params p(ctx, allowed.at(ctx.task->type));
  const auto spec = system_spec(ctx, p);
  try {
    switch (ctx.task->type) {
      case TaskType::Sweep:
        result = run_sweep(ctx, p, spec, tr.csv, violations);
        break;
      case TaskType::It0:
        result = run_it0(ctx, p, spec, tr.csv);
        break;
      case TaskType::Linkage:
        result = run_linkage(ctx, p, spec, violations);
        break;
      default:
        if (spec.prime)
          result = ring_task(ctx, p, spec, prime_field(*spec.prime, p));
        else
          result = ring_task(ctx, p, spec, exact::Rationals());
    }
  } catch (const ConfigError&) {
    throw;
  } catch (const ring::CapExceeded& e) {
    p.fail(std::string(e.what()) + " (cap " + std::to_string(spec.cap) + ")");
  } catch (const std::invalid_argument& e) {
    p.fail(e.what());
  }
  const auto fails = evaluate(ctx.task->expect, result, ctx);
  tr.ok = fails.empty() && violations.empty();
  tr.entry = {{"label", ctx.task->label},
              {"type", to_string(ctx.task->type)},
              {"line", ctx.task->line},
              {"result", result},
              {"expect", ctx.task->expect},
              {"failed_expectations", fails},
              {"theorem_violations", violations},
              {"status", tr.ok ? "ok" : "failed"}};
  tr.ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0).count();
  std::ostringstream line;
  line << ctx.cfg->name << " " << ctx.task->label << ": " << (tr.ok ? "ok" : "FAILED");
  if (result.contains("verdict")) line << " [" << result["verdict"].get<std::string>() << "]";
  for (const auto& f : fails) line << "\n    expectation " << f;
  for (const auto& v : violations) line << "\n    THEOREM VIOLATION " << v;
  tr.line = line.str();
  return tr;
}

}  // namespace

RunOutcome run_config(const RunConfig& cfg, const RunOptions& opts) {
  const auto t0 = std::chrono::steady_clock::now();
  const std::size_t n = cfg.tasks.size();
  const std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(std::max(1, opts.jobs)), std::max<std::size_t>(n, 1));
  const int inner = std::max(1, opts.jobs / static_cast<int>(workers));
  std::vector<TaskResult> results(n);
  std::vector<std::exception_ptr> errors(n);
  std::atomic<std::size_t> next{0};
  const auto work = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        TaskContext ctx{&cfg, &cfg.tasks[i], &opts, inner};
        results[i] = run_task(ctx);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);

  RunOutcome out;
  json tasks = json::array(), timing_tasks = json::array();
  bool ok = true;
  for (auto& r : results) {
    tasks.push_back(r.entry);
    timing_tasks.push_back({{"label", r.entry["label"]}, {"ms", r.ms}});
    for (auto& [name, body] : r.csv) out.csv[name] = body;
    out.lines.push_back(r.line);
    ok = ok && r.ok;
  }
  out.report = {{"tool", "syzlab"}, {"version", kToolVersion}, {"name", cfg.name}, {"config", cfg.echo},
                {"tasks", tasks},   {"status", ok ? "ok" : "failed"}};
  out.report["hash"] = hex64(fnv1a64(canonical_dump(out.report)));
  out.exit_code = ok ? kExitOk : kExitExpectation;
  const auto total = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0).count();
  out.timing = {{"name", cfg.name}, {"tasks", timing_tasks}, {"total_ms", total}};
  return out;
}

void write_outcome(const RunOutcome& out, const std::string& dir) {
  const std::filesystem::path base(dir);
  atomic_write((base / "report.json").string(), canonical_dump(out.report));
  atomic_write((base / "timing.json").string(), canonical_dump(out.timing));
  for (const auto& [name, body] : out.csv) atomic_write((base / name).string(), body);
}

}  // namespace syz::cli
