#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "syzlab/cli/builtins.hpp"
#include "syzlab/cli/report.hpp"
#include "syzlab/cli/runner.hpp"
#include "syzlab/koszul/koszul.hpp"
#include "syzlab/mult/multlab.hpp"

namespace py = pybind11;
using namespace syz;
using PF = exact::PrimeField;

namespace {

using CurveList = std::vector<std::pair<long long, long long>>;

std::unique_ptr<ring::SectionRing<PF>> make_ring(std::uint32_t prime, const CurveList& curves,
                                                 const std::vector<int>& degrees, const std::string& kind, int cap) {
  if (curves.size() != degrees.size()) throw py::value_error("one degree per curve");
  if (kind != "ambient" && kind != "kummer") throw py::value_error("kind must be 'ambient' or 'kummer'");
  const PF f(prime);
  std::vector<ell::Curve<PF>> cs;
  for (const auto& [a, b] : curves) cs.push_back(ell::Curve<PF>::from_ints(f, a, b));
  const av::AbelianProduct<PF> x(std::move(cs));
  return std::make_unique<ring::SectionRing<PF>>(
      ring::LinearSystem<PF>(x, av::ProductBundle<PF>::polarization(x, degrees),
                             kind == "ambient" ? ring::SystemKind::Ambient : ring::SystemKind::Kummer),
      cap);
}

py::dict run_outcome(const cli::RunConfig& cfg, int jobs, bool override_guard) {
  cli::RunOptions o;
  o.jobs = jobs;
  o.override_char_guard = override_guard;
  const auto out = cli::run_config(cfg, o);
  py::dict d;
  d["exit_code"] = out.exit_code;
  d["report"] = cli::canonical_dump(out.report);
  d["lines"] = out.lines;
  return d;
}

}  // namespace

PYBIND11_MODULE(_syzlab, m) {
  m.doc() = "Exact syzygy computations on Kummer varieties of products of elliptic curves";
  py::register_exception<cli::ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<ring::CapExceeded>(m, "CapExceeded", PyExc_ValueError);

  m.def("version", [] { return std::string(cli::kToolVersion); });

  m.def("builtins", [] {
    py::list out;
    for (const auto& b : cli::builtins()) {
      py::dict d;
      d["name"] = b.name;
      d["criteria"] = b.criteria;
      d["summary"] = b.summary;
      d["toml"] = b.toml;
      out.append(d);
    }
    return out;
  });

  m.def(
      "run_config",
      [](const std::string& text, int jobs, bool override_guard) {
        return run_outcome(cli::parse_config(text, "<string>"), jobs, override_guard);
      },
      py::arg("toml"), py::arg("jobs") = 1, py::arg("override_char_guard") = false);

  m.def(
      "run_builtin",
      [](const std::string& name, int jobs) {
        const auto* b = cli::find_builtin(name);
        if (!b) throw py::key_error(name);
        return run_outcome(cli::parse_config(b->toml, "builtin:" + name), jobs, false);
      },
      py::arg("name"), py::arg("jobs") = 1);

  m.def(
      "hilbert_values",
      [](const CurveList& curves, const std::vector<int>& degrees, const std::string& kind, int k_max,
         std::uint32_t prime) { return ring::hilbert_values(*make_ring(prime, curves, degrees, kind, k_max), k_max); },
      py::arg("curves"), py::arg("degrees"), py::arg("kind") = "kummer", py::arg("k_max") = 4,
      py::arg("prime") = 10007u);

  m.def(
      "betti_table",
      [](const CurveList& curves, const std::vector<int>& degrees, const std::string& kind, int p_max, int q_max,
         std::uint32_t prime) {
        const auto r = make_ring(prime, curves, degrees, kind, std::max(q_max, 1));
        const auto t = koszul::betti_table(koszul::KoszulEngine<PF>(*r), p_max, q_max);
        return t.beta;
      },
      py::arg("curves"), py::arg("degrees"), py::arg("kind") = "kummer", py::arg("p_max") = 2, py::arg("q_max") = 4,
      py::arg("prime") = 10007u);

  m.def(
      "check_npr",
      [](const CurveList& curves, const std::vector<int>& degrees, const std::string& kind, int p, int r,
         std::uint32_t prime) {
        const auto ring = make_ring(prime, curves, degrees, kind, r + 4);
        const auto v = koszul::check_Npr(koszul::KoszulEngine<PF>(*ring), p, r);
        py::dict d;
        d["state"] = koszul::to_string(v.state);
        d["h_range"] = std::make_pair(v.h_lo, v.h_hi);
        d["stable"] = v.stable;
        d["verdict"] = v.describe();
        if (v.witness) d["witness"] = *v.witness;
        return d;
      },
      py::arg("curves"), py::arg("degrees"), py::arg("kind") = "kummer", py::arg("p") = 1, py::arg("r") = 0,
      py::arg("prime") = 10007u);

  m.def(
      "mplus_failures",
      [](std::uint32_t q, const CurveList& curves, const std::vector<int>& degrees, int n, int h) {
        const PF f(q);
        std::vector<ell::Curve<PF>> cs;
        for (const auto& [a, b] : curves) cs.push_back(ell::Curve<PF>::from_ints(f, a, b));
        const av::AbelianProduct<PF> x(std::move(cs));
        const auto a = av::ProductBundle<PF>::polarization(x, degrees);
        const auto rep = mult::sweep_alpha(x, mult::SweepMode::exhaustive(), [&](const mult::Alpha& al) {
          const auto pr = mult::mult_probe(x, a, n, h, al, mult::ParitySource::Plus);
          return mult::AlphaVerdict{al, pr.surjective() ? koszul::VerdictState::Holds : koszul::VerdictState::Fails,
                                    pr.corank()};
        });
        std::vector<std::string> out;
        for (const auto& al : rep.failures) out.push_back(mult::alpha_to_string(f, al));
        return std::make_pair(rep.total, out);
      },
      py::arg("q"), py::arg("curves"), py::arg("degrees"), py::arg("n") = 1, py::arg("h") = 2);
}
