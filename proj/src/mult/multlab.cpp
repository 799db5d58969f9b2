#include "syzlab/mult/multlab.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <random>
#include <set>
#include <sstream>
#include <thread>

#include "syzlab/exact/linalg.hpp"

namespace syz::mult {

namespace {

void require_twist_points(const Variety& x, const Alpha& alpha) {
  if (alpha.points.size() != x.g()) throw ConfigError("twist has " + std::to_string(alpha.points.size()) +
                                                      " points for " + std::to_string(x.g()) + " factors");
  for (std::size_t i = 0; i < x.g(); ++i)
    if (!x.factor(i).contains(alpha.points[i])) throw ell::InvalidPoint();
}

}  // namespace

MultProbe mult_probe(const Variety& x, const Bundle& a, int n, int h, const Alpha& alpha, ParitySource source) {
  if (n < 1 || h < 1) throw ConfigError("mult_probe needs n >= 1 and h >= 1");
  require_twist_points(x, alpha);
  const auto a2n = a.power(2 * n);
  const auto w = source == ParitySource::Plus ? av::plus_space(x, a2n) : av::sections(x, a2n);
  const auto src = av::sections(x, av::twist(x, a.power(h), alpha));
  const auto tgt = av::sections(x, av::twist(x, a.power(2 * n + h), alpha));
  MultProbe out;
  out.n = n;
  out.h = h;
  out.alpha = alpha;
  out.source = source;
  out.matrix = av::MultTable<F>(w, src, tgt).matrix();
  out.rank = exact::rank(out.matrix);
  out.target_dim = tgt.dimension();
  return out;
}

Equivalence equiv_m_mplus(const Variety& x, const Bundle& a, const Alpha& alpha) {
  Equivalence e;
  e.m = mult_probe(x, a, 1, 2, alpha, ParitySource::Full).surjective();
  e.m_plus = mult_probe(x, a, 1, 2, alpha, ParitySource::Plus).surjective();
  return e;
}

std::string SweepMode::describe() const {
  if (kind == Kind::Exhaustive) return "exhaustive";
  return "sampled " + std::to_string(samples) + " seed " + std::to_string(seed);
}

std::vector<Alpha> enumerate_alphas(const Variety& x, const SweepMode& mode) {
  std::vector<std::vector<ell::Point<F>>> pts;
  std::size_t total = 1;
  for (const auto& c : x.factors()) {
    pts.push_back(ell::enumerate_points(c));
    total *= pts.back().size();
  }
  std::vector<Alpha> out;
  if (mode.kind == SweepMode::Kind::Exhaustive) {
    if (total > kSweepBudget) throw BudgetExceeded(total);
    out.reserve(total);
    for (std::size_t t = 0; t < total; ++t) {
      Alpha a;
      std::size_t rest = t;
      a.points.resize(pts.size());
      for (std::size_t i = pts.size(); i-- > 0;) {
        a.points[i] = pts[i][rest % pts[i].size()];
        rest /= pts[i].size();
      }
      out.push_back(std::move(a));
    }
    return out;
  }
  const std::size_t want = std::min(mode.samples, total);
  std::mt19937_64 rng(mode.seed);
  std::set<Alpha> seen;
  while (seen.size() < want) {
    Alpha a;
    for (const auto& p : pts) a.points.push_back(p[rng() % p.size()]);
    seen.insert(std::move(a));
  }
  return {seen.begin(), seen.end()};
}

SweepReport sweep_alpha(const Variety& x, const SweepMode& mode, const Probe& probe, int jobs) {
  const auto alphas = enumerate_alphas(x, mode);
  SweepReport rep;
  rep.mode = mode;
  rep.total = alphas.size();
  rep.verdicts.resize(alphas.size());
  const std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(std::max(1, jobs)), alphas.size());
  if (workers <= 1) {
    for (std::size_t i = 0; i < alphas.size(); ++i) rep.verdicts[i] = probe(alphas[i]);
  } else {
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex fail_mu;
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < alphas.size(); i = next++) {
          try {
            rep.verdicts[i] = probe(alphas[i]);
          } catch (...) {
            std::lock_guard<std::mutex> lock(fail_mu);
            if (!failure) failure = std::current_exception();
          }
        }
      });
    }
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
  }
  std::sort(rep.verdicts.begin(), rep.verdicts.end(),
            [](const AlphaVerdict& a, const AlphaVerdict& b) { return a.alpha < b.alpha; });
  for (const auto& v : rep.verdicts)
    if (v.state != VerdictState::Holds) rep.failures.push_back(v.alpha);
  return rep;
}

KernelLab::KernelLab(const Variety& x, const Bundle& a, int n, const Alpha& alpha)
    : x_(&x), a_(a), n_(n), alpha_(alpha), w_(av::plus_space(x, a.power(2 * n))) {
  if (n < 1) throw ConfigError("kernel bundle needs n >= 1");
  require_twist_points(x, alpha);
}

const av::ProductSectionSpace<F>& KernelLab::twisted(int m) {
  auto& slot = spaces_[m];
  if (!slot) slot = std::make_unique<av::ProductSectionSpace<F>>(av::sections(*x_, av::twist(*x_, a_.power(m), alpha_)));
  return *slot;
}

const av::MultTable<F>& KernelLab::table(int m) {
  auto& slot = tables_[m];
  if (!slot) {
    const auto& src = twisted(m);
    const auto& tgt = twisted(m + 2 * n_);
    slot = std::make_unique<av::MultTable<F>>(w_, src, tgt);
  }
  return *slot;
}

const StepMap& KernelLab::step(int p, int m) {
  if (p < 1) throw ConfigError("step map needs p >= 1");
  if (auto it = steps_.find({p, m}); it != steps_.end()) return it->second;
  const auto& lower = sections(p - 1, m);
  const auto& lower_target = sections(p - 1, m + 2 * n_);
  const auto& mt = table(m);
  const std::size_t sm = twisted(m).dimension(), st = twisted(m + 2 * n_).dimension();
  const std::size_t wd = w_dim(), kd = lower.dimension();
  const auto cols = lower.basis.columns();
  std::vector<exact::SparseVec<F>> out;
  out.reserve(wd * kd);
  const F& f = w_.field();
  for (std::size_t w = 0; w < wd; ++w) {
    for (std::size_t j = 0; j < kd; ++j) {
      exact::SparseVec<F> img;
      for (const auto& [idx, c] : cols[j]) {
        const std::size_t prefix = idx / sm, s = idx % sm;
        for (const auto& [t, v] : mt.product(w, s))
          img.emplace_back(static_cast<std::uint32_t>(prefix * st + t), f.mul(c, v));
      }
      std::sort(img.begin(), img.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
      exact::normalize(f, img);
      out.push_back(std::move(img));
    }
  }
  StepMap sm_out;
  sm_out.matrix = exact::Matrix<F>::from_columns(f, lower_target.ambient_dim, std::move(out));
  sm_out.rank = exact::rank(sm_out.matrix);
  sm_out.target_dim = lower_target.dimension();
  if (sm_out.rank > sm_out.target_dim) throw std::logic_error("step map leaves the kernel-bundle sections");
  return steps_.emplace(std::make_pair(p, m), std::move(sm_out)).first->second;
}

const KernelBundleSpace& KernelLab::sections(int p, int m) {
  if (p < 0 || m < 1) throw ConfigError("kernel sections need p >= 0 and m >= 1");
  if (auto it = kernels_.find({p, m}); it != kernels_.end()) return it->second;
  KernelBundleSpace k;
  k.n = n_;
  k.p = p;
  k.m = m;
  k.alpha = alpha_;
  const F& f = w_.field();
  if (p == 0) {
    const std::size_t d = twisted(m).dimension();
    k.ambient_dim = d;
    k.basis = exact::Matrix<F>::identity(f, d);
  } else {
    const auto& st = step(p, m);
    const auto ker = exact::kernel_basis(st.matrix);
    const auto& lower = sections(p - 1, m);
    const auto lcols = lower.basis.columns();
    const std::size_t kd = lower.dimension(), amb = lower.ambient_dim;
    k.ambient_dim = w_dim() * amb;
    std::vector<exact::SparseVec<F>> cols;
    for (const auto& kv : ker.columns()) {
      exact::SparseVec<F> v;
      for (const auto& [c, coef] : kv) {
        const std::size_t w = c / kd, j = c % kd;
        for (const auto& [idx, val] : lcols[j])
          v.emplace_back(static_cast<std::uint32_t>(w * amb + idx), f.mul(coef, val));
      }
      std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
      exact::normalize(f, v);
      cols.push_back(std::move(v));
    }
    k.basis = exact::Matrix<F>::from_columns(f, k.ambient_dim, std::move(cols));
  }
  k.h1_zero = it0(p, m);
  return kernels_.emplace(std::make_pair(p, m), std::move(k)).first->second;
}

VerdictState KernelLab::it0(int p, int m) {
  if (p > kMaxIt0Depth) throw ConfigError("I.T.(0) recursion depth " + std::to_string(p) + " exceeds " +
                                          std::to_string(kMaxIt0Depth));
  if (m < 1) return VerdictState::Inconclusive;
  if (p == 0) return VerdictState::Holds;
  if (auto it = certs_.find({p, m}); it != certs_.end()) return it->second;
  VerdictState v = VerdictState::Inconclusive;
  if (it0(p - 1, m) == VerdictState::Holds && it0(p - 1, m + 2 * n_) == VerdictState::Holds && step(p, m).surjective())
    v = VerdictState::Holds;
  certs_[{p, m}] = v;
  return v;
}

KernelBundleSpace kernel_sections(const Variety& x, const Bundle& a, int n, int p, int m, const Alpha& alpha) {
  KernelLab lab(x, a, n, alpha);
  return lab.sections(p, m);
}

SweepReport it0_check(const Variety& x, const Bundle& a, int n, int p, int m, const SweepMode& mode, int jobs) {
  if (p < 1) throw ConfigError("it0_check needs p >= 1");
  if (p > kMaxIt0Depth) throw ConfigError("I.T.(0) recursion depth " + std::to_string(p) + " exceeds " +
                                          std::to_string(kMaxIt0Depth));
  return sweep_alpha(
      x, mode,
      [&](const Alpha& alpha) {
        KernelLab lab(x, a, n, alpha);
        AlphaVerdict v;
        v.alpha = alpha;
        v.state = lab.it0(p, m);
        v.detail = lab.sections(p, m).dimension();
        return v;
      },
      jobs);
}

std::string alpha_to_string(const F& f, const Alpha& a) {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < a.points.size(); ++i) {
    if (i) os << ", ";
    const auto& p = a.points[i];
    if (p.infinity)
      os << "O";
    else
      os << "[" << f.format(p.x) << ":" << f.format(p.y) << "]";
  }
  os << ")";
  return os.str();
}

}  // namespace syz::mult
