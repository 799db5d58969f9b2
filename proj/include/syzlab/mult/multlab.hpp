#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "syzlab/av/product_sections.hpp"
#include "syzlab/koszul/koszul.hpp"

namespace syz::mult {

using F = exact::PrimeField;
using Variety = av::AbelianProduct<F>;
using Bundle = av::ProductBundle<F>;
using Alpha = av::Pic0Element<F>;
using koszul::VerdictState;

class BudgetExceeded : public std::runtime_error {
 public:
  explicit BudgetExceeded(std::size_t tuples)
      : std::runtime_error("exhaustive sweep over " + std::to_string(tuples) +
                           " twists exceeds the budget of 10000; use sampled mode") {}
};

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class ParitySource { Plus, Full };

/// H0(A^{2n})^{(+)} (x) H0(A^h (x) alpha) -> H0(A^{2n+h} (x) alpha).
struct MultProbe {
  int n = 0;
  int h = 0;
  Alpha alpha;
  ParitySource source = ParitySource::Plus;
  exact::Matrix<F> matrix{F(), 0, 0};
  std::size_t rank = 0;
  std::size_t target_dim = 0;
  std::size_t corank() const { return target_dim - rank; }
  bool surjective() const { return rank == target_dim; }
};

MultProbe mult_probe(const Variety& x, const Bundle& a, int n, int h, const Alpha& alpha, ParitySource source);

struct Equivalence {
  bool m = false;
  bool m_plus = false;
  bool agree() const { return m == m_plus; }
};

/// Surjectivity of H0(A^2) (x) H0(A^2 alpha) -> H0(A^4 alpha) and of the
/// same map restricted to H0(A^2)^+.
Equivalence equiv_m_mplus(const Variety& x, const Bundle& a, const Alpha& alpha);

struct SweepMode {
  enum class Kind { Exhaustive, Sampled } kind = Kind::Exhaustive;
  std::size_t samples = 0;
  std::uint64_t seed = 0;

  static SweepMode exhaustive() { return {}; }
  static SweepMode sampled(std::size_t n, std::uint64_t seed) { return {Kind::Sampled, n, seed}; }
  std::string describe() const;
};

inline constexpr std::size_t kSweepBudget = 10000;

/// Exhaustive: all tuples of rational points, origin first then (x, y)
/// order per factor, lexicographic across factors. Sampled: distinct tuples
/// drawn with a seeded mt19937_64, returned sorted.
std::vector<Alpha> enumerate_alphas(const Variety& x, const SweepMode& mode);

struct AlphaVerdict {
  Alpha alpha;
  VerdictState state = VerdictState::Inconclusive;
  std::size_t detail = 0;  // corank or kernel dimension, probe dependent
};

struct SweepReport {
  SweepMode mode;
  std::size_t total = 0;
  std::vector<AlphaVerdict> verdicts;  // sorted by alpha
  std::vector<Alpha> failures;         // alphas whose verdict is not Holds
  std::size_t failure_count() const { return failures.size(); }
};

using Probe = std::function<AlphaVerdict(const Alpha&)>;

/// Runs the probe on every twist of the mode; `jobs` worker threads.
SweepReport sweep_alpha(const Variety& x, const SweepMode& mode, const Probe& probe, int jobs = 1);

/// H0(M_{W_n}^{(x)p} (x) A^m (x) alpha) as a subspace of W_n^{(x)p} (x) H0(A^m alpha),
/// with the newest W factor most significant.
struct KernelBundleSpace {
  int n = 0;
  int p = 0;
  int m = 0;
  Alpha alpha;
  std::size_t ambient_dim = 0;
  exact::Matrix<F> basis{F(), 0, 0};
  VerdictState h1_zero = VerdictState::Inconclusive;
  std::size_t dimension() const { return basis.cols(); }
};

struct StepMap {
  exact::Matrix<F> matrix{F(), 0, 0};  // W (x) H0(M^{p-1} A^m a) -> W^{(x)p-1} (x) H0(A^{m+2n} a)
  std::size_t rank = 0;
  std::size_t target_dim = 0;  // dim H0(M^{p-1} A^{m+2n} a)
  bool surjective() const { return rank == target_dim; }
};

/// Kernel-bundle sections and the I.T.(0) certification chain for one
/// (A, n, alpha). Results are cached per (p, m).
class KernelLab {
 public:
  KernelLab(const Variety& x, const Bundle& a, int n, const Alpha& alpha);

  std::size_t w_dim() const { return w_.dimension(); }
  const KernelBundleSpace& sections(int p, int m);
  const StepMap& step(int p, int m);
  /// Holds when H1 vanishing is certified by the chain; Inconclusive otherwise.
  VerdictState it0(int p, int m);

 private:
  const av::ProductSectionSpace<F>& twisted(int m);
  const av::MultTable<F>& table(int m);

  const Variety* x_;
  Bundle a_;
  int n_;
  Alpha alpha_;
  av::ProductSectionSpace<F> w_;
  std::map<int, std::unique_ptr<av::ProductSectionSpace<F>>> spaces_;
  std::map<int, std::unique_ptr<av::MultTable<F>>> tables_;
  std::map<std::pair<int, int>, KernelBundleSpace> kernels_;
  std::map<std::pair<int, int>, StepMap> steps_;
  std::map<std::pair<int, int>, VerdictState> certs_;
};

KernelBundleSpace kernel_sections(const Variety& x, const Bundle& a, int n, int p, int m, const Alpha& alpha);

inline constexpr int kMaxIt0Depth = 4;

/// Per-alpha I.T.(0) certificate for M_{W_n}^{(x)p} (x) A^m (x) alpha.
SweepReport it0_check(const Variety& x, const Bundle& a, int n, int p, int m, const SweepMode& mode, int jobs = 1);

std::string alpha_to_string(const F& f, const Alpha& a);

}  // namespace syz::mult
