#pragma once

#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "syzlab/ring/section_ring.hpp"

namespace syz::koszul {

/// Koszul complexes of a section ring R over S = Sym V, V = R_1:
///   D(q, h): wedge^q V (x) R_h -> wedge^{q-1} V (x) R_{h+1},
///   e_I (x) s -> sum_t (-1)^t e_{I \ i_t} (x) v_{i_t} s.
/// D(0, h) is the zero map. Ranks are cached per (q, h).
template <class K>
class KoszulEngine {
 public:
  explicit KoszulEngine(const ring::SectionRing<K>& ring) : ring_(&ring) {}

  const ring::SectionRing<K>& ring() const noexcept { return *ring_; }
  std::size_t v_dim() const { return ring_->v_dim(); }

  std::size_t term_dim(int q, int h) const;
  exact::Matrix<K> differential(int q, int h) const;
  std::size_t rank_of(int q, int h) const;
  /// Fill the rank cache for the given (q, h) pairs using up to `jobs` threads.
  void precompute(const std::vector<std::pair<int, int>>& cells, int jobs) const;

  /// dim of the middle homology at wedge^p V (x) R_{h+1}, i.e. beta_{p, p+h+1}.
  std::size_t middle_homology_dim(int p, int h) const;

 private:
  const ring::SectionRing<K>* ring_;
  mutable std::mutex mu_;
  mutable std::map<std::pair<int, int>, std::size_t> ranks_;
};

template <class K>
struct KoszulCell {
  int p;
  int h;
  exact::Matrix<K> d_in;   // D(p+1, h)
  exact::Matrix<K> d_out;  // D(p, h+1)
  bool is_complex() const { return (d_out * d_in).is_zero(); }
};

template <class K>
KoszulCell<K> koszul_cell(const KoszulEngine<K>& engine, int p, int h);

struct BettiTable {
  int p_max = 0;
  int q_max = 0;
  std::size_t v_dim = 0;
  std::vector<std::size_t> hilbert;             // dim R_k, k = 0..q_max
  std::vector<std::vector<std::size_t>> beta;   // beta[p][q]

  std::size_t at(int p, int q) const { return beta[static_cast<std::size_t>(p)][static_cast<std::size_t>(q)]; }
  /// Nonzero entries as (p, q, beta).
  std::vector<std::tuple<int, int, std::size_t>> nonzero() const;
};

template <class K>
BettiTable betti_table(const KoszulEngine<K>& engine, int p_max, int q_max, int jobs = 1);

enum class VerdictState { Holds, Fails, Inconclusive };
std::string to_string(VerdictState s);

struct NprVerdict {
  int p = 0;
  int r = 0;
  VerdictState state = VerdictState::Inconclusive;
  int h_lo = 0;
  int h_hi = 0;
  bool stable = false;  // certified window reaches past the Hilbert stabilization degree
  std::optional<std::pair<int, int>> witness;  // (p', h) of the first non-exact cell
  std::size_t witness_beta = 0;
  std::string reason;
  std::string describe() const;
};

/// Exactness in the middle for indices p' = 0..p and h in [r+1, h_max].
/// Default h_max = max(r+1, q_stab+1).
template <class K>
NprVerdict check_Npr(const KoszulEngine<K>& engine, int p, int r, std::optional<int> h_max = std::nullopt,
                     bool override_char_guard = false, int jobs = 1);

/// Alternating sums in total degree q: sum_p (-1)^p dim(wedge^p V (x) R_{q-p})
/// and sum_p (-1)^p beta_{p,q}. Equal for every q.
template <class K>
std::pair<long long, long long> euler_characteristic(const KoszulEngine<K>& engine, int q);

extern template class KoszulEngine<exact::PrimeField>;
extern template class KoszulEngine<exact::Rationals>;

}  // namespace syz::koszul
