#include "syzlab/koszul/koszul.hpp"

#include <algorithm>
#include <atomic>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "syzlab/exact/linalg.hpp"
#include "syzlab/exact/wedge.hpp"

namespace syz::koszul {

template <class K>
std::size_t KoszulEngine<K>::term_dim(int q, int h) const {
  const auto n = v_dim();
  if (q < 0 || h < 0 || static_cast<std::size_t>(q) > n) return 0;
  return static_cast<std::size_t>(exact::binomial(n, static_cast<std::uint64_t>(q))) * ring_->dim(h);
}

template <class K>
exact::Matrix<K> KoszulEngine<K>::differential(int q, int h) const {
  const K& f = ring_->field();
  const std::size_t cols = term_dim(q, h);
  const std::size_t rows = q >= 1 ? term_dim(q - 1, h + 1) : 0;
  std::vector<exact::SparseVec<K>> out(cols);
  if (q <= 0 || cols == 0) return exact::Matrix<K>::from_columns(f, rows, std::move(out));

  const int n = static_cast<int>(v_dim());
  const std::size_t rh = ring_->dim(h), rh1 = ring_->dim(h + 1);
  // v_i * s for every basis section s of R_h
  std::vector<std::vector<exact::SparseVec<K>>> prod(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    auto& row = prod[static_cast<std::size_t>(i)];
    row.reserve(rh);
    for (std::size_t s = 0; s < rh; ++s) {
      exact::SparseVec<K> e{{static_cast<std::uint32_t>(s), f.one()}};
      row.push_back(ring_->multiply_by_v(static_cast<std::size_t>(i), h, e));
    }
  }
  const exact::WedgeIndex src(n, q), dst(n, q - 1);
  std::vector<int> sub(static_cast<std::size_t>(q - 1));
  for (std::size_t I = 0; I < src.size(); ++I) {
    const auto tup = src.tuple(I);
    for (int t = 0; t < q; ++t) {
      std::size_t w = 0;
      for (int u = 0; u < q; ++u)
        if (u != t) sub[w++] = tup[static_cast<std::size_t>(u)];
      const std::size_t J = dst.index_of(sub);
      const bool negative = (t % 2) == 1;
      const auto& row = prod[static_cast<std::size_t>(tup[static_cast<std::size_t>(t)])];
      for (std::size_t s = 0; s < rh; ++s) {
        auto& col = out[I * rh + s];
        for (const auto& [r, v] : row[s])
          col.emplace_back(static_cast<std::uint32_t>(J * rh1 + r), negative ? f.neg(v) : v);
      }
    }
  }
  for (auto& c : out) {
    std::sort(c.begin(), c.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    exact::normalize(f, c);
  }
  return exact::Matrix<K>::from_columns(f, rows, std::move(out));
}

template <class K>
std::size_t KoszulEngine<K>::rank_of(int q, int h) const {
  if (q <= 0 || h < 0 || static_cast<std::size_t>(q) > v_dim()) return 0;
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = ranks_.find({q, h});
    if (it != ranks_.end()) return it->second;
  }
  const std::size_t r = exact::rank(differential(q, h));
  std::lock_guard<std::mutex> lock(mu_);
  ranks_.emplace(std::make_pair(q, h), r);
  return r;
}

template <class K>
void KoszulEngine<K>::precompute(const std::vector<std::pair<int, int>>& cells, int jobs) const {
  // build the tables serially so the workers only read them
  for (const auto& [q, h] : cells)
    if (q >= 1 && h >= 0) (void)ring_->table(1, h);
  const std::size_t workers = static_cast<std::size_t>(std::max(1, jobs));
  if (workers == 1 || cells.size() < 2) {
    for (const auto& [q, h] : cells) (void)rank_of(q, h);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  std::exception_ptr failure;
  std::mutex fail_mu;
  for (std::size_t w = 0; w < std::min(workers, cells.size()); ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < cells.size(); i = next++) {
        try {
          (void)rank_of(cells[i].first, cells[i].second);
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

template <class K>
std::size_t KoszulEngine<K>::middle_homology_dim(int p, int h) const {
  const std::size_t total = term_dim(p, h + 1);
  const std::size_t out = rank_of(p, h + 1), in = rank_of(p + 1, h);
  if (out + in > total) throw std::logic_error("Koszul ranks exceed term dimension");
  return total - out - in;
}

template <class K>
KoszulCell<K> koszul_cell(const KoszulEngine<K>& engine, int p, int h) {
  return KoszulCell<K>{p, h, engine.differential(p + 1, h), engine.differential(p, h + 1)};
}

std::vector<std::tuple<int, int, std::size_t>> BettiTable::nonzero() const {
  std::vector<std::tuple<int, int, std::size_t>> out;
  for (int p = 0; p <= p_max; ++p)
    for (int q = 0; q <= q_max; ++q)
      if (at(p, q) != 0) out.emplace_back(p, q, at(p, q));
  return out;
}

template <class K>
BettiTable betti_table(const KoszulEngine<K>& engine, int p_max, int q_max, int jobs) {
  if (p_max < 0 || q_max < 0) throw std::invalid_argument("negative Betti range");
  std::vector<std::pair<int, int>> cells;
  for (int p = 0; p <= p_max; ++p) {
    for (int q = 0; q <= q_max; ++q) {
      const int h = q - p - 1;
      cells.emplace_back(p, h + 1);
      cells.emplace_back(p + 1, h);
    }
  }
  std::sort(cells.begin(), cells.end());
  cells.erase(std::unique(cells.begin(), cells.end()), cells.end());
  // largest matrices first so the pool stays busy
  std::sort(cells.begin(), cells.end(), [&](const auto& a, const auto& b) {
    return engine.term_dim(a.first, a.second) > engine.term_dim(b.first, b.second);
  });
  engine.precompute(cells, jobs);

  BettiTable t;
  t.p_max = p_max;
  t.q_max = q_max;
  t.v_dim = engine.v_dim();
  for (int k = 0; k <= q_max; ++k) t.hilbert.push_back(engine.ring().dim(k));
  t.beta.assign(static_cast<std::size_t>(p_max) + 1, std::vector<std::size_t>(static_cast<std::size_t>(q_max) + 1, 0));
  for (int p = 0; p <= p_max; ++p)
    for (int q = 0; q <= q_max; ++q)
      t.beta[static_cast<std::size_t>(p)][static_cast<std::size_t>(q)] = engine.middle_homology_dim(p, q - p - 1);
  return t;
}

std::string to_string(VerdictState s) {
  switch (s) {
    case VerdictState::Holds: return "holds";
    case VerdictState::Fails: return "fails";
    case VerdictState::Inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

std::string NprVerdict::describe() const {
  std::ostringstream os;
  os << "N_" << p << "^" << r << ": " << to_string(state) << " on h in [" << h_lo << ", " << h_hi << "]";
  if (witness) os << "; witness p'=" << witness->first << " h=" << witness->second << " beta=" << witness_beta;
  if (!stable) os << "; window below stabilization";
  if (!reason.empty()) os << "; " << reason;
  return os.str();
}

template <class K>
NprVerdict check_Npr(const KoszulEngine<K>& engine, int p, int r, std::optional<int> h_max, bool override_char_guard,
                     int jobs) {
  if (p < 0 || r < 0) throw std::invalid_argument("N_p^r needs p, r >= 0");
  if (!override_char_guard) exact::check_syzygy_characteristic(engine.ring().field().characteristic(), p);
  const int q_stab = engine.ring().system().q_stab();
  const int hi = h_max.value_or(std::max(r + 1, q_stab + 1));
  if (hi < r + 1) throw std::invalid_argument("h_max must be at least r+1");
  if (hi + (p >= 1 ? 2 : 1) > engine.ring().cap()) throw ring::CapExceeded();

  NprVerdict v;
  v.p = p;
  v.r = r;
  v.h_lo = r + 1;
  v.h_hi = hi;
  v.stable = hi >= q_stab + 1;

  std::vector<std::pair<int, int>> cells;
  for (int pp = 0; pp <= p; ++pp)
    for (int h = r + 1; h <= hi; ++h) {
      cells.emplace_back(pp, h + 1);
      cells.emplace_back(pp + 1, h);
    }
  engine.precompute(cells, jobs);

  for (int pp = 0; pp <= p; ++pp) {
    for (int h = r + 1; h <= hi; ++h) {
      const auto b = engine.middle_homology_dim(pp, h);
      if (b != 0) {
        v.state = VerdictState::Fails;
        v.witness = std::make_pair(pp, h);
        v.witness_beta = b;
        return v;
      }
    }
  }
  v.state = VerdictState::Holds;
  return v;
}

template <class K>
std::pair<long long, long long> euler_characteristic(const KoszulEngine<K>& engine, int q) {
  long long terms = 0, betti = 0;
  const int n = static_cast<int>(engine.v_dim());
  for (int p = 0; p <= std::min(n, q); ++p) {
    const long long sign = (p % 2 == 0) ? 1 : -1;
    terms += sign * static_cast<long long>(engine.term_dim(p, q - p));
    betti += sign * static_cast<long long>(engine.middle_homology_dim(p, q - p - 1));
  }
  return {terms, betti};
}

#define SYZ_INSTANTIATE(K)                                                                                        \
  template class KoszulEngine<K>;                                                                                 \
  template KoszulCell<K> koszul_cell<K>(const KoszulEngine<K>&, int, int);                                        \
  template BettiTable betti_table<K>(const KoszulEngine<K>&, int, int, int);                                      \
  template NprVerdict check_Npr<K>(const KoszulEngine<K>&, int, int, std::optional<int>, bool, int);              \
  template std::pair<long long, long long> euler_characteristic<K>(const KoszulEngine<K>&, int);

SYZ_INSTANTIATE(exact::PrimeField)
SYZ_INSTANTIATE(exact::Rationals)

}  // namespace syz::koszul
