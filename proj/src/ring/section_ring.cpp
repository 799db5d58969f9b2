#include "syzlab/ring/section_ring.hpp"

#include <algorithm>

#include "syzlab/exact/linalg.hpp"
#include "syzlab/exact/wedge.hpp"

namespace syz::ring {

std::uint64_t multichoose(std::uint64_t n, std::uint64_t k) {
  if (k == 0) return 1;
  if (n == 0) return 0;
  return exact::binomial(n + k - 1, k);
}

template <class K>
LinearSystem<K>::LinearSystem(av::AbelianProduct<K> x, av::ProductBundle<K> base, SystemKind kind)
    : x_(std::move(x)), base_(std::move(base)), kind_(kind) {
  if (base_.divisors().size() != x_.g()) throw std::invalid_argument("bundle factor count differs from g");
  for (int d : base_.degrees()) {
    if (d < 1) throw std::invalid_argument("base bundle must have positive degree on every factor");
  }
  if (kind_ == SystemKind::Kummer && !base_.power(2).totally_symmetric(x_))
    throw std::invalid_argument("Kummer system needs a symmetric base bundle");
}

template <class K>
av::ProductSectionSpace<K> LinearSystem<K>::slice(int k) const {
  if (k < 0) throw std::invalid_argument("negative degree");
  if (kind_ == SystemKind::Ambient) return av::sections(x_, base_.power(k));
  if (k == 0) return av::sections(x_, base_.power(0));
  return av::plus_space(x_, base_.power(2 * k));
}

template <class K>
std::size_t LinearSystem<K>::expected_dimension(int k) const {
  if (k < 0) return 0;
  if (k == 0) return 1;
  std::size_t prod = 1;
  const std::size_t scale = kind_ == SystemKind::Ambient ? static_cast<std::size_t>(k) : 2 * static_cast<std::size_t>(k);
  for (int d : base_.degrees()) prod *= scale * static_cast<std::size_t>(d);
  if (kind_ == SystemKind::Ambient) return prod;
  return prod / 2 + (std::size_t{1} << (x_.g() - 1));
}

template <class K>
int LinearSystem<K>::q_stab() const {
  // Hilbert polynomial at 0: 0 (ambient) or 2^{g-1} (Kummer); dim R_0 = 1.
  if (kind_ == SystemKind::Kummer && x_.g() == 1) return 0;
  return 1;
}

template <class K>
SectionRing<K>::SectionRing(LinearSystem<K> system, int cap) : system_(std::move(system)), cap_(cap) {
  if (cap_ < 1) throw std::invalid_argument("degree cap must be at least 1");
}

template <class K>
void SectionRing<K>::check_degree(int k) const {
  if (k > cap_) throw CapExceeded();
}

template <class K>
const av::ProductSectionSpace<K>& SectionRing<K>::slice(int k) const {
  check_degree(k);
  if (k < 0) throw std::invalid_argument("negative degree");
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = slices_.find(k);
    if (it != slices_.end()) return *it->second;
  }
  auto s = std::make_shared<const av::ProductSectionSpace<K>>(system_.slice(k));
  std::lock_guard<std::mutex> lock(mu_);
  return *slices_.emplace(k, std::move(s)).first->second;
}

template <class K>
std::size_t SectionRing<K>::dim(int k) const {
  if (k < 0) return 0;
  return slice(k).dimension();
}

template <class K>
const av::MultTable<K>& SectionRing<K>::table(int a, int b) const {
  check_degree(a + b);
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = tables_.find({a, b});
    if (it != tables_.end()) return *it->second;
  }
  auto t = std::make_shared<const av::MultTable<K>>(slice(a), slice(b), slice(a + b));
  std::lock_guard<std::mutex> lock(mu_);
  return *tables_.emplace(std::pair{a, b}, std::move(t)).first->second;
}

template <class K>
exact::SparseVec<K> SectionRing<K>::multiply_by_v(std::size_t i, int k, const exact::SparseVec<K>& s) const {
  const auto& t = table(1, k);
  if (!change_) return t.apply(i, s);
  exact::SparseVec<K> acc;
  const K& f = field();
  for (const auto& [r, c] : (*change_)[i]) {
    for (auto [idx, v] : t.apply(r, s)) acc.push_back({idx, f.mul(c, v)});
  }
  exact::normalize(f, acc);
  return acc;
}

template <class K>
exact::SparseVec<K> SectionRing<K>::v(std::size_t i) const {
  if (change_) return (*change_)[i];
  return {{static_cast<std::uint32_t>(i), field().one()}};
}

template <class K>
void SectionRing<K>::set_degree_one_basis(const exact::Matrix<K>& change) {
  const std::size_t n = v_dim();
  if (change.rows() != n || change.cols() != n || exact::rank(change) != n)
    throw std::invalid_argument("degree-one basis change must be invertible of size dim V");
  change_ = change.columns();
}

MultisetIndex::MultisetIndex(std::size_t n, int k) : n_(n), k_(k), count_(multichoose(n, static_cast<std::uint64_t>(k))) {
  if (k < 0) throw std::invalid_argument("negative multiset size");
}

std::vector<int> MultisetIndex::multiset(std::size_t i) const {
  std::vector<int> m(static_cast<std::size_t>(k_));
  int lo = 0;
  for (int t = 0; t < k_; ++t) {
    int v = lo;
    while (true) {
      const auto block = multichoose(n_ - static_cast<std::size_t>(v), static_cast<std::uint64_t>(k_ - t - 1));
      if (i < block) break;
      i -= block;
      ++v;
    }
    m[static_cast<std::size_t>(t)] = v;
    lo = v;
  }
  return m;
}

std::size_t MultisetIndex::index_of(const std::vector<int>& sorted) const {
  std::size_t r = 0;
  int lo = 0;
  for (int t = 0; t < k_; ++t) {
    const int c = sorted[static_cast<std::size_t>(t)];
    for (int v = lo; v < c; ++v) r += multichoose(n_ - static_cast<std::size_t>(v), static_cast<std::uint64_t>(k_ - t - 1));
    lo = c;
  }
  return r;
}

namespace {

// All multisets of one size, flattened, in lexicographic order.
std::vector<int> enumerate_multisets(std::size_t n, int k) {
  std::vector<int> out;
  if (k == 0) return out;
  if (n == 0) return out;
  std::vector<int> m(static_cast<std::size_t>(k), 0);
  while (true) {
    out.insert(out.end(), m.begin(), m.end());
    int t = k - 1;
    while (t >= 0 && m[static_cast<std::size_t>(t)] == static_cast<int>(n) - 1) --t;
    if (t < 0) break;
    const int v = m[static_cast<std::size_t>(t)] + 1;
    for (int s = t; s < k; ++s) m[static_cast<std::size_t>(s)] = v;
  }
  return out;
}

template <class K>
std::vector<exact::SparseVec<K>> left_linear_images(const SectionRing<K>& ring, int k) {
  const std::size_t n = ring.v_dim();
  std::vector<exact::SparseVec<K>> level;
  if (k == 0) return {{{0u, ring.field().one()}}};
  for (std::size_t i = 0; i < n; ++i) level.push_back(ring.v(i));
  for (int j = 2; j <= k; ++j) {
    const MultisetIndex lower(n, j - 1);
    const auto flat = enumerate_multisets(n, j);
    std::vector<exact::SparseVec<K>> next;
    next.reserve(flat.size() / static_cast<std::size_t>(j));
    std::vector<int> rest(static_cast<std::size_t>(j - 1));
    for (std::size_t off = 0; off < flat.size(); off += static_cast<std::size_t>(j)) {
      std::copy(flat.begin() + static_cast<std::ptrdiff_t>(off + 1), flat.begin() + static_cast<std::ptrdiff_t>(off + static_cast<std::size_t>(j)), rest.begin());
      const auto& img = level[lower.index_of(rest)];
      next.push_back(ring.multiply_by_v(static_cast<std::size_t>(flat[off]), j - 1, img));
    }
    level = std::move(next);
  }
  return level;
}

}  // namespace

template <class K>
SymMap<K> sym_map(const SectionRing<K>& ring, int k, Bracketing bracketing) {
  if (k < 0) throw std::invalid_argument("negative degree");
  const std::size_t target = ring.dim(k);
  if (bracketing == Bracketing::LeftLinear || k <= 1) {
    return {k, exact::Matrix<K>::from_columns(ring.field(), target, left_linear_images(ring, k))};
  }
  const int a = k / 2, b = k - a;
  const auto ia = left_linear_images(ring, a);
  const auto ib = left_linear_images(ring, b);
  const auto& t = ring.table(a, b);
  const std::size_t n = ring.v_dim();
  const MultisetIndex ma(n, a), mb(n, b);
  const auto flat = enumerate_multisets(n, k);
  const K& f = ring.field();
  std::vector<exact::SparseVec<K>> cols;
  for (std::size_t off = 0; off < flat.size(); off += static_cast<std::size_t>(k)) {
    const std::vector<int> left(flat.begin() + static_cast<std::ptrdiff_t>(off), flat.begin() + static_cast<std::ptrdiff_t>(off + static_cast<std::size_t>(a)));
    const std::vector<int> right(flat.begin() + static_cast<std::ptrdiff_t>(off + static_cast<std::size_t>(a)), flat.begin() + static_cast<std::ptrdiff_t>(off + static_cast<std::size_t>(k)));
    exact::SparseVec<K> acc;
    for (const auto& [s, c] : ia[ma.index_of(left)]) {
      for (const auto& [idx, v] : t.apply(s, ib[mb.index_of(right)])) acc.push_back({idx, f.mul(c, v)});
    }
    exact::normalize(f, acc);
    cols.push_back(std::move(acc));
  }
  return {k, exact::Matrix<K>::from_columns(f, target, std::move(cols))};
}

template <class K>
IdealPiece<K> ideal_piece(const SectionRing<K>& ring, int k) {
  return {k, exact::kernel_basis(sym_map(ring, k).matrix)};
}

template <class K>
std::vector<std::size_t> hilbert_values(const SectionRing<K>& ring, int k_max) {
  if (k_max < 1) throw std::invalid_argument("k_max must be at least 1");
  std::vector<std::size_t> out;
  for (int k = 1; k <= k_max; ++k) out.push_back(ring.dim(k));
  return out;
}

template <class K>
bool h_normality(const SectionRing<K>& ring, int k) {
  return exact::rank(sym_map(ring, k).matrix) == ring.dim(k);
}

template <class K>
std::size_t ideal_multiplication_rank(const SectionRing<K>& ring, const IdealPiece<K>& lower, int k) {
  if (lower.k != k - 1) throw std::invalid_argument("ideal piece degree mismatch");
  const std::size_t n = ring.v_dim();
  if (lower.dimension() == 0) return 0;
  const MultisetIndex lo(n, k - 1), hi(n, k);
  const K& f = ring.field();
  std::vector<std::vector<int>> lower_sets(lo.size());
  const auto flat = enumerate_multisets(n, k - 1);
  for (std::size_t i = 0; i < lo.size(); ++i) {
    lower_sets[i].assign(flat.begin() + static_cast<std::ptrdiff_t>(i * static_cast<std::size_t>(k - 1)),
                         flat.begin() + static_cast<std::ptrdiff_t>((i + 1) * static_cast<std::size_t>(k - 1)));
  }
  const auto qs = lower.basis.columns();
  std::vector<exact::SparseVec<K>> cols;
  cols.reserve(n * qs.size());
  std::vector<int> m;
  for (std::size_t i = 0; i < n; ++i) {
    for (const auto& q : qs) {
      exact::SparseVec<K> col;
      for (const auto& [idx, c] : q) {
        m = lower_sets[idx];
        m.insert(std::upper_bound(m.begin(), m.end(), static_cast<int>(i)), static_cast<int>(i));
        col.push_back({static_cast<std::uint32_t>(hi.index_of(m)), c});
      }
      exact::normalize(f, col);
      cols.push_back(std::move(col));
    }
  }
  return exact::rank(exact::Matrix<K>::from_columns(f, hi.size(), std::move(cols)));
}

template <class K>
std::map<int, std::size_t> generator_degrees(const SectionRing<K>& ring, int k_max) {
  std::map<int, std::size_t> out;
  auto prev = ideal_piece(ring, 1);
  for (int k = 2; k <= k_max; ++k) {
    auto cur = ideal_piece(ring, k);
    const auto count = cur.dimension() - ideal_multiplication_rank(ring, prev, k);
    if (count > 0) out[k] = count;
    prev = std::move(cur);
  }
  return out;
}

#define SYZ_INSTANTIATE(K)                                                                        \
  template class LinearSystem<K>;                                                                 \
  template class SectionRing<K>;                                                                  \
  template SymMap<K> sym_map<K>(const SectionRing<K>&, int, Bracketing);                          \
  template IdealPiece<K> ideal_piece<K>(const SectionRing<K>&, int);                              \
  template std::vector<std::size_t> hilbert_values<K>(const SectionRing<K>&, int);                \
  template bool h_normality<K>(const SectionRing<K>&, int);                                       \
  template std::size_t ideal_multiplication_rank<K>(const SectionRing<K>&, const IdealPiece<K>&, int); \
  template std::map<int, std::size_t> generator_degrees<K>(const SectionRing<K>&, int);

SYZ_INSTANTIATE(exact::PrimeField)
SYZ_INSTANTIATE(exact::Rationals)

}  // namespace syz::ring
