#include "syzlab/exact/wedge.hpp"

#include <stdexcept>

namespace syz::exact {

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  if (k > n - k) k = n - k;
  std::uint64_t r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

WedgeIndex::WedgeIndex(int n, int p) : n_(n), p_(p) {
  if (n < 0 || p < 0) throw std::invalid_argument("negative wedge dimension");
  count_ = binomial(static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(p));
  if (p > n || p == 0) return;  // p == 0: one empty tuple, stored implicitly
  std::vector<int> t(static_cast<std::size_t>(p));
  for (int i = 0; i < p; ++i) t[static_cast<std::size_t>(i)] = i;
  while (true) {
    tuples_.insert(tuples_.end(), t.begin(), t.end());
    int i = p - 1;
    while (i >= 0 && t[static_cast<std::size_t>(i)] == n - p + i) --i;
    if (i < 0) break;
    ++t[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < p; ++j) t[static_cast<std::size_t>(j)] = t[static_cast<std::size_t>(j - 1)] + 1;
  }
}

std::size_t WedgeIndex::index_of(std::span<const int> t) const {
  if (static_cast<int>(t.size()) != p_) throw std::invalid_argument("wedge tuple length");
  std::size_t r = 0;
  int prev = -1;
  for (int i = 0; i < p_; ++i) {
    const int c = t[static_cast<std::size_t>(i)];
    if (c <= prev || c >= n_) throw std::invalid_argument("wedge tuple not strictly increasing");
    for (int v = prev + 1; v < c; ++v) r += binomial(static_cast<std::uint64_t>(n_ - v - 1), static_cast<std::uint64_t>(p_ - i - 1));
    prev = c;
  }
  return r;
}

namespace {

template <class K>
typename K::value_type determinant(const K& field, std::vector<typename K::value_type> a, std::size_t n) {
  auto det = field.one();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t sel = n;
    for (std::size_t i = col; i < n; ++i) {
      if (!field.is_zero(a[i * n + col])) {
        sel = i;
        break;
      }
    }
    if (sel == n) return field.zero();
    if (sel != col) {
      for (std::size_t k = 0; k < n; ++k) std::swap(a[sel * n + k], a[col * n + k]);
      det = field.neg(det);
    }
    det = field.mul(det, a[col * n + col]);
    const auto inv = field.inv(a[col * n + col]);
    for (std::size_t i = col + 1; i < n; ++i) {
      if (field.is_zero(a[i * n + col])) continue;
      const auto factor = field.mul(a[i * n + col], inv);
      for (std::size_t k = col; k < n; ++k) a[i * n + k] = field.sub(a[i * n + k], field.mul(factor, a[col * n + k]));
    }
  }
  return det;
}

}  // namespace

template <class K>
Matrix<K> wedge_map(int p, const Matrix<K>& f) {
  const K& field = f.field();
  const int n = static_cast<int>(f.cols());
  const int m = static_cast<int>(f.rows());
  if (p < 0) throw std::invalid_argument("negative exterior degree");
  const std::size_t src_dim = binomial(static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(p));
  const std::size_t dst_dim = binomial(static_cast<std::uint64_t>(m), static_cast<std::uint64_t>(p));
  if (p == 0) return Matrix<K>::identity(field, 1);
  WedgeIndex src(n, p);
  WedgeIndex dst(m, p);
  const auto sp = static_cast<std::size_t>(p);
  std::vector<typename K::value_type> minor(sp * sp);
  std::vector<SparseVec<K>> cols(src_dim);
  for (std::size_t I = 0; I < src_dim; ++I) {
    const auto ti = src.tuple(I);
    for (std::size_t J = 0; J < dst_dim; ++J) {
      const auto tj = dst.tuple(J);
      for (std::size_t r = 0; r < sp; ++r) {
        for (std::size_t c = 0; c < sp; ++c) {
          minor[r * sp + c] = f.at(static_cast<std::size_t>(tj[r]), static_cast<std::size_t>(ti[c]));
        }
      }
      auto d = determinant(field, minor, sp);
      if (!field.is_zero(d)) cols[I].push_back({static_cast<std::uint32_t>(J), std::move(d)});
    }
  }
  return Matrix<K>::from_columns(field, dst_dim, std::move(cols));
}

template Matrix<PrimeField> wedge_map<PrimeField>(int, const Matrix<PrimeField>&);
template Matrix<Rationals> wedge_map<Rationals>(int, const Matrix<Rationals>&);

}  // namespace syz::exact
