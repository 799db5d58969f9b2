#include "syzlab/exact/linalg.hpp"

#include <algorithm>
#include <numeric>
#include <type_traits>

namespace syz::exact {
namespace {

template <class K>
using Value = typename K::value_type;

// row_dst[k] -= factor * row_src[k] for k in [0, n)
template <class K>
void sub_multiple(const K& field, Value<K>* dst, const Value<K>* src, std::size_t n, const Value<K>& factor) {
  if constexpr (std::is_same_v<K, PrimeField>) {
    const std::uint64_t p = field.characteristic();
    const std::uint64_t f = p - factor;
    for (std::size_t k = 0; k < n; ++k) {
      if (src[k] != 0) dst[k] = static_cast<std::uint32_t>((dst[k] + f * src[k]) % p);
    }
  } else {
    for (std::size_t k = 0; k < n; ++k) {
      if (!field.is_zero(src[k])) dst[k] = field.sub(dst[k], field.mul(factor, src[k]));
    }
  }
}

// Gaussian elimination on a row-major rows x width array. Pivots are searched
// in columns [0, pivot_limit) in increasing order, first nonzero row wins.
// With `reduced` the pivots are scaled to 1 and cleared above as well.
template <class K>
std::vector<std::size_t> eliminate(const K& field, std::vector<Value<K>>& a, std::size_t rows, std::size_t width,
                                   std::size_t pivot_limit, bool reduced) {
  std::vector<std::size_t> pivots;
  std::size_t prow = 0;
  for (std::size_t col = 0; col < pivot_limit && prow < rows; ++col) {
    std::size_t sel = rows;
    for (std::size_t i = prow; i < rows; ++i) {
      if (!field.is_zero(a[i * width + col])) {
        sel = i;
        break;
      }
    }
    if (sel == rows) continue;
    if (sel != prow) {
      std::swap_ranges(a.begin() + static_cast<std::ptrdiff_t>(sel * width),
                       a.begin() + static_cast<std::ptrdiff_t>((sel + 1) * width),
                       a.begin() + static_cast<std::ptrdiff_t>(prow * width));
    }
    Value<K>* prow_ptr = a.data() + prow * width;
    if (reduced) {
      const auto inv = field.inv(prow_ptr[col]);
      for (std::size_t k = col; k < width; ++k) prow_ptr[k] = field.mul(prow_ptr[k], inv);
    }
    const auto pivot_inv = reduced ? field.one() : field.inv(prow_ptr[col]);
    for (std::size_t i = reduced ? 0 : prow + 1; i < rows; ++i) {
      if (i == prow) continue;
      Value<K>* row = a.data() + i * width;
      if (field.is_zero(row[col])) continue;
      const auto factor = field.mul(row[col], pivot_inv);
      sub_multiple(field, row + col, prow_ptr + col, width - col, factor);
    }
    pivots.push_back(col);
    ++prow;
  }
  return pivots;
}

struct Block {
  std::vector<std::uint32_t> rows;
  std::vector<std::uint32_t> cols;
};

std::uint32_t find_root(std::vector<std::uint32_t>& parent, std::uint32_t x) {
  while (parent[x] != x) {
    parent[x] = parent[parent[x]];
    x = parent[x];
  }
  return x;
}

// Connected components of the bipartite row/column nonzero graph. Zero
// columns and zero rows belong to no block.
template <class K>
std::vector<Block> split_blocks(std::size_t rows, const std::vector<SparseVec<K>>& cols) {
  std::vector<std::uint32_t> parent(rows);
  std::iota(parent.begin(), parent.end(), 0u);
  for (const auto& col : cols) {
    if (col.empty()) continue;
    const auto first = find_root(parent, col.front().first);
    for (const auto& e : col) {
      const auto r = find_root(parent, e.first);
      if (r != first) parent[r] = first;
    }
  }
  std::vector<std::int64_t> block_of_root(rows, -1);
  std::vector<Block> blocks;
  for (std::size_t c = 0; c < cols.size(); ++c) {
    if (cols[c].empty()) continue;
    const auto root = find_root(parent, cols[c].front().first);
    if (block_of_root[root] < 0) {
      block_of_root[root] = static_cast<std::int64_t>(blocks.size());
      blocks.emplace_back();
    }
    blocks[static_cast<std::size_t>(block_of_root[root])].cols.push_back(static_cast<std::uint32_t>(c));
  }
  std::vector<char> used(rows, 0);
  for (const auto& col : cols) {
    for (const auto& e : col) used[e.first] = 1;
  }
  for (std::size_t r = 0; r < rows; ++r) {
    if (!used[r]) continue;
    const auto root = find_root(parent, static_cast<std::uint32_t>(r));
    blocks[static_cast<std::size_t>(block_of_root[root])].rows.push_back(static_cast<std::uint32_t>(r));
  }
  return blocks;
}

template <class K>
std::vector<Value<K>> dense_block(const K& field, const Block& b, const std::vector<SparseVec<K>>& cols,
                                  std::vector<std::uint32_t>& local_row) {
  for (std::size_t i = 0; i < b.rows.size(); ++i) local_row[b.rows[i]] = static_cast<std::uint32_t>(i);
  const std::size_t width = b.cols.size();
  std::vector<Value<K>> a(b.rows.size() * width, field.zero());
  for (std::size_t j = 0; j < width; ++j) {
    for (const auto& [r, v] : cols[b.cols[j]]) a[local_row[r] * width + j] = v;
  }
  return a;
}

}  // namespace

template <class K>
std::size_t rank(const Matrix<K>& m) {
  const auto cols = m.columns();
  const auto blocks = split_blocks<K>(m.rows(), cols);
  std::vector<std::uint32_t> local_row(m.rows(), 0);
  std::size_t total = 0;
  for (const auto& b : blocks) {
    if (b.cols.size() == 1 || b.rows.size() == 1) {
      total += 1;
      continue;
    }
    auto a = dense_block(m.field(), b, cols, local_row);
    total += eliminate(m.field(), a, b.rows.size(), b.cols.size(), b.cols.size(), false).size();
  }
  return total;
}

template <class K>
Matrix<K> kernel_basis(const Matrix<K>& m) {
  const K& field = m.field();
  const auto cols = m.columns();
  const auto blocks = split_blocks<K>(m.rows(), cols);
  std::vector<std::uint32_t> local_row(m.rows(), 0);
  std::vector<std::pair<std::uint32_t, SparseVec<K>>> vectors;
  for (std::size_t c = 0; c < cols.size(); ++c) {
    if (cols[c].empty()) vectors.push_back({static_cast<std::uint32_t>(c), {{static_cast<std::uint32_t>(c), field.one()}}});
  }
  for (const auto& b : blocks) {
    const std::size_t width = b.cols.size();
    auto a = dense_block(field, b, cols, local_row);
    const auto pivots = eliminate(field, a, b.rows.size(), width, width, true);
    std::vector<char> is_pivot(width, 0);
    for (auto pc : pivots) is_pivot[pc] = 1;
    for (std::size_t f = 0; f < width; ++f) {
      if (is_pivot[f]) continue;
      SparseVec<K> v;
      v.push_back({b.cols[f], field.one()});
      for (std::size_t i = 0; i < pivots.size(); ++i) {
        const auto& entry = a[i * width + f];
        if (!field.is_zero(entry)) v.push_back({b.cols[pivots[i]], field.neg(entry)});
      }
      vectors.push_back({b.cols[f], std::move(v)});
    }
  }
  std::sort(vectors.begin(), vectors.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  std::vector<SparseVec<K>> out;
  out.reserve(vectors.size());
  for (auto& v : vectors) out.push_back(std::move(v.second));
  return Matrix<K>::from_columns(field, m.cols(), std::move(out));
}

template <class K>
Matrix<K> kronecker(const Matrix<K>& a, const Matrix<K>& b) {
  if (a.field() != b.field()) throw FieldMismatch();
  const K& field = a.field();
  const auto ac = a.columns();
  const auto bc = b.columns();
  std::vector<SparseVec<K>> out;
  out.reserve(a.cols() * b.cols());
  for (std::size_t ja = 0; ja < a.cols(); ++ja) {
    for (std::size_t jb = 0; jb < b.cols(); ++jb) {
      SparseVec<K> col;
      col.reserve(ac[ja].size() * bc[jb].size());
      for (const auto& [ia, va] : ac[ja]) {
        for (const auto& [ib, vb] : bc[jb]) {
          col.push_back({static_cast<std::uint32_t>(ia * b.rows() + ib), field.mul(va, vb)});
        }
      }
      out.push_back(std::move(col));
    }
  }
  return Matrix<K>::from_columns(field, a.rows() * b.rows(), std::move(out));
}

template <class K>
bool in_column_span(const Matrix<K>& a, const SparseVec<K>& v) {
  auto cols = a.columns();
  cols.push_back(v);
  const auto extended = Matrix<K>::from_columns(a.field(), a.rows(), std::move(cols));
  return rank(extended) == rank(a);
}

template <class K>
LinearSolver<K>::LinearSolver(const Matrix<K>& a) : field_(a.field()), rows_(a.rows()), cols_(a.cols()) {
  const std::size_t width = cols_ + rows_;
  std::vector<value_type> aug(rows_ * width, field_.zero());
  const auto cols = a.columns();
  for (std::size_t j = 0; j < cols_; ++j) {
    for (const auto& [r, v] : cols[j]) aug[r * width + j] = v;
  }
  for (std::size_t i = 0; i < rows_; ++i) aug[i * width + cols_ + i] = field_.one();
  pivot_cols_ = eliminate(field_, aug, rows_, width, cols_, true);
  transform_.assign(rows_ * rows_, field_.zero());
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t k = 0; k < rows_; ++k) transform_[i * rows_ + k] = aug[i * width + cols_ + k];
  }
}

template <class K>
std::optional<std::vector<typename K::value_type>> LinearSolver<K>::solve(const SparseVec<K>& b) const {
  std::vector<value_type> y(rows_, field_.zero());
  for (std::size_t i = 0; i < rows_; ++i) {
    value_type acc = field_.zero();
    for (const auto& [k, v] : b) {
      if (k >= rows_) throw std::out_of_range("right-hand side longer than system");
      acc = field_.add(acc, field_.mul(transform_[i * rows_ + k], v));
    }
    y[i] = acc;
  }
  for (std::size_t i = pivot_cols_.size(); i < rows_; ++i) {
    if (!field_.is_zero(y[i])) return std::nullopt;
  }
  std::vector<value_type> x(cols_, field_.zero());
  for (std::size_t i = 0; i < pivot_cols_.size(); ++i) x[pivot_cols_[i]] = y[i];
  return x;
}

template std::size_t rank<PrimeField>(const Matrix<PrimeField>&);
template std::size_t rank<Rationals>(const Matrix<Rationals>&);
template Matrix<PrimeField> kernel_basis<PrimeField>(const Matrix<PrimeField>&);
template Matrix<Rationals> kernel_basis<Rationals>(const Matrix<Rationals>&);
template Matrix<PrimeField> kronecker<PrimeField>(const Matrix<PrimeField>&, const Matrix<PrimeField>&);
template Matrix<Rationals> kronecker<Rationals>(const Matrix<Rationals>&, const Matrix<Rationals>&);
template bool in_column_span<PrimeField>(const Matrix<PrimeField>&, const SparseVec<PrimeField>&);
template bool in_column_span<Rationals>(const Matrix<Rationals>&, const SparseVec<Rationals>&);
template class LinearSolver<PrimeField>;
template class LinearSolver<Rationals>;

}  // namespace syz::exact
