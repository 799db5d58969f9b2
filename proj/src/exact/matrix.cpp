#include "syzlab/exact/matrix.hpp"

#include <algorithm>

namespace syz::exact {

template <class K>
void normalize(const K& field, SparseVec<K>& v) {
  std::sort(v.begin(), v.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  std::size_t out = 0;
  for (std::size_t i = 0; i < v.size();) {
    auto idx = v[i].first;
    auto acc = v[i].second;
    std::size_t j = i + 1;
    for (; j < v.size() && v[j].first == idx; ++j) acc = field.add(acc, v[j].second);
    if (!field.is_zero(acc)) v[out++] = {idx, std::move(acc)};
    i = j;
  }
  v.resize(out);
}

template <class K>
Matrix<K>::Matrix(K field, std::size_t rows, std::size_t cols)
    : field_(std::move(field)), rows_(rows), cols_(cols), dense_(false), sparse_cols_(cols) {}

template <class K>
Matrix<K> Matrix<K>::from_columns(K field, std::size_t rows, std::vector<Column> columns) {
  Matrix m(field, rows, columns.size());
  for (auto& c : columns) {
    normalize(field, c);
    if (!c.empty() && c.back().first >= rows) throw std::out_of_range("column entry outside matrix");
  }
  m.sparse_cols_ = std::move(columns);
  m.choose_storage();
  return m;
}

template <class K>
Matrix<K> Matrix<K>::from_dense(K field, std::size_t rows, std::size_t cols, std::vector<value_type> row_major) {
  if (row_major.size() != rows * cols) throw std::invalid_argument("dense data size mismatch");
  Matrix m(field, rows, cols);
  m.sparse_cols_.clear();
  m.dense_ = true;
  m.dense_data_ = std::move(row_major);
  m.choose_storage();
  return m;
}

template <class K>
Matrix<K> Matrix<K>::from_ints(K field, std::initializer_list<std::initializer_list<long long>> rows) {
  const std::size_t r = rows.size();
  const std::size_t c = r == 0 ? 0 : rows.begin()->size();
  std::vector<value_type> data;
  data.reserve(r * c);
  for (const auto& row : rows) {
    if (row.size() != c) throw std::invalid_argument("ragged rows");
    for (long long v : row) data.push_back(field.from_int(v));
  }
  return from_dense(field, r, c, std::move(data));
}

template <class K>
Matrix<K> Matrix<K>::identity(K field, std::size_t n) {
  std::vector<Column> cols(n);
  for (std::size_t i = 0; i < n; ++i) cols[i].push_back({static_cast<std::uint32_t>(i), field.one()});
  return from_columns(field, n, std::move(cols));
}

template <class K>
void Matrix<K>::choose_storage() {
  const std::size_t cells = rows_ * cols_;
  const std::size_t count = nnz();
  const bool want_dense = cells > 0 && count * 10 >= cells;
  if (want_dense == dense_) return;
  if (want_dense) {
    dense_data_.assign(cells, field_.zero());
    for (std::size_t c = 0; c < cols_; ++c) {
      for (auto& [r, v] : sparse_cols_[c]) dense_data_[r * cols_ + c] = std::move(v);
    }
    sparse_cols_.clear();
    sparse_cols_.shrink_to_fit();
  } else {
    sparse_cols_.assign(cols_, {});
    for (std::size_t r = 0; r < rows_; ++r) {
      for (std::size_t c = 0; c < cols_; ++c) {
        auto& v = dense_data_[r * cols_ + c];
        if (!field_.is_zero(v)) sparse_cols_[c].push_back({static_cast<std::uint32_t>(r), std::move(v)});
      }
    }
    dense_data_.clear();
    dense_data_.shrink_to_fit();
  }
  dense_ = want_dense;
}

template <class K>
std::size_t Matrix<K>::nnz() const {
  std::size_t n = 0;
  if (dense_) {
    for (const auto& v : dense_data_) n += field_.is_zero(v) ? 0 : 1;
  } else {
    for (const auto& c : sparse_cols_) n += c.size();
  }
  return n;
}

template <class K>
typename Matrix<K>::value_type Matrix<K>::at(std::size_t r, std::size_t c) const {
  if (r >= rows_ || c >= cols_) throw std::out_of_range("matrix index");
  if (dense_) return dense_data_[r * cols_ + c];
  const auto& col = sparse_cols_[c];
  auto it = std::lower_bound(col.begin(), col.end(), r, [](const auto& e, std::size_t x) { return e.first < x; });
  if (it != col.end() && it->first == r) return it->second;
  return field_.zero();
}

template <class K>
typename Matrix<K>::Column Matrix<K>::column(std::size_t c) const {
  if (c >= cols_) throw std::out_of_range("matrix column");
  if (!dense_) return sparse_cols_[c];
  Column out;
  for (std::size_t r = 0; r < rows_; ++r) {
    const auto& v = dense_data_[r * cols_ + c];
    if (!field_.is_zero(v)) out.push_back({static_cast<std::uint32_t>(r), v});
  }
  return out;
}

template <class K>
std::vector<typename Matrix<K>::Column> Matrix<K>::columns() const {
  if (!dense_) return sparse_cols_;
  std::vector<Column> out(cols_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) {
      const auto& v = dense_data_[r * cols_ + c];
      if (!field_.is_zero(v)) out[c].push_back({static_cast<std::uint32_t>(r), v});
    }
  }
  return out;
}

template <class K>
Matrix<K> Matrix<K>::transpose() const {
  std::vector<Column> cols(rows_);
  const auto src = columns();
  for (std::size_t c = 0; c < cols_; ++c) {
    for (const auto& [r, v] : src[c]) cols[r].push_back({static_cast<std::uint32_t>(c), v});
  }
  return from_columns(field_, cols_, std::move(cols));
}

template <class K>
Matrix<K> Matrix<K>::select_columns(std::span<const std::size_t> which) const {
  std::vector<Column> cols;
  cols.reserve(which.size());
  for (std::size_t c : which) cols.push_back(column(c));
  return from_columns(field_, rows_, std::move(cols));
}

template <class K>
Matrix<K> Matrix<K>::select_rows(std::span<const std::size_t> which) const {
  std::vector<std::int64_t> map(rows_, -1);
  for (std::size_t i = 0; i < which.size(); ++i) {
    if (which[i] >= rows_) throw std::out_of_range("row selection");
    map[which[i]] = static_cast<std::int64_t>(i);
  }
  std::vector<Column> cols(cols_);
  const auto src = columns();
  for (std::size_t c = 0; c < cols_; ++c) {
    for (const auto& [r, v] : src[c]) {
      if (map[r] >= 0) cols[c].push_back({static_cast<std::uint32_t>(map[r]), v});
    }
  }
  return from_columns(field_, which.size(), std::move(cols));
}

template <class K>
Matrix<K> Matrix<K>::scaled(const value_type& s) const {
  auto cols = columns();
  for (auto& col : cols) {
    for (auto& e : col) e.second = field_.mul(e.second, s);
  }
  return from_columns(field_, rows_, std::move(cols));
}

template <class K>
Matrix<K> Matrix<K>::multiply(const Matrix& b) const {
  if (field_ != b.field_) throw FieldMismatch();
  if (cols_ != b.rows_) throw std::invalid_argument("matrix product dimension mismatch");
  const auto a_cols = columns();
  const auto b_cols = b.columns();
  std::vector<value_type> acc(rows_, field_.zero());
  std::vector<char> touched(rows_, 0);
  std::vector<std::uint32_t> support;
  std::vector<Column> out(b.cols_);
  for (std::size_t j = 0; j < b.cols_; ++j) {
    support.clear();
    for (const auto& [k, bv] : b_cols[j]) {
      for (const auto& [i, av] : a_cols[k]) {
        if (!touched[i]) {
          touched[i] = 1;
          support.push_back(i);
        }
        acc[i] = field_.add(acc[i], field_.mul(av, bv));
      }
    }
    std::sort(support.begin(), support.end());
    for (auto i : support) {
      if (!field_.is_zero(acc[i])) out[j].push_back({i, acc[i]});
      acc[i] = field_.zero();
      touched[i] = 0;
    }
  }
  return from_columns(field_, rows_, std::move(out));
}

template <class K>
Matrix<K> Matrix<K>::combine(const Matrix& b, bool subtract) const {
  if (field_ != b.field_) throw FieldMismatch();
  if (rows_ != b.rows_ || cols_ != b.cols_) throw std::invalid_argument("matrix sum dimension mismatch");
  auto cols = columns();
  const auto other = b.columns();
  for (std::size_t c = 0; c < cols_; ++c) {
    for (const auto& [r, v] : other[c]) cols[c].push_back({r, subtract ? field_.neg(v) : v});
  }
  return from_columns(field_, rows_, std::move(cols));
}

template <class K>
bool Matrix<K>::equals(const Matrix& b) const {
  if (field_ != b.field_) throw FieldMismatch();
  if (rows_ != b.rows_ || cols_ != b.cols_) return false;
  const auto x = columns();
  const auto y = b.columns();
  for (std::size_t c = 0; c < cols_; ++c) {
    if (x[c].size() != y[c].size()) return false;
    for (std::size_t i = 0; i < x[c].size(); ++i) {
      if (x[c][i].first != y[c][i].first || !field_.equal(x[c][i].second, y[c][i].second)) return false;
    }
  }
  return true;
}

template void normalize<PrimeField>(const PrimeField&, SparseVec<PrimeField>&);
template void normalize<Rationals>(const Rationals&, SparseVec<Rationals>&);
template class Matrix<PrimeField>;
template class Matrix<Rationals>;

}  // namespace syz::exact
