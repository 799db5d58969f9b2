#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <utility>
#include <vector>

#include "syzlab/exact/field.hpp"

namespace syz::exact {

/// Sparse vector: (index, value) pairs sorted by index, no explicit zeros.
template <class K>
using SparseVec = std::vector<std::pair<std::uint32_t, typename K::value_type>>;

/// Sorts, merges duplicate indices and drops zeros.
template <class K>
void normalize(const K& field, SparseVec<K>& v);

/// Immutable matrix over a field. Storage is sparse (compressed columns) when
/// the density is below 10% and dense (row-major) otherwise; the choice never
/// changes any computed result.
template <class K>
class Matrix {
 public:
  using value_type = typename K::value_type;
  using Column = SparseVec<K>;

  Matrix(K field, std::size_t rows, std::size_t cols);

  static Matrix from_columns(K field, std::size_t rows, std::vector<Column> columns);
  static Matrix from_dense(K field, std::size_t rows, std::size_t cols, std::vector<value_type> row_major);
  static Matrix from_ints(K field, std::initializer_list<std::initializer_list<long long>> rows);
  static Matrix identity(K field, std::size_t n);

  const K& field() const noexcept { return field_; }
  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_dense() const noexcept { return dense_; }
  std::size_t nnz() const;
  bool is_zero() const { return nnz() == 0; }

  value_type at(std::size_t r, std::size_t c) const;
  Column column(std::size_t c) const;
  std::vector<Column> columns() const;

  Matrix transpose() const;
  Matrix select_columns(std::span<const std::size_t> which) const;
  Matrix select_rows(std::span<const std::size_t> which) const;
  Matrix scaled(const value_type& s) const;

  friend Matrix operator*(const Matrix& a, const Matrix& b) { return a.multiply(b); }
  friend Matrix operator+(const Matrix& a, const Matrix& b) { return a.combine(b, false); }
  friend Matrix operator-(const Matrix& a, const Matrix& b) { return a.combine(b, true); }
  friend bool operator==(const Matrix& a, const Matrix& b) { return a.equals(b); }
  friend bool operator!=(const Matrix& a, const Matrix& b) { return !a.equals(b); }

 private:
  Matrix multiply(const Matrix& b) const;
  Matrix combine(const Matrix& b, bool subtract) const;
  bool equals(const Matrix& b) const;
  void choose_storage();

  K field_;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  bool dense_ = false;
  std::vector<value_type> dense_data_;  // row-major, used when dense_
  std::vector<Column> sparse_cols_;     // used when !dense_
};

using FpMatrix = Matrix<PrimeField>;
using QMatrix = Matrix<Rationals>;

extern template class Matrix<PrimeField>;
extern template class Matrix<Rationals>;

}  // namespace syz::exact
