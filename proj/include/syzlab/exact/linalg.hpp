#pragma once

#include <optional>
#include <vector>

#include "syzlab/exact/matrix.hpp"

namespace syz::exact {

/// Exact rank. Independent row/column blocks are found first (connected
/// components of the nonzero pattern) and eliminated separately.
template <class K>
std::size_t rank(const Matrix<K>& m);

/// Columns spanning ker(m), in reduced-echelon convention: one vector per
/// free column f (in increasing order), with a 1 at f, zeros at the other free
/// columns and the negated reduced entries at pivot columns.
template <class K>
Matrix<K> kernel_basis(const Matrix<K>& m);

/// Standard Kronecker product; row index i_a * rows(b) + i_b.
template <class K>
Matrix<K> kronecker(const Matrix<K>& a, const Matrix<K>& b);

/// Rank of the horizontal concatenation [a | b] minus rank(a) == 0.
template <class K>
bool in_column_span(const Matrix<K>& a, const SparseVec<K>& v);

/// Repeated solves of A x = b for a fixed A. Free variables are set to zero.
template <class K>
class LinearSolver {
 public:
  using value_type = typename K::value_type;

  explicit LinearSolver(const Matrix<K>& a);

  std::size_t rank() const noexcept { return pivot_cols_.size(); }
  /// Returns nullopt when b is not in the column span of A.
  std::optional<std::vector<value_type>> solve(const SparseVec<K>& b) const;

 private:
  K field_;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::size_t> pivot_cols_;
  // Row-major rows x rows transform E with E*A in reduced echelon form.
  std::vector<value_type> transform_;
};

extern template std::size_t rank<PrimeField>(const Matrix<PrimeField>&);
extern template std::size_t rank<Rationals>(const Matrix<Rationals>&);
extern template Matrix<PrimeField> kernel_basis<PrimeField>(const Matrix<PrimeField>&);
extern template Matrix<Rationals> kernel_basis<Rationals>(const Matrix<Rationals>&);
extern template Matrix<PrimeField> kronecker<PrimeField>(const Matrix<PrimeField>&, const Matrix<PrimeField>&);
extern template Matrix<Rationals> kronecker<Rationals>(const Matrix<Rationals>&, const Matrix<Rationals>&);
extern template bool in_column_span<PrimeField>(const Matrix<PrimeField>&, const SparseVec<PrimeField>&);
extern template bool in_column_span<Rationals>(const Matrix<Rationals>&, const SparseVec<Rationals>&);
extern template class LinearSolver<PrimeField>;
extern template class LinearSolver<Rationals>;

}  // namespace syz::exact
