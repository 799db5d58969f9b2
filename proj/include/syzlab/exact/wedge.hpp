#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "syzlab/exact/matrix.hpp"

namespace syz::exact {

std::uint64_t binomial(std::uint64_t n, std::uint64_t k);

/// Basis bookkeeping for the p-th exterior power of an n-dimensional space:
/// strictly increasing p-tuples in lexicographic order.
class WedgeIndex {
 public:
  WedgeIndex(int n, int p);

  int dimension_of_space() const noexcept { return n_; }
  int degree() const noexcept { return p_; }
  std::size_t size() const noexcept { return count_; }

  std::span<const int> tuple(std::size_t i) const {
    return {tuples_.data() + i * static_cast<std::size_t>(p_), static_cast<std::size_t>(p_)};
  }
  /// Lexicographic rank of a strictly increasing tuple.
  std::size_t index_of(std::span<const int> t) const;

 private:
  int n_;
  int p_;
  std::size_t count_ = 0;
  std::vector<int> tuples_;  // flattened
};

/// Induced map on p-th exterior powers of f: K^n -> K^m. Entry (J, I) is the
/// minor det f[J, I]. Degrees beyond the dimension give empty matrices.
template <class K>
Matrix<K> wedge_map(int p, const Matrix<K>& f);

extern template Matrix<PrimeField> wedge_map<PrimeField>(int, const Matrix<PrimeField>&);
extern template Matrix<Rationals> wedge_map<Rationals>(int, const Matrix<Rationals>&);

}  // namespace syz::exact
