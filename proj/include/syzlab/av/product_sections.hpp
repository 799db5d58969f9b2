#pragma once

#include <cstdint>
#include <vector>

#include "syzlab/av/product.hpp"

namespace syz::av {

/// Tensor product of per-factor section spaces, optionally restricted to a
/// subset of the tensor basis. Tensor basis order is lexicographic in the
/// per-factor indices, first factor most significant.
template <class K>
class ProductSectionSpace {
 public:
  ProductSectionSpace(std::vector<ell::SectionSpace<K>> factors, ProductBundle<K> bundle,
                      std::vector<std::uint32_t> selection, bool tag_parity);

  std::size_t dimension() const noexcept { return selection_.size(); }
  std::size_t full_dimension() const noexcept { return full_; }
  std::size_t g() const noexcept { return factors_.size(); }
  const std::vector<ell::SectionSpace<K>>& factors() const noexcept { return factors_; }
  const ell::SectionSpace<K>& factor(std::size_t i) const { return factors_.at(i); }
  const ProductBundle<K>& bundle() const noexcept { return bundle_; }
  const K& field() const { return factors_.front().ring.field(); }

  /// Flat tensor index of the i-th basis vector.
  std::uint32_t flat(std::size_t i) const { return selection_[i]; }
  const std::vector<std::uint32_t>& selection() const noexcept { return selection_; }
  /// Basis position of a flat tensor index, or -1 if not selected.
  std::int64_t position(std::uint32_t flat) const { return position_[flat]; }
  std::vector<std::size_t> multi_index(std::uint32_t flat) const;
  std::uint32_t flat_of(const std::vector<std::size_t>& multi) const;

  bool has_parity() const noexcept { return !parity_.empty(); }
  const std::vector<ell::Parity>& parity() const noexcept { return parity_; }

 private:
  std::vector<ell::SectionSpace<K>> factors_;
  ProductBundle<K> bundle_;
  std::vector<std::uint32_t> selection_;
  std::vector<std::int64_t> position_;
  std::vector<ell::Parity> parity_;
  std::size_t full_ = 1;
};

/// Full tensor basis. Parity tags are attached when the bundle is symmetric.
template <class K>
ProductSectionSpace<K> sections(const AbelianProduct<K>& x, const ProductBundle<K>& l);

/// The + eigenspace: tensor vectors of even total parity. L must be totally
/// symmetric and untwisted.
template <class K>
ProductSectionSpace<K> plus_space(const AbelianProduct<K>& x, const ProductBundle<K>& l);

/// Matrix of S1 (x) S2 -> T in the chosen bases, column i * dim S2 + j.
/// Products are Kronecker products of per-factor multiplication tables.
template <class K>
class MultTable {
 public:
  MultTable(const ProductSectionSpace<K>& s1, const ProductSectionSpace<K>& s2, const ProductSectionSpace<K>& t);

  std::size_t left_dimension() const noexcept { return left_; }
  std::size_t right_dimension() const noexcept { return right_; }
  std::size_t target_dimension() const noexcept { return target_; }
  const K& field() const noexcept { return field_; }

  const exact::SparseVec<K>& product(std::size_t i, std::size_t j) const { return columns_[i * right_ + j]; }
  /// basis_i * (sum_j c_j basis_j)
  exact::SparseVec<K> apply(std::size_t i, const exact::SparseVec<K>& right) const;
  exact::Matrix<K> matrix() const;

 private:
  K field_;
  std::size_t left_ = 0;
  std::size_t right_ = 0;
  std::size_t target_ = 0;
  std::vector<exact::SparseVec<K>> columns_;
};

extern template class ProductSectionSpace<exact::PrimeField>;
extern template class ProductSectionSpace<exact::Rationals>;
extern template class MultTable<exact::PrimeField>;
extern template class MultTable<exact::Rationals>;

}  // namespace syz::av
