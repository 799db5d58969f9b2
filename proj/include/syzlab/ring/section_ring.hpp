#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "syzlab/av/product_sections.hpp"

namespace syz::ring {

enum class SystemKind { Ambient, Kummer };

class CapExceeded : public std::out_of_range {
 public:
  CapExceeded() : std::out_of_range("extend MultTable cap") {}
};

/// A polarized variety given by a base bundle L on a product X.
/// Ambient: R_k = H0(X, L^k). Kummer: R_k = H0(X, L^{2k})^+.
template <class K>
class LinearSystem {
 public:
  LinearSystem(av::AbelianProduct<K> x, av::ProductBundle<K> base, SystemKind kind);

  const av::AbelianProduct<K>& variety() const noexcept { return x_; }
  const av::ProductBundle<K>& base() const noexcept { return base_; }
  SystemKind kind() const noexcept { return kind_; }
  const K& field() const { return x_.field(); }

  /// R_k for k >= 0.
  av::ProductSectionSpace<K> slice(int k) const;
  /// Closed-form dimension of R_k (Riemann-Roch and the eigenspace count).
  std::size_t expected_dimension(int k) const;
  /// Least k0 >= 0 with dim R_k equal to the Hilbert polynomial for all k >= k0.
  int q_stab() const;

 private:
  av::AbelianProduct<K> x_;
  av::ProductBundle<K> base_;
  SystemKind kind_;
};

/// Section ring truncated at a degree cap, with lazily built and cached
/// multiplication tables. Safe for concurrent readers.
template <class K>
class SectionRing {
 public:
  using value_type = typename K::value_type;

  SectionRing(LinearSystem<K> system, int cap);

  const LinearSystem<K>& system() const noexcept { return system_; }
  const K& field() const { return system_.field(); }
  int cap() const noexcept { return cap_; }

  /// dim R_k; 0 for k < 0.
  std::size_t dim(int k) const;
  std::size_t v_dim() const { return dim(1); }
  const av::ProductSectionSpace<K>& slice(int k) const;

  /// R_a x R_b -> R_{a+b}.
  const av::MultTable<K>& table(int a, int b) const;
  /// v_i * s for s in R_k, with v_i the i-th degree-one basis vector
  /// (after the optional basis change).
  exact::SparseVec<K> multiply_by_v(std::size_t i, int k, const exact::SparseVec<K>& s) const;
  /// The degree-one basis vector v_i as an element of R_1.
  exact::SparseVec<K> v(std::size_t i) const;

  /// Replace v_1..v_n by columns of an invertible n x n matrix in the old basis.
  void set_degree_one_basis(const exact::Matrix<K>& change);

 private:
  void check_degree(int k) const;

  LinearSystem<K> system_;
  int cap_;
  mutable std::mutex mu_;
  mutable std::map<int, std::shared_ptr<const av::ProductSectionSpace<K>>> slices_;
  mutable std::map<std::pair<int, int>, std::shared_ptr<const av::MultTable<K>>> tables_;
  std::optional<std::vector<exact::SparseVec<K>>> change_;  // columns: new v_i in old coordinates
};

/// Multisets of size k from {0..n-1} in lexicographic order.
class MultisetIndex {
 public:
  MultisetIndex(std::size_t n, int k);
  std::size_t size() const noexcept { return count_; }
  std::vector<int> multiset(std::size_t i) const;
  std::size_t index_of(const std::vector<int>& sorted) const;

 private:
  std::size_t n_;
  int k_;
  std::size_t count_;
};

/// binomial(n + k - 1, k)
std::uint64_t multichoose(std::uint64_t n, std::uint64_t k);

enum class Bracketing { LeftLinear, Balanced };

template <class K>
struct SymMap {
  int k;
  exact::Matrix<K> matrix;  // Sym^k V -> R_k, columns in MultisetIndex order
};

/// Images of all degree-k monomials. LeftLinear computes v_{i1} * (v_{i2} * (...)),
/// Balanced multiplies images of the two halves through R_a x R_b -> R_k.
template <class K>
SymMap<K> sym_map(const SectionRing<K>& ring, int k, Bracketing bracketing = Bracketing::LeftLinear);

template <class K>
struct IdealPiece {
  int k;
  exact::Matrix<K> basis;  // columns in Sym^k coordinates
  std::size_t dimension() const { return basis.cols(); }
};

template <class K>
IdealPiece<K> ideal_piece(const SectionRing<K>& ring, int k);

template <class K>
std::vector<std::size_t> hilbert_values(const SectionRing<K>& ring, int k_max);

template <class K>
bool h_normality(const SectionRing<K>& ring, int k);

/// Rank of V (x) I_{k-1} -> Sym^k V (multiplication inside the polynomial ring).
template <class K>
std::size_t ideal_multiplication_rank(const SectionRing<K>& ring, const IdealPiece<K>& lower, int k);

/// Number of minimal generators of the ideal in each degree 2..k_max (nonzero only).
template <class K>
std::map<int, std::size_t> generator_degrees(const SectionRing<K>& ring, int k_max);

}  // namespace syz::ring
