#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <vector>

#include "syzlab/ell/divisor.hpp"
#include "syzlab/ell/function.hpp"
#include "syzlab/exact/linalg.hpp"

namespace syz::ell {

enum class Parity : std::int8_t { Even = 1, Odd = -1 };

inline Parity parity_product(Parity a, Parity b) {
  return static_cast<Parity>(static_cast<int>(a) * static_cast<int>(b));
}

class NotSymmetric : public std::invalid_argument {
 public:
  NotSymmetric() : std::invalid_argument("bundle not symmetric") {}
};

class IncompatibleBundles : public std::invalid_argument {
 public:
  IncompatibleBundles() : std::invalid_argument("incompatible bundles") {}
};

/// Raised when a product fails to land in the target space. Indicates a
/// broken basis; never expected in correct operation.
class ConsistencyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Basis of L(D) = { f : div f + D >= 0 }. Each section is numerator / denominator
/// where the numerator lies in L(pole_bound O) and the denominator is a monic
/// polynomial in x shared by the whole space.
template <class K>
struct SectionSpace {
  using value_type = typename K::value_type;

  CoordinateRing<K> ring;
  Divisor<K> divisor;
  Poly<K> denominator;
  int pole_bound = 0;
  std::vector<Function<K>> basis;
  std::vector<Parity> parity;  // empty, or one tag per basis vector
  bool monomial = false;       // basis[i] is monomial i of L(pole_bound O)

  std::size_t dimension() const noexcept { return basis.size(); }
  bool has_parity() const noexcept { return !parity.empty(); }
  bool plain_denominator() const { return denominator.size() == 1; }
  /// Numerator of the combination sum c_i basis[i].
  Function<K> numerator(const std::vector<value_type>& coeffs) const;
};

template <class K>
SectionSpace<K> rr_basis(const Curve<K>& curve, const Divisor<K>& d);

/// Matrix of f -> sigma * (f o i) in the basis of S, where i is the inversion
/// and sigma = (-1)^mult_O(D). Requires a symmetric divisor.
template <class K>
exact::Matrix<K> involution_action(const SectionSpace<K>& s);

template <class K>
struct ParitySplit {
  exact::Matrix<K> even;  // columns: coordinates in the basis of S
  exact::Matrix<K> odd;
};

template <class K>
ParitySplit<K> parity_split(const SectionSpace<K>& s);

/// Same space with parity tags. Keeps the basis when it already consists of
/// eigenvectors; otherwise switches to eigenbases (even first, then odd).
template <class K>
SectionSpace<K> with_parity(const SectionSpace<K>& s);

/// Bilinear multiplication L(D1) x L(D2) -> L(D_T), where D_T is linearly
/// equivalent to D1 + D2. For non-identical divisors the identification uses
/// a fixed generator of L(D_T - D1 - D2).
template <class K>
class SectionMultiplier {
 public:
  using value_type = typename K::value_type;

  SectionMultiplier(const SectionSpace<K>& s1, const SectionSpace<K>& s2, const SectionSpace<K>& target);

  /// Coordinates of basis1[i] * basis2[j] in the target basis.
  exact::SparseVec<K> product(std::size_t i, std::size_t j) const;
  exact::SparseVec<K> multiply(const std::vector<value_type>& f, const std::vector<value_type>& g) const;
  /// Columns indexed by i * dim2 + j.
  exact::Matrix<K> table() const;

 private:
  exact::SparseVec<K> express(const Function<K>& numerator) const;

  const SectionSpace<K>* s1_;
  const SectionSpace<K>* s2_;
  const SectionSpace<K>* t_;
  Function<K> factor_;     // extra numerator factor (identification generator)
  Poly<K> lhs_multiplier_;  // den(product) for the target side
  bool cancelled_ = false;
  bool direct_ = false;
  std::size_t rows_ = 0;
  std::shared_ptr<exact::LinearSolver<K>> solver_;
};

/// Coordinates of f * g in the target basis.
template <class K>
exact::SparseVec<K> mult_sections(const SectionSpace<K>& s1, const std::vector<typename K::value_type>& f,
                                  const SectionSpace<K>& s2, const std::vector<typename K::value_type>& g,
                                  const SectionSpace<K>& target) {
  return SectionMultiplier<K>(s1, s2, target).multiply(f, g);
}

/// True if numerator/denominator satisfies div f + D >= 0, checked via pole
/// order at O and local expansions at the affine support.
template <class K>
bool is_section_of(const Curve<K>& curve, const Function<K>& numerator, const Poly<K>& denominator, const Divisor<K>& d);

extern template struct SectionSpace<exact::PrimeField>;
extern template struct SectionSpace<exact::Rationals>;
extern template class SectionMultiplier<exact::PrimeField>;
extern template class SectionMultiplier<exact::Rationals>;

}  // namespace syz::ell
