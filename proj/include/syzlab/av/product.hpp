#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "syzlab/ell/sections.hpp"

namespace syz::av {

template <class K>
class AbelianProduct {
 public:
  explicit AbelianProduct(std::vector<ell::Curve<K>> factors);

  std::size_t g() const noexcept { return factors_.size(); }
  const ell::Curve<K>& factor(std::size_t i) const { return factors_.at(i); }
  const std::vector<ell::Curve<K>>& factors() const noexcept { return factors_; }
  const K& field() const { return factors_.front().field(); }

 private:
  std::vector<ell::Curve<K>> factors_;
};

/// alpha = box product of O(P_i - O).
template <class K>
struct Pic0Element {
  std::vector<ell::Point<K>> points;

  static Pic0Element zero(std::size_t g) { return {std::vector<ell::Point<K>>(g, ell::Point<K>::origin())}; }
  bool is_zero() const {
    for (const auto& p : points)
      if (!p.is_origin()) return false;
    return true;
  }
  friend bool operator==(const Pic0Element& a, const Pic0Element& b) { return a.points == b.points; }
  friend bool operator<(const Pic0Element& a, const Pic0Element& b) {
    return std::lexicographical_compare(a.points.begin(), a.points.end(), b.points.begin(), b.points.end());
  }
};

template <class K>
Pic0Element<K> negate(const AbelianProduct<K>& x, const Pic0Element<K>& a);

/// External product of per-factor divisors, optionally recording the twist
/// that produced it.
template <class K>
class ProductBundle {
 public:
  explicit ProductBundle(std::vector<ell::Divisor<K>> divisors, std::optional<Pic0Element<K>> twist = std::nullopt)
      : divisors_(std::move(divisors)), twist_(std::move(twist)) {}

  /// d_1 O x ... x d_g O
  static ProductBundle polarization(const AbelianProduct<K>& x, const std::vector<int>& degrees);

  const std::vector<ell::Divisor<K>>& divisors() const noexcept { return divisors_; }
  const std::optional<Pic0Element<K>>& twist_element() const noexcept { return twist_; }
  std::vector<int> degrees() const;

  ProductBundle power(int k) const;
  ProductBundle tensor(const ProductBundle& other) const;

  bool symmetric(const AbelianProduct<K>& x) const;
  /// Square of a symmetric bundle: each factor symmetric, of even degree, and
  /// linearly equivalent to a multiple of O.
  bool totally_symmetric(const AbelianProduct<K>& x) const;

  std::string to_string(const K& field) const;

  friend bool operator==(const ProductBundle& a, const ProductBundle& b) { return a.divisors_ == b.divisors_; }

 private:
  std::vector<ell::Divisor<K>> divisors_;
  std::optional<Pic0Element<K>> twist_;
};

/// Per factor D_i + (P_i) - (O) in canonical form; the zero twist is the identity.
template <class K>
ProductBundle<K> twist(const AbelianProduct<K>& x, const ProductBundle<K>& l, const Pic0Element<K>& alpha);

/// Per-factor canonical forms; equal iff the bundles are isomorphic.
template <class K>
std::vector<ell::Divisor<K>> canonical_forms(const AbelianProduct<K>& x, const ProductBundle<K>& l);

extern template class AbelianProduct<exact::PrimeField>;
extern template class AbelianProduct<exact::Rationals>;
extern template class ProductBundle<exact::PrimeField>;
extern template class ProductBundle<exact::Rationals>;

}  // namespace syz::av
