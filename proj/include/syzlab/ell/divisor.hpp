#pragma once

#include <string>
#include <utility>
#include <vector>

#include "syzlab/ell/curve.hpp"

namespace syz::ell {

/// Formal integer combination of points. Terms are merged, sorted by point,
/// and zero multiplicities dropped, so equality is equality of divisors.
template <class K>
class Divisor {
 public:
  using PointT = Point<K>;
  using Term = std::pair<PointT, int>;

  Divisor() = default;
  explicit Divisor(std::vector<Term> terms);

  static Divisor origin(int n) { return Divisor({{PointT::origin(), n}}); }
  static Divisor at(const PointT& p, int m) { return Divisor({{p, m}}); }

  const std::vector<Term>& terms() const noexcept { return terms_; }
  int degree() const;
  int multiplicity(const PointT& p) const;
  int origin_multiplicity() const { return multiplicity(PointT::origin()); }
  /// Only O in the support (or empty).
  bool origin_only() const;

  Divisor scaled(int k) const;
  /// Pullback under [-1], using the given curve for negation.
  Divisor pulled_back_by_inversion(const Curve<K>& curve) const;
  bool is_symmetric(const Curve<K>& curve) const { return pulled_back_by_inversion(curve) == *this; }

  friend Divisor operator+(const Divisor& a, const Divisor& b) {
    auto t = a.terms_;
    t.insert(t.end(), b.terms_.begin(), b.terms_.end());
    return Divisor(std::move(t));
  }
  friend Divisor operator-(const Divisor& a, const Divisor& b) { return a + b.scaled(-1); }
  friend bool operator==(const Divisor& a, const Divisor& b) { return a.terms_ == b.terms_; }
  friend bool operator!=(const Divisor& a, const Divisor& b) { return !(a == b); }

  std::string to_string(const K& field) const;

 private:
  std::vector<Term> terms_;
};

/// Sum of the points of D under the group law, with multiplicity.
template <class K>
Point<K> divisor_sum(const Curve<K>& curve, const Divisor<K>& d);

/// The representative (deg - 1) O + P of the class of D (for deg D = 0 this is
/// P - O). Two divisors are linearly equivalent iff their canonical forms agree.
template <class K>
Divisor<K> canonical_form(const Curve<K>& curve, const Divisor<K>& d);

template <class K>
bool linearly_equivalent(const Curve<K>& curve, const Divisor<K>& a, const Divisor<K>& b) {
  return a.degree() == b.degree() && divisor_sum(curve, a) == divisor_sum(curve, b);
}

extern template class Divisor<exact::PrimeField>;
extern template class Divisor<exact::Rationals>;

}  // namespace syz::ell
