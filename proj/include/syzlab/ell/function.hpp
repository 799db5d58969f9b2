#pragma once

#include <cstddef>
#include <vector>

#include "syzlab/ell/curve.hpp"
#include "syzlab/exact/matrix.hpp"

namespace syz::ell {

/// Dense univariate polynomial, coefficients from degree 0 upward, no trailing zeros.
template <class K>
using Poly = std::vector<typename K::value_type>;

/// u(x) + v(x) y in normal form modulo the curve equation.
template <class K>
struct Function {
  Poly<K> u;
  Poly<K> v;

  bool is_zero() const noexcept { return u.empty() && v.empty(); }
  friend bool operator==(const Function& a, const Function& b) { return a.u == b.u && a.v == b.v; }
  friend bool operator!=(const Function& a, const Function& b) { return !(a == b); }
};

// Monomial basis of L(N O): pole orders 0, 2, 3, 4, ... i.e. 1, x, y, x^2, xy, ...
inline std::size_t monomial_position(int pole_order) {
  return pole_order == 0 ? 0 : static_cast<std::size_t>(pole_order - 1);
}
inline int monomial_pole_order(std::size_t position) {
  return position == 0 ? 0 : static_cast<int>(position) + 1;
}
/// dim L(N O) for N >= 0 (1 for N = 0, N otherwise); 0 for N < 0.
inline std::size_t monomial_count(int pole_bound) {
  if (pole_bound < 0) return 0;
  return pole_bound == 0 ? 1 : static_cast<std::size_t>(pole_bound);
}

/// Arithmetic in the affine coordinate ring K[x, y] / (y^2 - x^3 - a x - b).
template <class K>
class CoordinateRing {
 public:
  using value_type = typename K::value_type;
  using Fn = Function<K>;

  explicit CoordinateRing(Curve<K> curve);

  const Curve<K>& curve() const noexcept { return curve_; }
  const K& field() const noexcept { return curve_.field(); }

  // Polynomials in x.
  Poly<K> poly_add(const Poly<K>& p, const Poly<K>& q) const;
  Poly<K> poly_sub(const Poly<K>& p, const Poly<K>& q) const;
  Poly<K> poly_mul(const Poly<K>& p, const Poly<K>& q) const;
  Poly<K> poly_scale(const Poly<K>& p, const value_type& s) const;
  value_type poly_eval(const Poly<K>& p, const value_type& x) const;
  /// (x - c)^e
  Poly<K> linear_power(const value_type& c, int e) const;
  void trim(Poly<K>& p) const;

  Fn constant(const value_type& c) const;
  Fn x_power(int i) const;
  /// Monomial at a basis position of L(N O).
  Fn monomial(std::size_t position) const;

  Fn add(const Fn& f, const Fn& g) const;
  Fn sub(const Fn& f, const Fn& g) const;
  Fn scale(const Fn& f, const value_type& s) const;
  Fn mul(const Fn& f, const Fn& g) const;
  Fn mul_poly(const Fn& f, const Poly<K>& p) const;
  /// f o i with i(x, y) = (x, -y)
  Fn conjugate(const Fn& f) const;

  /// Pole order at O; -1 for the zero function.
  int pole_order(const Fn& f) const;
  /// Value at an affine point.
  value_type evaluate(const Fn& f, const Point<K>& p) const;

  /// Coordinates in the monomial basis (sparse, by position).
  exact::SparseVec<K> monomial_coords(const Fn& f) const;
  Fn from_monomial_coords(const exact::SparseVec<K>& c) const;
  Fn from_monomial_coords(const std::vector<value_type>& c) const;

  /// Truncated Taylor expansions at an affine point in a local parameter
  /// (x - x(P) away from 2-torsion, y at 2-torsion points). Row j holds the
  /// first `order` coefficients of monomial j, for j < count.
  std::vector<std::vector<value_type>> local_expansions(const Point<K>& p, std::size_t count, int order) const;

 private:
  using Series = std::vector<value_type>;
  Series series_mul(const Series& s, const Series& t, int order) const;

  Curve<K> curve_;
  Poly<K> cubic_;  // x^3 + a x + b
};

extern template class CoordinateRing<exact::PrimeField>;
extern template class CoordinateRing<exact::Rationals>;

}  // namespace syz::ell
