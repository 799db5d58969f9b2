#pragma once

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "syzlab/exact/field.hpp"

namespace syz::ell {

class InvalidPoint : public std::invalid_argument {
 public:
  InvalidPoint() : std::invalid_argument("invalid point") {}
};

class CurveError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A point of a short Weierstrass curve: either the origin O (at infinity) or
/// an affine pair. Only Curve::point() and the group law produce affine points,
/// so affine points always satisfy the curve equation.
template <class K>
struct Point {
  using value_type = typename K::value_type;

  bool infinity = true;
  value_type x{};
  value_type y{};

  static Point origin() { return Point{}; }
  bool is_origin() const noexcept { return infinity; }

  friend bool operator==(const Point& a, const Point& b) {
    if (a.infinity || b.infinity) return a.infinity == b.infinity;
    return a.x == b.x && a.y == b.y;
  }
  friend bool operator!=(const Point& a, const Point& b) { return !(a == b); }
  /// O first, then affine points by (x, y).
  friend bool operator<(const Point& a, const Point& b) {
    if (a.infinity || b.infinity) return a.infinity && !b.infinity;
    if (a.x != b.x) return a.x < b.x;
    return a.y < b.y;
  }
};

/// y^2 = x^3 + a x + b over K, characteristic not 2 or 3, nonzero discriminant.
template <class K>
class Curve {
 public:
  using value_type = typename K::value_type;
  using PointT = Point<K>;

  Curve(K field, value_type a, value_type b);
  static Curve from_ints(const K& field, std::int64_t a, std::int64_t b) {
    return Curve(field, field.from_int(a), field.from_int(b));
  }

  const K& field() const noexcept { return field_; }
  const value_type& a() const noexcept { return a_; }
  const value_type& b() const noexcept { return b_; }

  /// x^3 + a x + b
  value_type rhs(const value_type& x) const;
  bool contains(const PointT& p) const;

  /// Validated affine point; throws InvalidPoint if (x, y) is off the curve.
  PointT point(value_type x, value_type y) const;
  PointT point_from_ints(std::int64_t x, std::int64_t y) const {
    return point(field_.from_int(x), field_.from_int(y));
  }

  PointT add(const PointT& p, const PointT& q) const;
  PointT neg(const PointT& p) const;
  PointT multiply(std::int64_t n, const PointT& p) const;
  bool is_two_torsion(const PointT& p) const;

  std::string describe() const;

  friend bool operator==(const Curve& c, const Curve& d) {
    return c.field_ == d.field_ && c.field_.equal(c.a_, d.a_) && c.field_.equal(c.b_, d.b_);
  }
  friend bool operator!=(const Curve& c, const Curve& d) { return !(c == d); }

 private:
  void require_on_curve(const PointT& p) const {
    if (!contains(p)) throw InvalidPoint();
  }

  K field_;
  value_type a_;
  value_type b_;
};

/// All F_q-rational points, O first, then affine points sorted by (x, y).
std::vector<Point<exact::PrimeField>> enumerate_points(const Curve<exact::PrimeField>& curve);

extern template class Curve<exact::PrimeField>;
extern template class Curve<exact::Rationals>;

}  // namespace syz::ell
