#include "syzlab/ell/curve.hpp"

#include <algorithm>

namespace syz::ell {

template <class K>
Curve<K>::Curve(K field, value_type a, value_type b) : field_(std::move(field)), a_(std::move(a)), b_(std::move(b)) {
  const auto ch = field_.characteristic();
  if (ch == 2 || ch == 3) throw CurveError("short Weierstrass form needs characteristic other than 2 and 3");
  // -16 (4a^3 + 27b^2)
  const auto four_a3 = field_.mul(field_.from_int(4), field_.mul(a_, field_.mul(a_, a_)));
  const auto t27_b2 = field_.mul(field_.from_int(27), field_.mul(b_, b_));
  if (field_.is_zero(field_.add(four_a3, t27_b2))) throw CurveError("singular curve (zero discriminant)");
}

template <class K>
typename Curve<K>::value_type Curve<K>::rhs(const value_type& x) const {
  return field_.add(field_.mul(x, field_.add(field_.mul(x, x), a_)), b_);
}

template <class K>
bool Curve<K>::contains(const PointT& p) const {
  if (p.infinity) return true;
  return field_.equal(field_.mul(p.y, p.y), rhs(p.x));
}

template <class K>
typename Curve<K>::PointT Curve<K>::point(value_type x, value_type y) const {
  PointT p;
  p.infinity = false;
  p.x = std::move(x);
  p.y = std::move(y);
  require_on_curve(p);
  return p;
}

template <class K>
typename Curve<K>::PointT Curve<K>::neg(const PointT& p) const {
  require_on_curve(p);
  if (p.infinity) return p;
  PointT r = p;
  r.y = field_.neg(p.y);
  return r;
}

template <class K>
typename Curve<K>::PointT Curve<K>::add(const PointT& p, const PointT& q) const {
  require_on_curve(p);
  require_on_curve(q);
  if (p.infinity) return q;
  if (q.infinity) return p;
  value_type slope;
  if (field_.equal(p.x, q.x)) {
    if (!field_.equal(p.y, q.y) || field_.is_zero(p.y)) return PointT::origin();
    // tangent: (3x^2 + a) / 2y
    const auto num = field_.add(field_.mul(field_.from_int(3), field_.mul(p.x, p.x)), a_);
    slope = field_.div(num, field_.mul(field_.from_int(2), p.y));
  } else {
    slope = field_.div(field_.sub(q.y, p.y), field_.sub(q.x, p.x));
  }
  PointT r;
  r.infinity = false;
  r.x = field_.sub(field_.sub(field_.mul(slope, slope), p.x), q.x);
  r.y = field_.sub(field_.mul(slope, field_.sub(p.x, r.x)), p.y);
  return r;
}

template <class K>
typename Curve<K>::PointT Curve<K>::multiply(std::int64_t n, const PointT& p) const {
  PointT base = n < 0 ? neg(p) : p;
  std::uint64_t e = n < 0 ? static_cast<std::uint64_t>(-(n + 1)) + 1 : static_cast<std::uint64_t>(n);
  PointT acc = PointT::origin();
  while (e > 0) {
    if (e & 1) acc = add(acc, base);
    base = add(base, base);
    e >>= 1;
  }
  return acc;
}

template <class K>
bool Curve<K>::is_two_torsion(const PointT& p) const {
  require_on_curve(p);
  return p.infinity || field_.is_zero(p.y);
}

template <class K>
std::string Curve<K>::describe() const {
  return "y^2 = x^3 + " + field_.format(a_) + "x + " + field_.format(b_) + " over " + field_.name();
}

std::vector<Point<exact::PrimeField>> enumerate_points(const Curve<exact::PrimeField>& curve) {
  const auto& field = curve.field();
  const std::uint32_t q = field.characteristic();
  std::vector<Point<exact::PrimeField>> pts;
  pts.push_back(Point<exact::PrimeField>::origin());
  for (std::uint32_t x = 0; x < q; ++x) {
    std::uint32_t root = 0;
    if (!field.sqrt(curve.rhs(x), root)) continue;
    if (root == 0) {
      pts.push_back(curve.point(x, 0));
    } else {
      const std::uint32_t other = field.neg(root);
      pts.push_back(curve.point(x, std::min(root, other)));
      pts.push_back(curve.point(x, std::max(root, other)));
    }
  }
  return pts;
}

template class Curve<exact::PrimeField>;
template class Curve<exact::Rationals>;

}  // namespace syz::ell
