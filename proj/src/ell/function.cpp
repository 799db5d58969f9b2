#include "syzlab/ell/function.hpp"

#include <algorithm>
#include <stdexcept>

namespace syz::ell {

template <class K>
CoordinateRing<K>::CoordinateRing(Curve<K> curve) : curve_(std::move(curve)) {
  const K& k = field();
  cubic_ = {curve_.b(), curve_.a(), k.zero(), k.one()};
  trim(cubic_);
}

template <class K>
void CoordinateRing<K>::trim(Poly<K>& p) const {
  while (!p.empty() && field().is_zero(p.back())) p.pop_back();
}

template <class K>
Poly<K> CoordinateRing<K>::poly_add(const Poly<K>& p, const Poly<K>& q) const {
  Poly<K> r(std::max(p.size(), q.size()), field().zero());
  for (std::size_t i = 0; i < p.size(); ++i) r[i] = p[i];
  for (std::size_t i = 0; i < q.size(); ++i) r[i] = field().add(r[i], q[i]);
  trim(r);
  return r;
}

template <class K>
Poly<K> CoordinateRing<K>::poly_sub(const Poly<K>& p, const Poly<K>& q) const {
  Poly<K> r(std::max(p.size(), q.size()), field().zero());
  for (std::size_t i = 0; i < p.size(); ++i) r[i] = p[i];
  for (std::size_t i = 0; i < q.size(); ++i) r[i] = field().sub(r[i], q[i]);
  trim(r);
  return r;
}

template <class K>
Poly<K> CoordinateRing<K>::poly_mul(const Poly<K>& p, const Poly<K>& q) const {
  if (p.empty() || q.empty()) return {};
  const K& k = field();
  Poly<K> r(p.size() + q.size() - 1, k.zero());
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (k.is_zero(p[i])) continue;
    for (std::size_t j = 0; j < q.size(); ++j) r[i + j] = k.add(r[i + j], k.mul(p[i], q[j]));
  }
  trim(r);
  return r;
}

template <class K>
Poly<K> CoordinateRing<K>::poly_scale(const Poly<K>& p, const value_type& s) const {
  Poly<K> r;
  r.reserve(p.size());
  for (const auto& c : p) r.push_back(field().mul(c, s));
  trim(r);
  return r;
}

template <class K>
typename K::value_type CoordinateRing<K>::poly_eval(const Poly<K>& p, const value_type& x) const {
  value_type acc = field().zero();
  for (std::size_t i = p.size(); i-- > 0;) acc = field().add(field().mul(acc, x), p[i]);
  return acc;
}

template <class K>
Poly<K> CoordinateRing<K>::linear_power(const value_type& c, int e) const {
  Poly<K> r{field().one()};
  const Poly<K> lin{field().neg(c), field().one()};
  for (int i = 0; i < e; ++i) r = poly_mul(r, lin);
  return r;
}

template <class K>
Function<K> CoordinateRing<K>::constant(const value_type& c) const {
  Fn f;
  f.u = {c};
  trim(f.u);
  return f;
}

template <class K>
Function<K> CoordinateRing<K>::x_power(int i) const {
  Fn f;
  f.u.assign(static_cast<std::size_t>(i) + 1, field().zero());
  f.u.back() = field().one();
  return f;
}

template <class K>
Function<K> CoordinateRing<K>::monomial(std::size_t position) const {
  const int k = monomial_pole_order(position);
  if (k % 2 == 0) return x_power(k / 2);
  Fn f;
  f.v.assign(static_cast<std::size_t>((k - 3) / 2) + 1, field().zero());
  f.v.back() = field().one();
  return f;
}

template <class K>
Function<K> CoordinateRing<K>::add(const Fn& f, const Fn& g) const {
  return {poly_add(f.u, g.u), poly_add(f.v, g.v)};
}

template <class K>
Function<K> CoordinateRing<K>::sub(const Fn& f, const Fn& g) const {
  return {poly_sub(f.u, g.u), poly_sub(f.v, g.v)};
}

template <class K>
Function<K> CoordinateRing<K>::scale(const Fn& f, const value_type& s) const {
  return {poly_scale(f.u, s), poly_scale(f.v, s)};
}

template <class K>
Function<K> CoordinateRing<K>::mul(const Fn& f, const Fn& g) const {
  // (u1 + v1 y)(u2 + v2 y) = u1 u2 + v1 v2 (x^3 + a x + b) + (u1 v2 + u2 v1) y
  Fn r;
  r.u = poly_add(poly_mul(f.u, g.u), poly_mul(poly_mul(f.v, g.v), cubic_));
  r.v = poly_add(poly_mul(f.u, g.v), poly_mul(f.v, g.u));
  return r;
}

template <class K>
Function<K> CoordinateRing<K>::mul_poly(const Fn& f, const Poly<K>& p) const {
  return {poly_mul(f.u, p), poly_mul(f.v, p)};
}

template <class K>
Function<K> CoordinateRing<K>::conjugate(const Fn& f) const {
  Fn r = f;
  for (auto& c : r.v) c = field().neg(c);
  return r;
}

template <class K>
int CoordinateRing<K>::pole_order(const Fn& f) const {
  int k = -1;
  if (!f.u.empty()) k = 2 * static_cast<int>(f.u.size() - 1);
  if (!f.v.empty()) k = std::max(k, 2 * static_cast<int>(f.v.size() - 1) + 3);
  return k;
}

template <class K>
typename K::value_type CoordinateRing<K>::evaluate(const Fn& f, const Point<K>& p) const {
  if (p.infinity) throw std::invalid_argument("evaluation at the origin");
  return field().add(poly_eval(f.u, p.x), field().mul(poly_eval(f.v, p.x), p.y));
}

template <class K>
exact::SparseVec<K> CoordinateRing<K>::monomial_coords(const Fn& f) const {
  exact::SparseVec<K> out;
  for (std::size_t j = 0; j < f.u.size(); ++j) {
    if (!field().is_zero(f.u[j])) out.push_back({static_cast<std::uint32_t>(monomial_position(2 * static_cast<int>(j))), f.u[j]});
  }
  for (std::size_t j = 0; j < f.v.size(); ++j) {
    if (!field().is_zero(f.v[j])) out.push_back({static_cast<std::uint32_t>(monomial_position(2 * static_cast<int>(j) + 3)), f.v[j]});
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  return out;
}

template <class K>
Function<K> CoordinateRing<K>::from_monomial_coords(const exact::SparseVec<K>& c) const {
  Fn f;
  for (const auto& [pos, v] : c) {
    const int k = monomial_pole_order(pos);
    Poly<K>& target = k % 2 == 0 ? f.u : f.v;
    const std::size_t deg = static_cast<std::size_t>(k % 2 == 0 ? k / 2 : (k - 3) / 2);
    if (target.size() <= deg) target.resize(deg + 1, field().zero());
    target[deg] = field().add(target[deg], v);
  }
  trim(f.u);
  trim(f.v);
  return f;
}

template <class K>
Function<K> CoordinateRing<K>::from_monomial_coords(const std::vector<value_type>& c) const {
  exact::SparseVec<K> s;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (!field().is_zero(c[i])) s.push_back({static_cast<std::uint32_t>(i), c[i]});
  }
  return from_monomial_coords(s);
}

template <class K>
typename CoordinateRing<K>::Series CoordinateRing<K>::series_mul(const Series& s, const Series& t, int order) const {
  const K& k = field();
  Series r(static_cast<std::size_t>(order), k.zero());
  for (int i = 0; i < order; ++i) {
    if (k.is_zero(s[static_cast<std::size_t>(i)])) continue;
    for (int j = 0; i + j < order; ++j) {
      r[static_cast<std::size_t>(i + j)] =
          k.add(r[static_cast<std::size_t>(i + j)], k.mul(s[static_cast<std::size_t>(i)], t[static_cast<std::size_t>(j)]));
    }
  }
  return r;
}

template <class K>
std::vector<std::vector<typename K::value_type>> CoordinateRing<K>::local_expansions(const Point<K>& p, std::size_t count,
                                                                                      int order) const {
  if (p.infinity) throw std::invalid_argument("local expansion at the origin");
  const K& k = field();
  const auto m = static_cast<std::size_t>(order);
  Series X(m, k.zero()), Y(m, k.zero());
  if (order > 0) {
    if (!k.is_zero(p.y)) {
      X[0] = p.x;
      if (m > 1) X[1] = k.one();
      // y^2 = f(c + t); coefficients of f(c + t)
      Series fc(std::max<std::size_t>(m, 4), k.zero());
      fc[0] = curve_.rhs(p.x);
      fc[1] = k.add(k.mul(k.from_int(3), k.mul(p.x, p.x)), curve_.a());
      fc[2] = k.mul(k.from_int(3), p.x);
      fc[3] = k.one();
      Y[0] = p.y;
      const auto inv2d = k.inv(k.mul(k.from_int(2), p.y));
      for (std::size_t n = 1; n < m; ++n) {
        auto acc = fc[n];
        for (std::size_t i = 1; i < n; ++i) acc = k.sub(acc, k.mul(Y[i], Y[n - i]));
        Y[n] = k.mul(acc, inv2d);
      }
    } else {
      // t = y, x = c + s(t) with s = (t^2 - 3c s^2 - s^3) / f'(c)
      if (m > 1) Y[1] = k.one();
      const auto deriv = k.add(k.mul(k.from_int(3), k.mul(p.x, p.x)), curve_.a());
      const auto inv_deriv = k.inv(deriv);
      Series s(m, k.zero());
      for (std::size_t it = 0; it < m; ++it) {
        Series s2 = series_mul(s, s, order);
        Series s3 = series_mul(s2, s, order);
        Series next(m, k.zero());
        for (std::size_t n = 0; n < m; ++n) {
          auto v = n == 2 ? k.one() : k.zero();
          v = k.sub(v, k.mul(k.mul(k.from_int(3), p.x), s2[n]));
          v = k.sub(v, s3[n]);
          next[n] = k.mul(v, inv_deriv);
        }
        s = std::move(next);
      }
      X = s;
      X[0] = k.add(X[0], p.x);
    }
  }
  std::vector<Series> out;
  out.reserve(count);
  std::vector<Series> xpow;
  Series unit(m, k.zero());
  if (m > 0) unit[0] = k.one();
  xpow.push_back(unit);
  for (std::size_t j = 0; j < count; ++j) {
    const int pole = monomial_pole_order(j);
    const std::size_t d = static_cast<std::size_t>(pole % 2 == 0 ? pole / 2 : (pole - 3) / 2);
    while (xpow.size() <= d) xpow.push_back(series_mul(xpow.back(), X, order));
    out.push_back(pole % 2 == 0 ? xpow[d] : series_mul(xpow[d], Y, order));
  }
  return out;
}

template class CoordinateRing<exact::PrimeField>;
template class CoordinateRing<exact::Rationals>;

}  // namespace syz::ell
