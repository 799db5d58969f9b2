#include "syzlab/ell/sections.hpp"

#include <algorithm>
#include <map>

namespace syz::ell {
namespace {

template <class K>
using Value = typename K::value_type;

template <class K>
struct AffineCondition {
  Point<K> point;
  int order;  // required vanishing order of the numerator
};

// Multiplicity of c as a root of p, dividing it out.
template <class K>
int strip_root(const CoordinateRing<K>& ring, Poly<K>& p, const Value<K>& c) {
  const K& k = ring.field();
  int e = 0;
  while (p.size() > 1 && k.is_zero(ring.poly_eval(p, c))) {
    // synthetic division by (x - c)
    Poly<K> q(p.size() - 1, k.zero());
    Value<K> carry = k.zero();
    for (std::size_t i = p.size(); i-- > 1;) {
      carry = k.add(p[i], k.mul(carry, c));
      q[i - 1] = carry;
    }
    p = std::move(q);
    ring.trim(p);
    ++e;
  }
  return e;
}

template <class K>
int x_order(const Curve<K>& curve, const Point<K>& q) {
  return curve.is_two_torsion(q) ? 2 : 1;
}

// Vanishing order of a numerator at q, capped at `cap`.
template <class K>
int vanishing_order(const CoordinateRing<K>& ring, const Function<K>& f, const Point<K>& q, int cap) {
  if (f.is_zero()) return cap;
  const K& k = ring.field();
  const auto coords = ring.monomial_coords(f);
  const std::size_t count = coords.empty() ? 1 : coords.back().first + 1;
  const auto exp = ring.local_expansions(q, count, cap);
  for (int t = 0; t < cap; ++t) {
    Value<K> acc = k.zero();
    for (const auto& [pos, v] : coords) acc = k.add(acc, k.mul(v, exp[pos][static_cast<std::size_t>(t)]));
    if (!k.is_zero(acc)) return t;
  }
  return cap;
}

// Solves sum c_k basis[k] * multiplier = rhs over monomial coordinates.
template <class K>
exact::Matrix<K> numerator_system(const SectionSpace<K>& s, const Poly<K>& multiplier, std::size_t rows) {
  std::vector<exact::SparseVec<K>> cols;
  cols.reserve(s.dimension());
  for (const auto& b : s.basis) cols.push_back(s.ring.monomial_coords(s.ring.mul_poly(b, multiplier)));
  return exact::Matrix<K>::from_columns(s.ring.field(), rows, std::move(cols));
}

template <class K>
std::size_t rows_for(const SectionSpace<K>& s, const Poly<K>& multiplier) {
  const int extra = multiplier.empty() ? 0 : 2 * static_cast<int>(multiplier.size() - 1);
  return monomial_count(s.pole_bound + extra);
}

template <class K>
std::vector<Value<K>> dense(const K& k, const exact::SparseVec<K>& v, std::size_t n) {
  std::vector<Value<K>> out(n, k.zero());
  for (const auto& [i, x] : v) out[i] = x;
  return out;
}

}  // namespace

template <class K>
Function<K> SectionSpace<K>::numerator(const std::vector<value_type>& coeffs) const {
  if (coeffs.size() != basis.size()) throw std::invalid_argument("coefficient count differs from dimension");
  Function<K> acc;
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    if (ring.field().is_zero(coeffs[i])) continue;
    acc = ring.add(acc, ring.scale(basis[i], coeffs[i]));
  }
  return acc;
}

template <class K>
SectionSpace<K> rr_basis(const Curve<K>& curve, const Divisor<K>& d) {
  CoordinateRing<K> ring(curve);
  const K& k = curve.field();
  for (const auto& [p, m] : d.terms()) {
    if (!curve.contains(p)) throw InvalidPoint();
  }
  SectionSpace<K> s{ring, d, Poly<K>{k.one()}, 0, {}, {}, false};
  if (d.degree() < 0) return s;

  // Denominator exponents per x-coordinate, large enough to absorb every pole.
  std::vector<std::pair<Value<K>, int>> exps;
  for (const auto& [p, m] : d.terms()) {
    if (p.infinity || m <= 0) continue;
    const int ord = x_order(curve, p);
    const int need = (m + ord - 1) / ord;
    auto it = std::find_if(exps.begin(), exps.end(), [&](const auto& e) { return k.equal(e.first, p.x); });
    if (it == exps.end()) {
      exps.push_back({p.x, need});
    } else {
      it->second = std::max(it->second, need);
    }
  }
  Poly<K> g{k.one()};
  int deg_g = 0;
  for (const auto& [c, e] : exps) {
    g = ring.poly_mul(g, ring.linear_power(c, e));
    deg_g += e;
  }

  // Points where the numerator must vanish: the support and its negatives.
  std::vector<Point<K>> pts;
  for (const auto& [p, m] : d.terms()) {
    if (p.infinity) continue;
    pts.push_back(p);
    pts.push_back(curve.neg(p));
  }
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  std::vector<AffineCondition<K>> conds;
  for (const auto& q : pts) {
    int e = 0;
    for (const auto& [c, ex] : exps) {
      if (k.equal(c, q.x)) e = ex;
    }
    const int req = e * x_order(curve, q) - d.multiplicity(q);
    if (req > 0) conds.push_back({q, req});
  }

  const int pole_bound = d.origin_multiplicity() + 2 * deg_g;
  s.denominator = g;
  s.pole_bound = pole_bound;
  const std::size_t count = monomial_count(pole_bound);
  if (conds.empty()) {
    s.monomial = true;
    for (std::size_t j = 0; j < count; ++j) s.basis.push_back(ring.monomial(j));
    return s;
  }
  std::size_t nrows = 0;
  for (const auto& c : conds) nrows += static_cast<std::size_t>(c.order);
  std::vector<Value<K>> a(nrows * count, k.zero());
  std::size_t row = 0;
  for (const auto& c : conds) {
    const auto exp = ring.local_expansions(c.point, count, c.order);
    for (int t = 0; t < c.order; ++t, ++row) {
      for (std::size_t j = 0; j < count; ++j) a[row * count + j] = exp[j][static_cast<std::size_t>(t)];
    }
  }
  const auto conditions = exact::Matrix<K>::from_dense(k, nrows, count, std::move(a));
  const auto ker = exact::kernel_basis(conditions);
  for (const auto& col : ker.columns()) s.basis.push_back(ring.from_monomial_coords(col));
  return s;
}

template <class K>
bool is_section_of(const Curve<K>& curve, const Function<K>& numerator, const Poly<K>& denominator, const Divisor<K>& d) {
  CoordinateRing<K> ring(curve);
  if (numerator.is_zero()) return true;
  const int deg_den = denominator.empty() ? 0 : static_cast<int>(denominator.size()) - 1;
  if (ring.pole_order(numerator) - 2 * deg_den > d.origin_multiplicity()) return false;
  std::vector<Point<K>> pts;
  for (const auto& [p, m] : d.terms()) {
    if (p.infinity) continue;
    pts.push_back(p);
    pts.push_back(curve.neg(p));
  }
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  Poly<K> rest = denominator;
  std::vector<std::pair<Value<K>, int>> roots;
  for (const auto& q : pts) {
    if (std::any_of(roots.begin(), roots.end(), [&](const auto& r) { return curve.field().equal(r.first, q.x); })) continue;
    roots.push_back({q.x, strip_root(ring, rest, q.x)});
  }
  if (rest.size() != 1) return false;  // poles away from the known support
  for (const auto& q : pts) {
    int e = 0;
    for (const auto& r : roots) {
      if (curve.field().equal(r.first, q.x)) e = r.second;
    }
    const int den_ord = e * x_order(curve, q);
    const int need = den_ord - d.multiplicity(q);
    if (need <= 0) continue;
    if (vanishing_order(ring, numerator, q, need) < need) return false;
  }
  return true;
}

template <class K>
exact::Matrix<K> involution_action(const SectionSpace<K>& s) {
  const Curve<K>& curve = s.ring.curve();
  if (!s.divisor.is_symmetric(curve)) throw NotSymmetric();
  const K& k = curve.field();
  const bool negate = s.divisor.origin_multiplicity() % 2 != 0;
  const std::size_t n = s.dimension();
  std::vector<exact::SparseVec<K>> cols;
  cols.reserve(n);
  if (s.monomial) {
    for (std::size_t j = 0; j < n; ++j) {
      const bool odd_mono = monomial_pole_order(j) % 2 != 0;
      cols.push_back({{static_cast<std::uint32_t>(j), odd_mono != negate ? k.from_int(-1) : k.one()}});
    }
    return exact::Matrix<K>::from_columns(k, n, std::move(cols));
  }
  const Poly<K> unit{k.one()};
  const auto rows = rows_for(s, unit);
  exact::LinearSolver<K> solver(numerator_system(s, unit, rows));
  for (const auto& b : s.basis) {
    auto img = s.ring.conjugate(b);
    if (negate) img = s.ring.scale(img, k.from_int(-1));
    auto c = solver.solve(s.ring.monomial_coords(img));
    if (!c) throw ConsistencyError("involution image outside the space");
    exact::SparseVec<K> col;
    for (std::size_t i = 0; i < n; ++i) {
      if (!k.is_zero((*c)[i])) col.push_back({static_cast<std::uint32_t>(i), (*c)[i]});
    }
    cols.push_back(std::move(col));
  }
  return exact::Matrix<K>::from_columns(k, n, std::move(cols));
}

template <class K>
ParitySplit<K> parity_split(const SectionSpace<K>& s) {
  const auto m = involution_action(s);
  const auto id = exact::Matrix<K>::identity(m.field(), m.rows());
  return {exact::kernel_basis(m - id), exact::kernel_basis(m + id)};
}

template <class K>
SectionSpace<K> with_parity(const SectionSpace<K>& s) {
  const auto m = involution_action(s);
  const K& k = m.field();
  SectionSpace<K> out = s;
  out.parity.clear();
  bool diagonal = true;
  for (std::size_t j = 0; j < m.cols() && diagonal; ++j) {
    const auto col = m.column(j);
    diagonal = col.size() == 1 && col[0].first == j;
    if (diagonal) out.parity.push_back(k.equal(col[0].second, k.one()) ? Parity::Even : Parity::Odd);
  }
  if (diagonal) return out;
  const auto id = exact::Matrix<K>::identity(k, m.rows());
  const auto even = exact::kernel_basis(m - id);
  const auto odd = exact::kernel_basis(m + id);
  out.basis.clear();
  out.parity.clear();
  out.monomial = false;
  for (const auto& [mat, tag] : {std::pair{&even, Parity::Even}, std::pair{&odd, Parity::Odd}}) {
    for (const auto& col : mat->columns()) {
      out.basis.push_back(s.numerator(dense(k, col, s.dimension())));
      out.parity.push_back(tag);
    }
  }
  return out;
}

template <class K>
SectionMultiplier<K>::SectionMultiplier(const SectionSpace<K>& s1, const SectionSpace<K>& s2, const SectionSpace<K>& target)
    : s1_(&s1), s2_(&s2), t_(&target) {
  const Curve<K>& curve = target.ring.curve();
  if (s1.ring.curve() != curve || s2.ring.curve() != curve) throw IncompatibleBundles();
  const K& k = curve.field();
  const Divisor<K> sum = s1.divisor + s2.divisor;
  Poly<K> den = s1.ring.poly_mul(s1.denominator, s2.denominator);
  factor_ = target.ring.constant(k.one());
  if (sum != target.divisor) {
    if (!linearly_equivalent(curve, sum, target.divisor)) throw IncompatibleBundles();
    const auto phi = rr_basis(curve, target.divisor - sum);
    if (phi.dimension() != 1) throw ConsistencyError("identification space is not one-dimensional");
    factor_ = phi.basis[0];
    den = target.ring.poly_mul(den, phi.denominator);
  }
  // sum c_k T_k * den = N * g_T ; cancel the common case den == g_T.
  if (den == target.denominator) {
    lhs_multiplier_ = Poly<K>{k.one()};
    cancelled_ = true;
    direct_ = target.monomial;
  } else {
    lhs_multiplier_ = den;
  }
  rows_ = rows_for(target, lhs_multiplier_);
  if (!direct_) {
    solver_ = std::make_shared<exact::LinearSolver<K>>(numerator_system(target, lhs_multiplier_, rows_));
  }
}

template <class K>
exact::SparseVec<K> SectionMultiplier<K>::express(const Function<K>& numerator) const {
  const auto& ring = t_->ring;
  Function<K> rhs = ring.mul(numerator, factor_);
  if (!cancelled_) rhs = ring.mul_poly(rhs, t_->denominator);
  auto coords = ring.monomial_coords(rhs);
  if (!coords.empty() && coords.back().first >= rows_) throw ConsistencyError("product not expressible in target basis");
  if (direct_) return coords;
  auto sol = solver_->solve(coords);
  if (!sol) throw ConsistencyError("product not expressible in target basis");
  exact::SparseVec<K> out;
  for (std::size_t i = 0; i < sol->size(); ++i) {
    if (!ring.field().is_zero((*sol)[i])) out.push_back({static_cast<std::uint32_t>(i), (*sol)[i]});
  }
  return out;
}

template <class K>
exact::SparseVec<K> SectionMultiplier<K>::product(std::size_t i, std::size_t j) const {
  return express(t_->ring.mul(s1_->basis.at(i), s2_->basis.at(j)));
}

template <class K>
exact::SparseVec<K> SectionMultiplier<K>::multiply(const std::vector<value_type>& f, const std::vector<value_type>& g) const {
  return express(t_->ring.mul(s1_->numerator(f), s2_->numerator(g)));
}

template <class K>
exact::Matrix<K> SectionMultiplier<K>::table() const {
  std::vector<exact::SparseVec<K>> cols;
  cols.reserve(s1_->dimension() * s2_->dimension());
  for (std::size_t i = 0; i < s1_->dimension(); ++i) {
    for (std::size_t j = 0; j < s2_->dimension(); ++j) cols.push_back(product(i, j));
  }
  return exact::Matrix<K>::from_columns(t_->ring.field(), t_->dimension(), std::move(cols));
}

#define SYZ_INSTANTIATE(K)                                                                              \
  template struct SectionSpace<K>;                                                                      \
  template class SectionMultiplier<K>;                                                                  \
  template SectionSpace<K> rr_basis<K>(const Curve<K>&, const Divisor<K>&);                             \
  template exact::Matrix<K> involution_action<K>(const SectionSpace<K>&);                               \
  template ParitySplit<K> parity_split<K>(const SectionSpace<K>&);                                      \
  template SectionSpace<K> with_parity<K>(const SectionSpace<K>&);                                      \
  template bool is_section_of<K>(const Curve<K>&, const Function<K>&, const Poly<K>&, const Divisor<K>&);

SYZ_INSTANTIATE(exact::PrimeField)
SYZ_INSTANTIATE(exact::Rationals)

}  // namespace syz::ell
