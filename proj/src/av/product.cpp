#include "syzlab/av/product.hpp"

#include <stdexcept>

namespace syz::av {

template <class K>
AbelianProduct<K>::AbelianProduct(std::vector<ell::Curve<K>> factors) : factors_(std::move(factors)) {
  if (factors_.empty()) throw std::invalid_argument("abelian product needs at least one factor");
  for (const auto& c : factors_) {
    if (c.field() != factors_.front().field()) throw exact::FieldMismatch();
  }
}

template <class K>
Pic0Element<K> negate(const AbelianProduct<K>& x, const Pic0Element<K>& a) {
  Pic0Element<K> r = a;
  for (std::size_t i = 0; i < r.points.size(); ++i) r.points[i] = x.factor(i).neg(a.points[i]);
  return r;
}

template <class K>
ProductBundle<K> ProductBundle<K>::polarization(const AbelianProduct<K>& x, const std::vector<int>& degrees) {
  if (degrees.size() != x.g()) throw std::invalid_argument("one degree per factor required");
  std::vector<ell::Divisor<K>> ds;
  for (int d : degrees) {
    if (d < 1) throw std::invalid_argument("polarization degrees must be positive");
    ds.push_back(ell::Divisor<K>::origin(d));
  }
  return ProductBundle(std::move(ds));
}

template <class K>
std::vector<int> ProductBundle<K>::degrees() const {
  std::vector<int> out;
  for (const auto& d : divisors_) out.push_back(d.degree());
  return out;
}

template <class K>
ProductBundle<K> ProductBundle<K>::power(int k) const {
  std::vector<ell::Divisor<K>> ds;
  for (const auto& d : divisors_) ds.push_back(d.scaled(k));
  return ProductBundle(std::move(ds));
}

template <class K>
ProductBundle<K> ProductBundle<K>::tensor(const ProductBundle& other) const {
  if (other.divisors_.size() != divisors_.size()) throw std::invalid_argument("factor count mismatch");
  std::vector<ell::Divisor<K>> ds;
  for (std::size_t i = 0; i < divisors_.size(); ++i) ds.push_back(divisors_[i] + other.divisors_[i]);
  return ProductBundle(std::move(ds));
}

template <class K>
bool ProductBundle<K>::symmetric(const AbelianProduct<K>& x) const {
  for (std::size_t i = 0; i < divisors_.size(); ++i) {
    if (!divisors_[i].is_symmetric(x.factor(i))) return false;
  }
  return true;
}

template <class K>
bool ProductBundle<K>::totally_symmetric(const AbelianProduct<K>& x) const {
  if (!symmetric(x)) return false;
  for (std::size_t i = 0; i < divisors_.size(); ++i) {
    if (divisors_[i].degree() % 2 != 0) return false;
    if (!ell::divisor_sum(x.factor(i), divisors_[i]).is_origin()) return false;
  }
  return true;
}

template <class K>
std::string ProductBundle<K>::to_string(const K& field) const {
  std::string s;
  for (const auto& d : divisors_) {
    if (!s.empty()) s += " [x] ";
    s += d.to_string(field);
  }
  return s;
}

template <class K>
ProductBundle<K> twist(const AbelianProduct<K>& x, const ProductBundle<K>& l, const Pic0Element<K>& alpha) {
  if (alpha.points.size() != x.g()) throw std::invalid_argument("twist needs one point per factor");
  if (alpha.is_zero()) return l;
  std::vector<ell::Divisor<K>> ds;
  for (std::size_t i = 0; i < x.g(); ++i) {
    const auto d = l.divisors()[i] + ell::Divisor<K>::at(alpha.points[i], 1) - ell::Divisor<K>::origin(1);
    ds.push_back(ell::canonical_form(x.factor(i), d));
  }
  Pic0Element<K> total = alpha;
  if (l.twist_element()) {
    for (std::size_t i = 0; i < x.g(); ++i) total.points[i] = x.factor(i).add(total.points[i], l.twist_element()->points[i]);
  }
  return ProductBundle<K>(std::move(ds), total);
}

template <class K>
std::vector<ell::Divisor<K>> canonical_forms(const AbelianProduct<K>& x, const ProductBundle<K>& l) {
  std::vector<ell::Divisor<K>> out;
  for (std::size_t i = 0; i < x.g(); ++i) out.push_back(ell::canonical_form(x.factor(i), l.divisors()[i]));
  return out;
}

#define SYZ_INSTANTIATE(K)                                                                                  \
  template class AbelianProduct<K>;                                                                         \
  template class ProductBundle<K>;                                                                          \
  template Pic0Element<K> negate<K>(const AbelianProduct<K>&, const Pic0Element<K>&);                       \
  template ProductBundle<K> twist<K>(const AbelianProduct<K>&, const ProductBundle<K>&, const Pic0Element<K>&); \
  template std::vector<ell::Divisor<K>> canonical_forms<K>(const AbelianProduct<K>&, const ProductBundle<K>&);

SYZ_INSTANTIATE(exact::PrimeField)
SYZ_INSTANTIATE(exact::Rationals)

}  // namespace syz::av
