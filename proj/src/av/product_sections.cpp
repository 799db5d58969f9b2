#include "syzlab/av/product_sections.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace syz::av {

template <class K>
ProductSectionSpace<K>::ProductSectionSpace(std::vector<ell::SectionSpace<K>> factors, ProductBundle<K> bundle,
                                            std::vector<std::uint32_t> selection, bool tag_parity)
    : factors_(std::move(factors)), bundle_(std::move(bundle)), selection_(std::move(selection)) {
  if (factors_.empty()) throw std::invalid_argument("product space needs at least one factor");
  for (const auto& f : factors_) full_ *= f.dimension();
  position_.assign(full_, -1);
  for (std::size_t i = 0; i < selection_.size(); ++i) {
    if (selection_[i] >= full_ || (i > 0 && selection_[i] <= selection_[i - 1]))
      throw std::invalid_argument("selection must be increasing flat indices");
    position_[selection_[i]] = static_cast<std::int64_t>(i);
  }
  if (tag_parity) {
    for (const auto& f : factors_) {
      if (!f.has_parity()) throw std::invalid_argument("factor without parity tags");
    }
    for (auto flat : selection_) {
      const auto mi = multi_index(flat);
      ell::Parity p = ell::Parity::Even;
      for (std::size_t k = 0; k < mi.size(); ++k) p = ell::parity_product(p, factors_[k].parity[mi[k]]);
      parity_.push_back(p);
    }
  }
}

template <class K>
std::vector<std::size_t> ProductSectionSpace<K>::multi_index(std::uint32_t flat) const {
  std::vector<std::size_t> mi(factors_.size());
  std::size_t rest = flat;
  for (std::size_t k = factors_.size(); k-- > 0;) {
    const std::size_t d = factors_[k].dimension();
    mi[k] = rest % d;
    rest /= d;
  }
  return mi;
}

template <class K>
std::uint32_t ProductSectionSpace<K>::flat_of(const std::vector<std::size_t>& multi) const {
  std::size_t flat = 0;
  for (std::size_t k = 0; k < factors_.size(); ++k) flat = flat * factors_[k].dimension() + multi[k];
  return static_cast<std::uint32_t>(flat);
}

template <class K>
ProductSectionSpace<K> sections(const AbelianProduct<K>& x, const ProductBundle<K>& l) {
  if (l.divisors().size() != x.g()) throw std::invalid_argument("bundle factor count differs from g");
  const bool sym = l.symmetric(x);
  std::vector<ell::SectionSpace<K>> fs;
  std::size_t full = 1;
  for (std::size_t i = 0; i < x.g(); ++i) {
    auto s = ell::rr_basis(x.factor(i), l.divisors()[i]);
    if (sym) s = ell::with_parity(s);
    full *= s.dimension();
    fs.push_back(std::move(s));
  }
  std::vector<std::uint32_t> sel(full);
  std::iota(sel.begin(), sel.end(), 0u);
  return ProductSectionSpace<K>(std::move(fs), l, std::move(sel), sym);
}

template <class K>
ProductSectionSpace<K> plus_space(const AbelianProduct<K>& x, const ProductBundle<K>& l) {
  if (l.twist_element() && !l.twist_element()->is_zero()) throw std::invalid_argument("plus space needs an untwisted bundle");
  if (!l.totally_symmetric(x)) throw std::invalid_argument("bundle not totally symmetric");
  const auto full = sections(x, l);
  std::vector<std::uint32_t> sel;
  for (std::size_t i = 0; i < full.dimension(); ++i) {
    if (full.parity()[i] == ell::Parity::Even) sel.push_back(full.flat(i));
  }
  return ProductSectionSpace<K>(full.factors(), l, std::move(sel), true);
}

template <class K>
MultTable<K>::MultTable(const ProductSectionSpace<K>& s1, const ProductSectionSpace<K>& s2, const ProductSectionSpace<K>& t)
    : field_(t.field()), left_(s1.dimension()), right_(s2.dimension()), target_(t.dimension()) {
  const std::size_t g = t.g();
  if (s1.g() != g || s2.g() != g) throw ell::IncompatibleBundles();
  std::vector<std::vector<exact::SparseVec<K>>> per_factor(g);
  std::vector<std::size_t> right_dims(g), target_dims(g);
  for (std::size_t f = 0; f < g; ++f) {
    ell::SectionMultiplier<K> m(s1.factor(f), s2.factor(f), t.factor(f));
    per_factor[f] = m.table().columns();
    right_dims[f] = s2.factor(f).dimension();
    target_dims[f] = t.factor(f).dimension();
  }
  std::vector<std::vector<std::size_t>> mi1(left_), mi2(right_);
  for (std::size_t i = 0; i < left_; ++i) mi1[i] = s1.multi_index(s1.flat(i));
  for (std::size_t j = 0; j < right_; ++j) mi2[j] = s2.multi_index(s2.flat(j));
  columns_.resize(left_ * right_);
  exact::SparseVec<K> cur, next;
  for (std::size_t i = 0; i < left_; ++i) {
    for (std::size_t j = 0; j < right_; ++j) {
      cur.assign(1, {0u, field_.one()});
      for (std::size_t f = 0; f < g && !cur.empty(); ++f) {
        const auto& col = per_factor[f][mi1[i][f] * right_dims[f] + mi2[j][f]];
        next.clear();
        for (const auto& [idx, v] : cur) {
          for (const auto& [k, w] : col) {
            next.push_back({static_cast<std::uint32_t>(idx * target_dims[f] + k), field_.mul(v, w)});
          }
        }
        std::swap(cur, next);
      }
      auto& out = columns_[i * right_ + j];
      for (const auto& [flat, v] : cur) {
        const auto pos = t.position(flat);
        if (pos < 0) throw ell::ConsistencyError("product leaves the target subspace");
        out.push_back({static_cast<std::uint32_t>(pos), v});
      }
      std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    }
  }
}

template <class K>
exact::SparseVec<K> MultTable<K>::apply(std::size_t i, const exact::SparseVec<K>& right) const {
  exact::SparseVec<K> acc;
  for (const auto& [j, c] : right) {
    for (const auto& [k, v] : columns_[i * right_ + j]) acc.push_back({k, field_.mul(c, v)});
  }
  exact::normalize(field_, acc);
  return acc;
}

template <class K>
exact::Matrix<K> MultTable<K>::matrix() const {
  return exact::Matrix<K>::from_columns(field_, target_, columns_);
}

#define SYZ_INSTANTIATE(K)                                                                            \
  template class ProductSectionSpace<K>;                                                              \
  template class MultTable<K>;                                                                        \
  template ProductSectionSpace<K> sections<K>(const AbelianProduct<K>&, const ProductBundle<K>&);     \
  template ProductSectionSpace<K> plus_space<K>(const AbelianProduct<K>&, const ProductBundle<K>&);

SYZ_INSTANTIATE(exact::PrimeField)
SYZ_INSTANTIATE(exact::Rationals)

}  // namespace syz::av
