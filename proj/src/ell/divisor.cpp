#include "syzlab/ell/divisor.hpp"

#include <algorithm>

namespace syz::ell {

template <class K>
Divisor<K>::Divisor(std::vector<Term> terms) {
  std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) { return a.first < b.first; });
  for (auto& t : terms) {
    if (!terms_.empty() && terms_.back().first == t.first) {
      terms_.back().second += t.second;
    } else {
      terms_.push_back(std::move(t));
    }
  }
  std::erase_if(terms_, [](const Term& t) { return t.second == 0; });
}

template <class K>
int Divisor<K>::degree() const {
  int d = 0;
  for (const auto& t : terms_) d += t.second;
  return d;
}

template <class K>
int Divisor<K>::multiplicity(const PointT& p) const {
  for (const auto& t : terms_) {
    if (t.first == p) return t.second;
  }
  return 0;
}

template <class K>
bool Divisor<K>::origin_only() const {
  return std::all_of(terms_.begin(), terms_.end(), [](const Term& t) { return t.first.infinity; });
}

template <class K>
Divisor<K> Divisor<K>::scaled(int k) const {
  auto t = terms_;
  for (auto& e : t) e.second *= k;
  return Divisor(std::move(t));
}

template <class K>
Divisor<K> Divisor<K>::pulled_back_by_inversion(const Curve<K>& curve) const {
  auto t = terms_;
  for (auto& e : t) e.first = curve.neg(e.first);
  return Divisor(std::move(t));
}

template <class K>
std::string Divisor<K>::to_string(const K& field) const {
  if (terms_.empty()) return "0";
  std::string s;
  for (const auto& [p, m] : terms_) {
    if (!s.empty()) s += " + ";
    s += std::to_string(m) + "*";
    s += p.infinity ? std::string("O") : "(" + field.format(p.x) + "," + field.format(p.y) + ")";
  }
  return s;
}

template <class K>
Point<K> divisor_sum(const Curve<K>& curve, const Divisor<K>& d) {
  Point<K> acc = Point<K>::origin();
  for (const auto& [p, m] : d.terms()) acc = curve.add(acc, curve.multiply(m, p));
  return acc;
}

template <class K>
Divisor<K> canonical_form(const Curve<K>& curve, const Divisor<K>& d) {
  return Divisor<K>::origin(d.degree() - 1) + Divisor<K>::at(divisor_sum(curve, d), 1);
}

template class Divisor<exact::PrimeField>;
template class Divisor<exact::Rationals>;
template Point<exact::PrimeField> divisor_sum(const Curve<exact::PrimeField>&, const Divisor<exact::PrimeField>&);
template Point<exact::Rationals> divisor_sum(const Curve<exact::Rationals>&, const Divisor<exact::Rationals>&);
template Divisor<exact::PrimeField> canonical_form(const Curve<exact::PrimeField>&, const Divisor<exact::PrimeField>&);
template Divisor<exact::Rationals> canonical_form(const Curve<exact::Rationals>&, const Divisor<exact::Rationals>&);

}  // namespace syz::ell
