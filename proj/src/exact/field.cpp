#include "syzlab/exact/field.hpp"

namespace syz::exact {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d : {2ull, 3ull, 5ull, 7ull}) {
    if (n % d == 0) return n == d;
  }
  for (std::uint64_t d = 11; d * d <= n; d += 2) {
    if (n % d == 0) return false;
  }
  return true;
}

PrimeField::PrimeField(std::uint32_t p) : p_(p) {
  if (p >= (1u << 31)) throw FieldError("prime must be below 2^31");
  if (!is_prime(p)) throw FieldError(std::to_string(p) + " is not prime");
  if (p == 2 || p == 3) throw FieldError("characteristic 2 and 3 are not supported");
}

PrimeField::value_type PrimeField::inv(value_type a) const {
  if (a == 0) throw std::domain_error("inverse of zero");
  // extended Euclid on signed 64-bit
  std::int64_t t = 0, new_t = 1;
  std::int64_t r = p_, new_r = a;
  while (new_r != 0) {
    std::int64_t q = r / new_r;
    std::int64_t tmp = t - q * new_t;
    t = new_t;
    new_t = tmp;
    tmp = r - q * new_r;
    r = new_r;
    new_r = tmp;
  }
  if (t < 0) t += p_;
  return static_cast<value_type>(t);
}

PrimeField::value_type PrimeField::pow(value_type a, std::uint64_t e) const noexcept {
  value_type result = 1;
  value_type base = a;
  while (e > 0) {
    if (e & 1) result = mul(result, base);
    base = mul(base, base);
    e >>= 1;
  }
  return result;
}

bool PrimeField::sqrt(value_type a, value_type& root) const {
  if (a == 0) {
    root = 0;
    return true;
  }
  if (pow(a, (p_ - 1) / 2) != 1) return false;
  if (p_ % 4 == 3) {
    root = pow(a, (p_ + 1) / 4);
    return true;
  }
  std::uint32_t q = p_ - 1;
  std::uint32_t s = 0;
  while ((q & 1) == 0) {
    q >>= 1;
    ++s;
  }
  value_type z = 2;
  while (pow(z, (p_ - 1) / 2) != p_ - 1) ++z;
  value_type c = pow(z, q);
  value_type x = pow(a, (q + 1) / 2);
  value_type t = pow(a, q);
  std::uint32_t m = s;
  while (t != 1) {
    std::uint32_t i = 0;
    value_type tt = t;
    while (tt != 1) {
      tt = mul(tt, tt);
      ++i;
    }
    value_type b = c;
    for (std::uint32_t j = 0; j + i + 1 < m; ++j) b = mul(b, b);
    x = mul(x, b);
    c = mul(b, b);
    t = mul(t, c);
    m = i;
  }
  root = x;
  return true;
}

Rationals::value_type Rationals::inv(const value_type& a) const {
  if (sgn(a) == 0) throw std::domain_error("inverse of zero");
  return 1 / a;
}

Rationals::value_type Rationals::pow(const value_type& a, std::uint64_t e) const {
  value_type result = 1;
  value_type base = a;
  while (e > 0) {
    if (e & 1) result *= base;
    base *= base;
    e >>= 1;
  }
  return result;
}

bool Rationals::sqrt(const value_type& a, value_type& root) const {
  if (sgn(a) < 0) return false;
  mpz_class num = a.get_num();
  mpz_class den = a.get_den();
  if (!mpz_perfect_square_p(num.get_mpz_t()) || !mpz_perfect_square_p(den.get_mpz_t())) return false;
  mpz_class rn, rd;
  mpz_sqrt(rn.get_mpz_t(), num.get_mpz_t());
  mpz_sqrt(rd.get_mpz_t(), den.get_mpz_t());
  root = mpq_class(rn, rd);
  root.canonicalize();
  return true;
}

void check_syzygy_characteristic(std::uint32_t characteristic, int syzygy_index) {
  if (characteristic == 0) return;
  if (characteristic == 2 || characteristic == 3) {
    throw FieldError("characteristic 2 and 3 are not supported");
  }
  const auto p1 = static_cast<std::uint32_t>(syzygy_index + 1);
  const auto p2 = static_cast<std::uint32_t>(syzygy_index + 2);
  if (p1 % characteristic == 0 || p2 % characteristic == 0) {
    throw FieldError("characteristic " + std::to_string(characteristic) + " divides " +
                     std::to_string(syzygy_index) + "+1 or " + std::to_string(syzygy_index) +
                     "+2; use the characteristic-guard override to force the computation");
  }
}

}  // namespace syz::exact
