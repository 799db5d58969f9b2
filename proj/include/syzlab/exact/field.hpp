#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include <gmpxx.h>

namespace syz::exact {

/// Raised when two operands live over different fields.
class FieldMismatch : public std::logic_error {
 public:
  FieldMismatch() : std::logic_error("field mismatch") {}
};

/// Raised for an inadmissible field (non-prime modulus, characteristic 2 or 3,
/// or a characteristic that collides with a requested syzygy index).
class FieldError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

bool is_prime(std::uint64_t n);

/// The prime field F_p, 3 < p < 2^31. Elements are residues in [0, p).
class PrimeField {
 public:
  using value_type = std::uint32_t;

  static constexpr std::uint32_t kDefaultPrime = 10007;

  explicit PrimeField(std::uint32_t p = kDefaultPrime);

  std::uint32_t characteristic() const noexcept { return p_; }
  std::string name() const { return "F_" + std::to_string(p_); }

  value_type zero() const noexcept { return 0; }
  value_type one() const noexcept { return 1; }

  value_type from_int(std::int64_t v) const noexcept {
    std::int64_t r = v % static_cast<std::int64_t>(p_);
    return static_cast<value_type>(r < 0 ? r + p_ : r);
  }
  value_type add(value_type a, value_type b) const noexcept {
    std::uint32_t s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  value_type sub(value_type a, value_type b) const noexcept {
    return a >= b ? a - b : a + p_ - b;
  }
  value_type neg(value_type a) const noexcept { return a == 0 ? 0 : p_ - a; }
  value_type mul(value_type a, value_type b) const noexcept {
    return static_cast<value_type>(static_cast<std::uint64_t>(a) * b % p_);
  }
  value_type inv(value_type a) const;
  value_type div(value_type a, value_type b) const { return mul(a, inv(b)); }
  value_type pow(value_type a, std::uint64_t e) const noexcept;

  bool is_zero(value_type a) const noexcept { return a == 0; }
  bool equal(value_type a, value_type b) const noexcept { return a == b; }

  /// Square root if one exists (Tonelli-Shanks); returns false otherwise.
  bool sqrt(value_type a, value_type& root) const;

  std::string format(value_type a) const { return std::to_string(a); }

  friend bool operator==(const PrimeField& x, const PrimeField& y) noexcept { return x.p_ == y.p_; }
  friend bool operator!=(const PrimeField& x, const PrimeField& y) noexcept { return x.p_ != y.p_; }

 private:
  std::uint32_t p_;
};

/// The rational numbers with GMP arbitrary precision.
class Rationals {
 public:
  using value_type = mpq_class;

  std::uint32_t characteristic() const noexcept { return 0; }
  std::string name() const { return "Q"; }

  value_type zero() const { return 0; }
  value_type one() const { return 1; }
  value_type from_int(std::int64_t v) const { return mpq_class(mpz_class(static_cast<long>(v))); }
  value_type add(const value_type& a, const value_type& b) const { return a + b; }
  value_type sub(const value_type& a, const value_type& b) const { return a - b; }
  value_type neg(const value_type& a) const { return -a; }
  value_type mul(const value_type& a, const value_type& b) const { return a * b; }
  value_type inv(const value_type& a) const;
  value_type div(const value_type& a, const value_type& b) const { return a * inv(b); }
  value_type pow(const value_type& a, std::uint64_t e) const;

  bool is_zero(const value_type& a) const { return sgn(a) == 0; }
  bool equal(const value_type& a, const value_type& b) const { return a == b; }
  bool sqrt(const value_type& a, value_type& root) const;

  std::string format(const value_type& a) const { return a.get_str(); }

  friend bool operator==(const Rationals&, const Rationals&) noexcept { return true; }
  friend bool operator!=(const Rationals&, const Rationals&) noexcept { return false; }
};

/// Rejects characteristics that divide p+1 or p+2 for syzygy index p.
/// Characteristic 0 always passes.
void check_syzygy_characteristic(std::uint32_t characteristic, int syzygy_index);

/// A field element tagged with its field. Arithmetic between elements of
/// different fields throws FieldMismatch.
template <class K>
class Scalar {
 public:
  using value_type = typename K::value_type;

  Scalar(K field, value_type v) : field_(std::move(field)), v_(std::move(v)) {}
  static Scalar from_int(const K& field, std::int64_t v) { return Scalar(field, field.from_int(v)); }

  const K& field() const noexcept { return field_; }
  const value_type& value() const noexcept { return v_; }
  bool is_zero() const { return field_.is_zero(v_); }

  Scalar inverse() const { return Scalar(field_, field_.inv(v_)); }

  friend Scalar operator+(const Scalar& a, const Scalar& b) {
    check(a, b);
    return Scalar(a.field_, a.field_.add(a.v_, b.v_));
  }
  friend Scalar operator-(const Scalar& a, const Scalar& b) {
    check(a, b);
    return Scalar(a.field_, a.field_.sub(a.v_, b.v_));
  }
  friend Scalar operator*(const Scalar& a, const Scalar& b) {
    check(a, b);
    return Scalar(a.field_, a.field_.mul(a.v_, b.v_));
  }
  friend Scalar operator/(const Scalar& a, const Scalar& b) {
    check(a, b);
    return Scalar(a.field_, a.field_.div(a.v_, b.v_));
  }
  friend Scalar operator-(const Scalar& a) { return Scalar(a.field_, a.field_.neg(a.v_)); }
  friend bool operator==(const Scalar& a, const Scalar& b) {
    return a.field_ == b.field_ && a.field_.equal(a.v_, b.v_);
  }
  friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

  std::string to_string() const { return field_.format(v_); }

 private:
  static void check(const Scalar& a, const Scalar& b) {
    if (a.field_ != b.field_) throw FieldMismatch();
  }

  K field_;
  value_type v_;
};

}  // namespace syz::exact
