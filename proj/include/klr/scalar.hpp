#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include <gmpxx.h>

namespace klr {

class ArithmeticError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Exact coefficient field: the rationals (characteristic 0) or F_p.
class Field {
 public:
  Field() = default;

  static Field rationals() { return Field(); }
  static Field prime(std::uint32_t p);
  /// Parses "Q", "QQ", "rationals", "F3", "F_3", "GF(3)".
  static Field parse(const std::string& name);

  bool is_rational() const { return p_ == 0; }
  std::uint32_t characteristic() const { return p_; }
  std::string name() const;

  bool operator==(const Field& o) const { return p_ == o.p_; }
  bool operator!=(const Field& o) const { return p_ != o.p_; }

 private:
  explicit Field(std::uint32_t p) : p_(p) {}
  std::uint32_t p_ = 0;
};

/// Element of a Field. Rational values are kept canonical by GMP;
/// residues are kept in [0, p).
class Scalar {
 public:
  Scalar() = default;

  static Scalar zero(const Field& f) { return from_int(f, 0); }
  static Scalar one(const Field& f) { return from_int(f, 1); }
  static Scalar from_int(const Field& f, long v);
  /// Fails when the denominator vanishes in the field.
  static Scalar from_rational(const Field& f, const mpq_class& q);

  Field field() const { return p_ == 0 ? Field::rationals() : Field::prime(p_); }
  bool is_zero() const { return p_ == 0 ? sgn(q_) == 0 : r_ == 0; }
  bool is_one() const { return p_ == 0 ? q_ == 1 : r_ == 1; }

  Scalar operator+(const Scalar& o) const;
  Scalar operator-(const Scalar& o) const;
  Scalar operator*(const Scalar& o) const;
  Scalar operator/(const Scalar& o) const;
  Scalar operator-() const;
  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);

  Scalar inverse() const;

  bool operator==(const Scalar& o) const;
  bool operator!=(const Scalar& o) const { return !(*this == o); }

  /// Rational value; for F_p the canonical residue in [0, p).
  mpq_class to_rational() const;
  std::uint64_t residue() const { return r_; }
  std::string to_string() const;

 private:
  void check_same(const Scalar& o) const;

  std::uint32_t p_ = 0;
  std::uint64_t r_ = 0;
  mpq_class q_;
};

bool is_prime(std::uint32_t p);

}  // namespace klr
