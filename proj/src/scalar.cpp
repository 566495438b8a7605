#include "klr/scalar.hpp"

#include <algorithm>
#include <cctype>

namespace klr {

bool is_prime(std::uint32_t p) {
  if (p < 2) return false;
  for (std::uint64_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

Field Field::prime(std::uint32_t p) {
  if (!is_prime(p)) throw ArithmeticError("field characteristic " + std::to_string(p) + " is not prime");
  return Field(p);
}

Field Field::parse(const std::string& name) {
  std::string s;
  for (char c : name)
    if (!std::isspace(static_cast<unsigned char>(c))) s += static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  if (s == "Q" || s == "QQ" || s == "RATIONALS") return rationals();
  std::string digits;
  if (s.rfind("GF(", 0) == 0 && s.back() == ')') {
    digits = s.substr(3, s.size() - 4);
  } else if (s.rfind("F_", 0) == 0) {
    digits = s.substr(2);
  } else if (s.rfind("F", 0) == 0) {
    digits = s.substr(1);
  }
  if (digits.empty() || !std::all_of(digits.begin(), digits.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
    throw ArithmeticError("unrecognized field '" + name + "'");
  return prime(static_cast<std::uint32_t>(std::stoul(digits)));
}

std::string Field::name() const { return p_ == 0 ? "Q" : "F" + std::to_string(p_); }

namespace {

std::uint64_t reduce_long(long v, std::uint32_t p) {
  long m = v % static_cast<long>(p);
  if (m < 0) m += p;
  return static_cast<std::uint64_t>(m);
}

std::uint64_t reduce_mpz(const mpz_class& z, std::uint32_t p) {
  mpz_class m = z % p;
  if (m < 0) m += p;
  return m.get_ui();
}

std::uint64_t inv_mod(std::uint64_t a, std::uint32_t p) {
  std::int64_t t = 0, nt = 1, r = p, nr = static_cast<std::int64_t>(a);
  while (nr != 0) {
    std::int64_t q = r / nr;
    std::int64_t tmp = t - q * nt;
    t = nt;
    nt = tmp;
    tmp = r - q * nr;
    r = nr;
    nr = tmp;
  }
  if (t < 0) t += p;
  return static_cast<std::uint64_t>(t);
}

}  // namespace

Scalar Scalar::from_int(const Field& f, long v) {
  Scalar s;
  s.p_ = f.characteristic();
  if (s.p_ == 0)
    s.q_ = v;
  else
    s.r_ = reduce_long(v, s.p_);
  return s;
}

Scalar Scalar::from_rational(const Field& f, const mpq_class& q) {
  Scalar s;
  s.p_ = f.characteristic();
  if (s.p_ == 0) {
    s.q_ = q;
    s.q_.canonicalize();
    return s;
  }
  std::uint64_t den = reduce_mpz(q.get_den(), s.p_);
  if (den == 0) throw ArithmeticError("denominator vanishes in " + f.name());
  s.r_ = reduce_mpz(q.get_num(), s.p_) * inv_mod(den, s.p_) % s.p_;
  return s;
}

void Scalar::check_same(const Scalar& o) const {
  if (p_ != o.p_) throw ArithmeticError("scalars from different fields");
}

Scalar Scalar::operator+(const Scalar& o) const {
  Scalar s(*this);
  s += o;
  return s;
}

Scalar Scalar::operator-(const Scalar& o) const {
  Scalar s(*this);
  s -= o;
  return s;
}

Scalar Scalar::operator*(const Scalar& o) const {
  Scalar s(*this);
  s *= o;
  return s;
}

Scalar Scalar::operator/(const Scalar& o) const { return *this * o.inverse(); }

Scalar Scalar::operator-() const {
  Scalar s(*this);
  if (p_ == 0)
    s.q_ = -q_;
  else
    s.r_ = r_ == 0 ? 0 : p_ - r_;
  return s;
}

Scalar& Scalar::operator+=(const Scalar& o) {
  check_same(o);
  if (p_ == 0)
    q_ += o.q_;
  else
    r_ = (r_ + o.r_) % p_;
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
  check_same(o);
  if (p_ == 0)
    q_ -= o.q_;
  else
    r_ = (r_ + p_ - o.r_) % p_;
  return *this;
}

Scalar& Scalar::operator*=(const Scalar& o) {
  check_same(o);
  if (p_ == 0)
    q_ *= o.q_;
  else
    r_ = r_ * o.r_ % p_;
  return *this;
}

Scalar Scalar::inverse() const {
  if (is_zero()) throw ArithmeticError("division by zero");
  Scalar s(*this);
  if (p_ == 0)
    s.q_ = 1 / q_;
  else
    s.r_ = inv_mod(r_, p_);
  return s;
}

bool Scalar::operator==(const Scalar& o) const {
  if (p_ != o.p_) return false;
  return p_ == 0 ? q_ == o.q_ : r_ == o.r_;
}

mpq_class Scalar::to_rational() const {
  if (p_ == 0) return q_;
  return mpq_class(static_cast<unsigned long>(r_));
}

std::string Scalar::to_string() const {
  if (p_ == 0) return q_.get_str();
  return std::to_string(r_);
}

}  // namespace klr
