#include "klr/polynomial.hpp"

#include <algorithm>
#include <sstream>

namespace klr {

namespace {

Exponent zero_exponent() {
  Exponent e{};
  e.fill(0);
  return e;
}

Exponent add_exponents(const Exponent& a, const Exponent& b) {
  Exponent r;
  for (std::size_t i = 0; i < kMaxVars; ++i) {
    unsigned s = unsigned(a[i]) + unsigned(b[i]);
    if (s > 255) throw PolynomialError(PolynomialError::Kind::ExponentOverflow, "exponent exceeds 255");
    r[i] = static_cast<std::uint8_t>(s);
  }
  return r;
}

}  // namespace

int exponent_degree(const Exponent& e) {
  int d = 0;
  for (auto v : e) d += v;
  return d;
}

ExactPolynomial::ExactPolynomial(const Field& f, std::size_t nvars) : field_(f), nvars_(nvars) {
  if (nvars > kMaxVars)
    throw PolynomialError(PolynomialError::Kind::VariableCountMismatch, "too many variables");
}

ExactPolynomial ExactPolynomial::constant(const Field& f, std::size_t nvars, const Scalar& c) {
  ExactPolynomial p(f, nvars);
  p.add_term(zero_exponent(), c);
  return p;
}

ExactPolynomial ExactPolynomial::constant(const Field& f, std::size_t nvars, long c) {
  return constant(f, nvars, Scalar::from_int(f, c));
}

ExactPolynomial ExactPolynomial::variable(const Field& f, std::size_t nvars, std::size_t i) {
  if (i >= nvars) throw PolynomialError(PolynomialError::Kind::VariableCountMismatch, "variable index out of range");
  ExactPolynomial p(f, nvars);
  Exponent e = zero_exponent();
  e[i] = 1;
  p.add_term(e, Scalar::one(f));
  return p;
}

ExactPolynomial ExactPolynomial::monomial(const Field& f, std::size_t nvars, const std::vector<int>& exps,
                                          const Scalar& c) {
  if (exps.size() > nvars)
    throw PolynomialError(PolynomialError::Kind::VariableCountMismatch, "exponent vector too long");
  ExactPolynomial p(f, nvars);
  Exponent e = zero_exponent();
  for (std::size_t i = 0; i < exps.size(); ++i) {
    if (exps[i] < 0 || exps[i] > 255)
      throw PolynomialError(PolynomialError::Kind::ExponentOverflow, "exponent out of range");
    e[i] = static_cast<std::uint8_t>(exps[i]);
  }
  p.add_term(e, c);
  return p;
}

int ExactPolynomial::degree() const {
  int d = -1;
  for (const auto& [e, c] : terms_) d = std::max(d, exponent_degree(e));
  return d;
}

bool ExactPolynomial::is_homogeneous() const {
  int d = -1;
  for (const auto& [e, c] : terms_) {
    int k = exponent_degree(e);
    if (d >= 0 && k != d) return false;
    d = k;
  }
  return true;
}

Scalar ExactPolynomial::coefficient(const Exponent& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? Scalar::zero(field_) : it->second;
}

bool ExactPolynomial::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && exponent_degree(terms_.begin()->first) == 0);
}

Scalar ExactPolynomial::constant_value() const {
  if (!is_constant()) throw PolynomialError(PolynomialError::Kind::NotDivisible, "polynomial is not constant");
  return terms_.empty() ? Scalar::zero(field_) : terms_.begin()->second;
}

void ExactPolynomial::add_term(const Exponent& e, const Scalar& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

void ExactPolynomial::check_compatible(const ExactPolynomial& o) const {
  if (nvars_ != o.nvars_)
    throw PolynomialError(PolynomialError::Kind::VariableCountMismatch,
                          "variable counts differ: " + std::to_string(nvars_) + " vs " + std::to_string(o.nvars_));
  if (field_ != o.field_) throw ArithmeticError("polynomials over different fields");
}

ExactPolynomial& ExactPolynomial::operator+=(const ExactPolynomial& o) {
  check_compatible(o);
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

ExactPolynomial& ExactPolynomial::operator-=(const ExactPolynomial& o) {
  check_compatible(o);
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

ExactPolynomial ExactPolynomial::operator+(const ExactPolynomial& o) const {
  ExactPolynomial r(*this);
  r += o;
  return r;
}

ExactPolynomial ExactPolynomial::operator-(const ExactPolynomial& o) const {
  ExactPolynomial r(*this);
  r -= o;
  return r;
}

ExactPolynomial ExactPolynomial::operator-() const {
  ExactPolynomial r(field_, nvars_);
  for (const auto& [e, c] : terms_) r.terms_.emplace(e, -c);
  return r;
}

ExactPolynomial ExactPolynomial::operator*(const ExactPolynomial& o) const {
  check_compatible(o);
  ExactPolynomial r(field_, nvars_);
  for (const auto& [e1, c1] : terms_)
    for (const auto& [e2, c2] : o.terms_) r.add_term(add_exponents(e1, e2), c1 * c2);
  return r;
}

ExactPolynomial ExactPolynomial::scaled(const Scalar& c) const {
  ExactPolynomial r(field_, nvars_);
  if (c.is_zero()) return r;
  for (const auto& [e, v] : terms_) r.terms_.emplace(e, v * c);
  return r;
}

ExactPolynomial ExactPolynomial::pow(unsigned k) const {
  ExactPolynomial r = constant(field_, nvars_, 1);
  ExactPolynomial b = *this;
  while (k) {
    if (k & 1u) r = r * b;
    k >>= 1;
    if (k) b = b * b;
  }
  return r;
}

ExactPolynomial ExactPolynomial::mul_var(std::size_t i, unsigned k) const {
  if (i >= nvars_) throw PolynomialError(PolynomialError::Kind::VariableCountMismatch, "variable index out of range");
  Exponent e = zero_exponent();
  if (k > 255) throw PolynomialError(PolynomialError::Kind::ExponentOverflow, "exponent exceeds 255");
  e[i] = static_cast<std::uint8_t>(k);
  return mul_monomial(e);
}

ExactPolynomial ExactPolynomial::mul_monomial(const Exponent& m) const {
  ExactPolynomial r(field_, nvars_);
  for (const auto& [e, c] : terms_) r.terms_.emplace_hint(r.terms_.end(), add_exponents(e, m), c);
  return r;
}

ExactPolynomial ExactPolynomial::swap_variables(std::size_t i, std::size_t j) const {
  ExactPolynomial r(field_, nvars_);
  for (const auto& [e, c] : terms_) {
    Exponent s = e;
    std::swap(s[i], s[j]);
    r.terms_.emplace(s, c);
  }
  return r;
}

ExactPolynomial ExactPolynomial::divided_difference(std::size_t j) const {
  if (j + 1 >= nvars_)
    throw PolynomialError(PolynomialError::Kind::VariableCountMismatch, "divided difference index out of range");
  ExactPolynomial r(field_, nvars_);
  for (const auto& [e, c] : terms_) {
    int a = e[j], b = e[j + 1];
    if (a == b) continue;
    // x_j^a x_{j+1}^b - x_j^b x_{j+1}^a over x_{j+1} - x_j
    int lo = std::min(a, b);
    int m = std::abs(a - b) - 1;
    Scalar s = a > b ? -c : c;
    Exponent base = e;
    base[j] = static_cast<std::uint8_t>(lo);
    base[j + 1] = static_cast<std::uint8_t>(lo);
    for (int p = 0; p <= m; ++p) {
      Exponent t = base;
      t[j] = static_cast<std::uint8_t>(t[j] + p);
      t[j + 1] = static_cast<std::uint8_t>(t[j + 1] + m - p);
      r.add_term(t, s);
    }
  }
  return r;
}

ExactPolynomial ExactPolynomial::divide_by_difference(std::size_t i, std::size_t j) const {
  if (i >= nvars_ || j >= nvars_ || i == j)
    throw PolynomialError(PolynomialError::Kind::VariableCountMismatch, "bad variable pair");
  // Synthetic division in x_i with x_j treated as a coefficient.
  std::map<int, ExactPolynomial> by_power;
  for (const auto& [e, c] : terms_) {
    Exponent rest = e;
    int k = rest[i];
    rest[i] = 0;
    auto it = by_power.try_emplace(k, field_, nvars_).first;
    it->second.add_term(rest, c);
  }
  ExactPolynomial quotient(field_, nvars_);
  if (by_power.empty()) return quotient;
  int top = by_power.rbegin()->first;
  ExactPolynomial carry(field_, nvars_);
  for (int k = top; k >= 1; --k) {
    auto it = by_power.find(k);
    if (it != by_power.end()) carry += it->second;
    quotient += carry.mul_var(i, static_cast<unsigned>(k - 1));
    carry = carry.mul_var(j);
  }
  auto it0 = by_power.find(0);
  if (it0 != by_power.end()) carry += it0->second;
  if (!carry.is_zero())
    throw PolynomialError(PolynomialError::Kind::NotDivisible,
                          "polynomial not divisible by x" + std::to_string(i + 1) + " - x" + std::to_string(j + 1));
  return quotient;
}

bool ExactPolynomial::is_symmetric() const {
  for (std::size_t j = 0; j + 1 < nvars_; ++j)
    if (swap_variables(j, j + 1) != *this) return false;
  return true;
}

ExactPolynomial ExactPolynomial::extended(std::size_t nvars) const {
  if (nvars < nvars_) {
    for (const auto& [e, c] : terms_)
      for (std::size_t i = nvars; i < nvars_; ++i)
        if (e[i] != 0)
          throw PolynomialError(PolynomialError::Kind::VariableCountMismatch, "cannot drop a used variable");
  }
  ExactPolynomial r(field_, nvars);
  r.terms_ = terms_;
  return r;
}

bool ExactPolynomial::operator==(const ExactPolynomial& o) const {
  return field_ == o.field_ && nvars_ == o.nvars_ && terms_ == o.terms_;
}

std::string ExactPolynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [e, c] = *it;
    if (!first) os << " + ";
    first = false;
    bool unit = c.is_one() && exponent_degree(e) > 0;
    if (!unit) os << c.to_string();
    bool need_star = !unit;
    for (std::size_t i = 0; i < nvars_; ++i) {
      if (e[i] == 0) continue;
      if (need_star) os << '*';
      os << 'x' << (i + 1);
      if (e[i] > 1) os << '^' << int(e[i]);
      need_star = true;
    }
  }
  return os.str();
}

ExactPolynomial complete_homogeneous2(const Field& f, std::size_t nvars, std::size_t i, std::size_t j, int m) {
  ExactPolynomial r(f, nvars);
  for (int p = 0; p <= m; ++p) {
    Exponent e = zero_exponent();
    e[i] = static_cast<std::uint8_t>(p);
    e[j] = static_cast<std::uint8_t>(e[j] + m - p);
    r.add_term(e, Scalar::one(f));
  }
  return r;
}

ExactPolynomial elementary_symmetric(const Field& f, std::size_t n, std::size_t k) {
  ExactPolynomial r(f, n);
  if (k > n) return r;
  std::vector<int> pick(n, 0);
  std::fill(pick.end() - static_cast<long>(k), pick.end(), 1);
  do {
    Exponent e = zero_exponent();
    for (std::size_t i = 0; i < n; ++i) e[i] = static_cast<std::uint8_t>(pick[i]);
    r.add_term(e, Scalar::one(f));
  } while (std::next_permutation(pick.begin(), pick.end()));
  return r;
}

}  // namespace klr
