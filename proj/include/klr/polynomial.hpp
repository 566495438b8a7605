#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "klr/scalar.hpp"

namespace klr {

constexpr std::size_t kMaxVars = 16;
using Exponent = std::array<std::uint8_t, kMaxVars>;

class PolynomialError : public std::runtime_error {
 public:
  enum class Kind { VariableCountMismatch, NotDivisible, ExponentOverflow };
  PolynomialError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

/// Multivariate polynomial with exact coefficients in a fixed number of
/// variables (0-based indices in the API, printed as x1, x2, ...).
class ExactPolynomial {
 public:
  using Terms = std::map<Exponent, Scalar>;

  ExactPolynomial() = default;
  ExactPolynomial(const Field& f, std::size_t nvars);

  static ExactPolynomial constant(const Field& f, std::size_t nvars, const Scalar& c);
  static ExactPolynomial constant(const Field& f, std::size_t nvars, long c);
  static ExactPolynomial variable(const Field& f, std::size_t nvars, std::size_t i);
  static ExactPolynomial monomial(const Field& f, std::size_t nvars, const std::vector<int>& exps, const Scalar& c);

  const Field& field() const { return field_; }
  std::size_t nvars() const { return nvars_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  int degree() const;  // -1 for zero
  bool is_homogeneous() const;
  Scalar coefficient(const Exponent& e) const;
  /// Constant term when the polynomial is constant; throws otherwise.
  Scalar constant_value() const;
  bool is_constant() const;

  void add_term(const Exponent& e, const Scalar& c);

  ExactPolynomial operator+(const ExactPolynomial& o) const;
  ExactPolynomial operator-(const ExactPolynomial& o) const;
  ExactPolynomial operator*(const ExactPolynomial& o) const;
  ExactPolynomial operator-() const;
  ExactPolynomial& operator+=(const ExactPolynomial& o);
  ExactPolynomial& operator-=(const ExactPolynomial& o);
  ExactPolynomial scaled(const Scalar& c) const;
  ExactPolynomial pow(unsigned k) const;

  /// Multiplies by x_i^k.
  ExactPolynomial mul_var(std::size_t i, unsigned k = 1) const;
  ExactPolynomial mul_monomial(const Exponent& e) const;
  /// Exchanges x_i and x_j.
  ExactPolynomial swap_variables(std::size_t i, std::size_t j) const;
  /// (f - s_j f) / (x_{j+1} - x_j) with 0-based j.
  ExactPolynomial divided_difference(std::size_t j) const;
  /// Exact quotient f / (x_i - x_j); throws NotDivisible otherwise.
  ExactPolynomial divide_by_difference(std::size_t i, std::size_t j) const;
  bool is_symmetric() const;
  /// Same polynomial viewed in a ring with more (or equally many) variables.
  ExactPolynomial extended(std::size_t nvars) const;

  bool operator==(const ExactPolynomial& o) const;
  bool operator!=(const ExactPolynomial& o) const { return !(*this == o); }
  std::string to_string() const;

 private:
  void check_compatible(const ExactPolynomial& o) const;

  Field field_;
  std::size_t nvars_ = 0;
  Terms terms_;
};

int exponent_degree(const Exponent& e);
/// Complete homogeneous polynomial h_m(x_i, x_j).
ExactPolynomial complete_homogeneous2(const Field& f, std::size_t nvars, std::size_t i, std::size_t j, int m);
/// Elementary symmetric polynomial e_k(x_0..x_{n-1}).
ExactPolynomial elementary_symmetric(const Field& f, std::size_t n, std::size_t k);

}  // namespace klr
