#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include <gmpxx.h>

#include "klr/polynomial.hpp"
#include "klr/scalar.hpp"

namespace klr {

class CartanError : public std::runtime_error {
 public:
  enum class Kind { NotSymmetrizable, DiagonalNotTwo, SignViolation, IndexMismatch, NotSquare, NegativeCoefficient };
  CartanError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  Kind kind() const { return kind_; }
  static const char* kind_name(Kind k);

 private:
  Kind kind_;
};

using IntMatrix = std::vector<std::vector<int>>;

/// Nodes are 0-based internally and printed 1-based.
class CartanDatum {
 public:
  CartanDatum() = default;

  /// Validates the matrix and computes minimal symmetrizers per
  /// indecomposable block when none are supplied.
  static CartanDatum validate(const IntMatrix& matrix, const std::optional<std::vector<int>>& symmetrizers = {});

  std::size_t rank() const { return a_.size(); }
  int a(std::size_t i, std::size_t j) const { return a_[i][j]; }
  int d(std::size_t i) const { return d_[i]; }
  const IntMatrix& matrix() const { return a_; }
  const std::vector<int>& symmetrizers() const { return d_; }
  /// (alpha_i, alpha_j) = d_i a_ij
  int simple_form(std::size_t i, std::size_t j) const { return d_[i] * a_[i][j]; }
  bool simply_laced() const;
  bool finite_type() const;
  std::string to_string() const;

  bool operator==(const CartanDatum& o) const { return a_ == o.a_ && d_ == o.d_; }

 private:
  IntMatrix a_;
  std::vector<int> d_;
};

/// Lambda = sum_i coeffs[i] Lambda_i with coeffs[i] = <h_i, Lambda> >= 0.
struct DominantWeight {
  std::vector<int> coeffs;
  bool operator==(const DominantWeight& o) const { return coeffs == o.coeffs; }
};

/// alpha = sum_i coeffs[i] alpha_i with coeffs[i] >= 0.
struct RootVector {
  std::vector<int> coeffs;
  int height() const;
  bool operator==(const RootVector& o) const { return coeffs == o.coeffs; }
};

using Sequence = std::vector<int>;

DominantWeight make_weight(const CartanDatum& c, const std::vector<int>& coeffs);
RootVector make_root(const CartanDatum& c, const std::vector<int>& coeffs);
RootVector root_of_sequence(const CartanDatum& c, const Sequence& nu);

int bilinear_form(const RootVector& a, const RootVector& b, const CartanDatum& c);
/// <h_i, Lambda - beta>
int pairing(std::size_t i, const DominantWeight& lambda, const RootVector& beta, const CartanDatum& c);
/// 2(alpha, Lambda) - (alpha, alpha)
int d_lambda_alpha(const DominantWeight& lambda, const RootVector& alpha, const CartanDatum& c);
/// All sequences in I^alpha in lexicographic order.
std::vector<Sequence> enumerate_sequences(const RootVector& alpha);
std::string sequence_to_string(const Sequence& nu);

/// Coefficients c_{i,j,k,q} of Q_ij(u, v) = sum c u^k v^q, stored as
/// rationals and mapped into the working field on use.
class QMatrix {
 public:
  using Key = std::tuple<int, int, int, int>;

  QMatrix() = default;
  explicit QMatrix(std::size_t rank) : rank_(rank) {}

  /// Q_ij = u^{-a_ij} + v^{-a_ji} for i != j, except Q_ij = 1 when a_ij = 0.
  static QMatrix default_for(const CartanDatum& c);

  std::size_t rank() const { return rank_; }
  void set(int i, int j, int k, int q, const mpq_class& c);
  /// Replaces Q_ij by the given terms and Q_ji by the mirrored ones.
  void set_pair(int i, int j, const std::vector<std::tuple<int, int, mpq_class>>& terms);
  mpq_class coefficient(int i, int j, int k, int q) const;
  const std::map<Key, mpq_class>& coefficients() const { return c_; }

  /// Q_ij(x_u, x_v) as a polynomial in nvars variables (0-based u, v).
  ExactPolynomial poly(const Field& f, int i, int j, std::size_t nvars, std::size_t u, std::size_t v) const;
  std::string to_string(int i, int j) const;

 private:
  std::size_t rank_ = 0;
  std::map<Key, mpq_class> c_;
};

struct QValidationIssue {
  enum class Kind { SymmetryViolation, LeadingCoefficientNotUnit, HomogeneitySupportViolation, DiagonalNonzero };
  Kind kind;
  std::string message;
  static const char* kind_name(Kind k);
};

/// Empty result means Q is valid for the datum over the field.
std::vector<QValidationIssue> validate_q_matrix(const QMatrix& q, const CartanDatum& c, const Field& f);

}  // namespace klr
