#pragma once

#include <cstddef>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "klr/polynomial.hpp"
#include "klr/scalar.hpp"

namespace klr {

class NilHeckeError : public std::runtime_error {
 public:
  enum class Kind { VariableCountMismatch, ExpansionFailure, ParameterOutOfRange, RankMismatch };
  NilHeckeError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

/// x_k or tau_k with 1-based k.
struct NhLetter {
  enum class Kind { X, Tau } kind;
  int index;
  bool operator==(const NhLetter& o) const { return kind == o.kind && index == o.index; }
};
using NhWord = std::vector<NhLetter>;

std::string word_to_string(const NhWord& w);

/// Formal combination of unreduced words in x_1..x_n, tau_1..tau_{n-1}.
class NilHeckeElement {
 public:
  NilHeckeElement() = default;
  NilHeckeElement(const Field& f, int n) : field_(f), n_(n) {}

  static NilHeckeElement identity(const Field& f, int n);
  static NilHeckeElement word(const Field& f, int n, const NhWord& w, const Scalar& c);
  static NilHeckeElement x(const Field& f, int n, int k, int power = 1);
  static NilHeckeElement tau(const Field& f, int n, int j);

  const Field& field() const { return field_; }
  int n() const { return n_; }
  const std::vector<std::pair<NhWord, Scalar>>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  /// Degree of each word: 2 per x, -2 per tau.
  static int word_degree(const NhWord& w);
  bool is_homogeneous() const;

  NilHeckeElement operator*(const NilHeckeElement& o) const;
  NilHeckeElement operator+(const NilHeckeElement& o) const;
  NilHeckeElement operator-(const NilHeckeElement& o) const;
  NilHeckeElement scaled(const Scalar& c) const;
  NilHeckeElement scaled(long c) const { return scaled(Scalar::from_int(field_, c)); }

  std::string to_string() const;

 private:
  void check(const NilHeckeElement& o) const;
  void add(const NhWord& w, const Scalar& c);

  Field field_;
  int n_ = 0;
  std::vector<std::pair<NhWord, Scalar>> terms_;
};

/// x_i multiplies, tau_j acts by (f - s_j f)/(x_{j+1} - x_j); words act
/// right to left.
ExactPolynomial act(const NilHeckeElement& e, const ExactPolynomial& f);
ExactPolynomial act_word(const NhWord& w, const ExactPolynomial& f);

/// Monomials x^a with 0 <= a_k <= n-k, lexicographic in (a_1, ..., a_n).
std::vector<Exponent> artin_basis(int n);

/// Symmetric polynomial written in the elementary symmetric polynomials
/// e_1..e_n (variable i of the polynomial stands for e_{i+1}).
using ElementaryPoly = ExactPolynomial;

ExactPolynomial elementary_to_x(const ElementaryPoly& p, int n);

/// f = sum_b coeff[b] * x^b over the Artin basis, coefficients symmetric.
/// With only_basis set, just that coefficient is computed.
std::map<Exponent, ElementaryPoly> artin_expand(const ExactPolynomial& f, int n, const Exponent* only_basis = nullptr);

struct SymMatrixModel {
  Field field;
  int n = 0;
  std::vector<Exponent> basis;
  std::vector<std::vector<ExactPolynomial>> entries;  // entries[row][col]

  SymMatrixModel operator*(const SymMatrixModel& o) const;
  ExactPolynomial trace() const;
  bool is_identity() const;
  bool operator==(const SymMatrixModel& o) const { return n == o.n && entries == o.entries; }
};

SymMatrixModel to_sym_matrix(const NilHeckeElement& e);
/// Trace of the matrix model as a symmetric polynomial in x_1..x_n.
ExactPolynomial nh_trace(const NilHeckeElement& e);
/// Same trace in elementary symmetric coordinates.
ElementaryPoly nh_trace_elementary(const NilHeckeElement& e);
bool trace_equiv(const NilHeckeElement& a, const NilHeckeElement& b);

/// Letters of tau_u tau_{u+1} ... tau_{v-1} tau_u ... tau_{v-2} ... tau_u.
NhWord interval_tau_word(int u, int v);
/// e_[u,v] = tau_{w[u,v]} x_{u+1} x_{u+2}^2 ... x_v^{v-u}; 1 when u = v.
NilHeckeElement e_interval(const Field& f, int n, int u, int v);
/// x_2 x_3 ... x_{n-1} x_n^k tau_1 ... tau_{n-1}
NilHeckeElement X_kn(const Field& f, int n, int k);
NilHeckeElement X_ktl(const Field& f, int n, int k, int t, int l);
/// x_1^k tau_1 ... tau_{n-1}
NilHeckeElement Z_nk(const Field& f, int n, int k);

}  // namespace klr
