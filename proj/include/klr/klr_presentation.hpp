#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "klr/cartan_data.hpp"
#include "klr/polynomial.hpp"
#include "klr/scalar.hpp"

namespace klr {

constexpr std::size_t kMaxStrands = 8;
using PermArray = std::array<std::uint8_t, kMaxStrands>;
using DotArray = std::array<std::uint8_t, kMaxStrands>;

class KlrError : public std::runtime_error {
 public:
  enum class Kind { RelationDataMissing, NotDivisible, OutOfRange, TooManyStrands, SequenceMismatch, NotHomogeneous };
  KlrError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

/// tau_w x^a e(nu) where tau_w uses the lexicographically smallest reduced
/// word of w and nu = sequences()[seq]. Position p of w holds the source
/// strand ending there, so the target sequence is mu[p] = nu[w[p]].
struct NormalMonomial {
  PermArray w;
  DotArray a;
  std::uint16_t seq;
  auto operator<=>(const NormalMonomial&) const = default;
};

PermArray identity_perm();
/// s_l w for 1-based l.
PermArray left_swap(const PermArray& w, int l);
bool is_left_descent(const PermArray& w, int l);
int perm_length(const PermArray& w, int n);
/// Repeatedly strips the smallest left descent.
std::vector<int> fixed_word(const PermArray& w, int n);
PermArray perm_of_word(const std::vector<int>& word);

class AlgElement {
 public:
  using Terms = std::map<NormalMonomial, Scalar>;

  AlgElement() = default;
  explicit AlgElement(const Field& f) : field_(f) {}

  const Field& field() const { return field_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  Scalar coefficient(const NormalMonomial& m) const;

  void add(const NormalMonomial& m, const Scalar& c);
  void axpy(const Scalar& c, const AlgElement& o);
  AlgElement operator+(const AlgElement& o) const;
  AlgElement operator-(const AlgElement& o) const;
  AlgElement scaled(const Scalar& c) const;
  AlgElement& operator+=(const AlgElement& o);
  AlgElement& operator-=(const AlgElement& o);

  bool operator==(const AlgElement& o) const { return terms_ == o.terms_; }

 private:
  Field field_;
  Terms terms_;
};

/// A generator letter: x_k and tau_l are 1-based, Idem carries a sequence
/// index and keeps only terms whose target is that sequence.
struct GenLetter {
  enum class Kind { X, Tau, Idem } kind;
  int index;
};

/// letters[0] ... letters[m-1] e(sequences()[source]).
struct GenWord {
  std::uint16_t source = 0;
  std::vector<GenLetter> letters;
};

using FreeCombination = std::vector<std::pair<GenWord, Scalar>>;

struct RelationInstance {
  std::string name;
  FreeCombination combination;
};

/// The KLR algebra R_alpha with PBW straightening into normal monomials.
class KlrAlgebra {
 public:
  KlrAlgebra(const CartanDatum& datum, const QMatrix& q, const RootVector& alpha, const Field& field);

  const CartanDatum& datum() const { return datum_; }
  const QMatrix& q() const { return q_; }
  const RootVector& alpha() const { return alpha_; }
  const Field& field() const { return field_; }
  int n() const { return n_; }
  const std::vector<Sequence>& sequences() const { return seqs_; }
  std::uint16_t seq_index(const Sequence& nu) const;

  /// Target sequence index of tau_w e(nu).
  std::uint16_t target(const PermArray& w, std::uint16_t seq) const;
  std::uint16_t target(const NormalMonomial& m) const { return target(m.w, m.seq); }
  int degree(const NormalMonomial& m) const;
  int degree(const GenWord& g) const;
  /// Common degree of all terms; nullopt for inhomogeneous elements, 0 for zero.
  std::optional<int> homogeneous_degree(const AlgElement& e) const;

  NormalMonomial mono(const PermArray& w, const DotArray& a, std::uint16_t seq) const { return NormalMonomial{w, a, seq}; }
  AlgElement element(const NormalMonomial& m) const;
  AlgElement idempotent(std::uint16_t seq) const;
  AlgElement zero() const { return AlgElement(field_); }
  /// Sum of all e(nu).
  AlgElement one() const;

  AlgElement left_x(int j, const AlgElement& e) const;
  AlgElement left_tau(int l, const AlgElement& e) const;
  AlgElement left_idem(std::uint16_t seq, const AlgElement& e) const;
  /// P(x_1..x_n) * e, with P in n variables.
  AlgElement left_poly(const ExactPolynomial& p, const AlgElement& e) const;
  AlgElement right_x(int k, const AlgElement& e) const;
  AlgElement right_tau(int l, const AlgElement& e) const;
  AlgElement multiply(const AlgElement& a, const AlgElement& b) const;

  AlgElement normal_form(const GenWord& g) const;
  AlgElement normal_form(const FreeCombination& c) const;
  AlgElement star(const AlgElement& e) const;

  /// Every defining relation instantiated over I^alpha.
  std::vector<RelationInstance> relation_instances() const;

  /// Q_{ij}(x_u, x_v) with 0-based variable slots.
  ExactPolynomial q_poly(int i, int j, std::size_t u, std::size_t v) const;
  /// (Q_{ij}(x_k, x_{k+1}) - Q_{ij}(x_{k+2}, x_{k+1})) / (x_k - x_{k+2}), 1-based k.
  ExactPolynomial braid_correction(int i, int j, int k) const;

  std::string to_string(const NormalMonomial& m) const;
  std::string to_string(const AlgElement& e) const;
  std::string to_string(const GenWord& g) const;

  std::size_t cache_size() const { return x_cache_.size() + tau_cache_.size() + corr_cache_.size(); }

 private:
  struct BaseKey {
    int gen;
    PermArray w;
    std::uint16_t seq;
    bool operator==(const BaseKey& o) const { return gen == o.gen && w == o.w && seq == o.seq; }
  };
  struct BaseKeyHash {
    std::size_t operator()(const BaseKey& k) const;
  };
  struct CorrKeyHash {
    std::size_t operator()(const std::pair<std::vector<int>, std::uint16_t>& k) const;
  };

  AlgElement shifted(const AlgElement& e, const DotArray& a) const;
  const AlgElement& left_x_base(int j, const PermArray& w, std::uint16_t seq) const;
  const AlgElement& left_tau_base(int l, const PermArray& w, std::uint16_t seq) const;
  const AlgElement& corr(const std::vector<int>& u, std::uint16_t seq) const;
  AlgElement left_x_mono(int j, const NormalMonomial& m) const;
  AlgElement left_tau_mono(int l, const NormalMonomial& m) const;
  AlgElement multiply_mono(const NormalMonomial& a, const AlgElement& b) const;

  CartanDatum datum_;
  QMatrix q_;
  RootVector alpha_;
  Field field_;
  int n_ = 0;
  std::vector<Sequence> seqs_;
  std::map<Sequence, std::uint16_t> seq_lookup_;
  std::vector<std::vector<std::uint16_t>> swap_target_;  // [seq][l-1]
  mutable std::unordered_map<BaseKey, AlgElement, BaseKeyHash> x_cache_;
  mutable std::unordered_map<BaseKey, AlgElement, BaseKeyHash> tau_cache_;
  mutable std::unordered_map<std::pair<std::vector<int>, std::uint16_t>, AlgElement, CorrKeyHash> corr_cache_;
  mutable std::map<std::tuple<int, int, int>, ExactPolynomial> braid_cache_;
};

}  // namespace klr
