#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "klr/cartan_data.hpp"
#include "klr/klr_presentation.hpp"
#include "klr/sparse.hpp"

namespace klr {

class CyclotomicError : public std::runtime_error {
 public:
  enum class Kind { NeedLargerB, InconsistentClosure, DimensionMismatch, ParseError, NoPresentation };
  CyclotomicError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

struct TruncationCertificate {
  int bound = 0;
  std::vector<int> attempted_bounds;
  /// Largest, over (k, nu), of the least N with x_k^N e(nu) in the ideal
  /// found from untruncated products alone.
  int nilpotency_witness = 0;
  std::size_t ambient_dim = 0;
  std::size_t exact_rank = 0;
  std::size_t ideal_rank = 0;
  std::optional<std::size_t> oracle_dimension;
};

/// Ambient coordinates of a build: normal monomials with all dot exponents
/// below the bound, and the echelonized ideal inside them.
struct CyclotomicPresentation {
  std::shared_ptr<const KlrAlgebra> klr;
  int bound = 0;
  std::vector<NormalMonomial> monomials;
  std::map<NormalMonomial, std::size_t> index;
  EchelonBasis ideal;
  std::vector<long> basis_position;  // -1 for pivot columns

  /// Drops terms with an exponent at or above the bound.
  SparseVec project(const AlgElement& e) const;
  /// Residue of an ambient vector in quotient-basis coordinates.
  SparseVec residue(const SparseVec& ambient) const;
};

/// R^Lambda_alpha as a finite graded algebra with explicit structure
/// constants. Coordinates are SparseVec over basis positions.
class CyclotomicAlgebra {
 public:
  Field field;
  CartanDatum datum;
  QMatrix q;
  DominantWeight lambda;
  RootVector alpha;
  std::vector<Sequence> sequences;
  std::vector<std::string> labels;
  std::vector<int> degrees;
  std::vector<SparseVec> products;  // products[i * dim + j] = b_i b_j
  SparseVec identity;
  std::vector<SparseVec> idempotents;  // e(nu) per sequence
  std::vector<SparseVec> x_images;     // x_k, k = 1..n
  std::vector<SparseVec> tau_images;   // tau_l, l = 1..n-1
  TruncationCertificate certificate;
  std::shared_ptr<const CyclotomicPresentation> presentation;

  std::size_t dim() const { return degrees.size(); }
  int n() const { return alpha.height(); }
  bool is_zero_algebra() const { return degrees.empty(); }
  const SparseVec& product(std::size_t i, std::size_t j) const { return products[i * dim() + j]; }
  SparseVec basis_vector(std::size_t i) const { return SparseVec::unit(i, field); }
  SparseVec multiply(const SparseVec& a, const SparseVec& b) const;
  SparseVec commutator(const SparseVec& a, const SparseVec& b) const;
  GradedDims graded_dims() const;
  /// Degree shared by all terms; nullopt when inhomogeneous, 0 for zero.
  std::optional<int> homogeneous_degree(const SparseVec& v) const;
  std::uint16_t seq_index(const Sequence& nu) const;

  /// Image of a word computed from the generator images.
  SparseVec word_image(const GenWord& g) const;
  /// Image of an element of R_alpha; needs the build presentation.
  SparseVec image(const AlgElement& e) const;

  std::string serialize() const;
  static CyclotomicAlgebra deserialize(const std::string& text);
};

struct BuildOptions {
  std::optional<int> initial_bound;
  int max_escalations = 2;
};

/// x_1^{<h_{nu_1}, Lambda>} e(nu) for every nu in I^alpha.
std::vector<AlgElement> cyclotomic_generators(const KlrAlgebra& r, const DominantWeight& lambda);

/// max_nu <h_{nu_1}, Lambda> + height(alpha), at least 1.
int default_initial_bound(const CartanDatum& c, const DominantWeight& lambda, const RootVector& alpha);

/// Build at a fixed bound; nullopt when the certificate fails.
std::optional<CyclotomicAlgebra> build_with_bound(std::shared_ptr<const KlrAlgebra> r, const DominantWeight& lambda, int bound);

/// Doubles the bound up to max_escalations times; throws NeedLargerB.
CyclotomicAlgebra build_cyclotomic(const CartanDatum& c, const QMatrix& q, const DominantWeight& lambda,
                                   const RootVector& alpha, const Field& f, const BuildOptions& opts = {});

/// (n!)^2 binom(l, n) for a rank-one datum, nullopt otherwise.
std::optional<std::size_t> rank_one_dimension(const CartanDatum& c, const DominantWeight& lambda, const RootVector& alpha);

}  // namespace klr
