#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "klr/cartan_data.hpp"
#include "klr/check.hpp"
#include "klr/cocenter.hpp"
#include "klr/cyclotomic.hpp"
#include "klr/klr_presentation.hpp"

namespace klr {

class PiecewiseError : public std::runtime_error {
 public:
  enum class Kind { NotPiecewiseDominant, ParameterOutOfRange, CriterionMismatch, NotIdempotent };
  PiecewiseError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

/// Maximal-run decomposition of nu. Blocks are 0-based in the vectors;
/// positions (c, k) are 1-based strand positions, c[0] = 0.
struct BlockDecomposition {
  std::vector<int> values;
  std::vector<int> sizes;
  std::vector<int> c;
  std::vector<int> levels;
  /// k_i from the closed form; meaningful for dominant nu.
  std::vector<int> k;

  std::size_t blocks() const { return values.size(); }
};

BlockDecomposition block_decompose(const Sequence& nu, const DominantWeight& lambda, const CartanDatum& datum);

/// l_j >= b_j for every block.
bool dominant_by_levels(const Sequence& nu, const DominantWeight& lambda, const CartanDatum& datum);
/// Each block i has a position k' in [c_{i-1}+1, c_i] with
/// <h_{nu^i}, Lambda - nu_1 - ... - nu_{k'-1}> >= c_i - k' + 1. Returns the
/// largest such k' per block, or an empty vector when some block has none.
std::vector<int> dominance_positions(const Sequence& nu, const DominantWeight& lambda, const CartanDatum& datum);
/// Evaluates both criteria and throws CriterionMismatch when they disagree.
bool is_piecewise_dominant(const Sequence& nu, const DominantWeight& lambda, const CartanDatum& datum);
std::vector<Sequence> enumerate_pd(const RootVector& alpha, const DominantWeight& lambda, const CartanDatum& datum);

struct Refinement {
  std::vector<int> b;
  std::vector<int> c;
  /// <h_{nu_{c_i+1}}, Lambda - nu_1 - ... - nu_{c_i}> for 0 <= i < m.
  std::vector<int> lambdas;
  bool positive = false;
};

/// Compositions of n whose parts are constant on nu, in lexicographic order.
std::vector<Refinement> refinements(const Sequence& nu, const DominantWeight& lambda, const CartanDatum& datum);

/// Words inside R_alpha; sources index enumerate_sequences(root of nu).
GenWord interval_idempotent_word(const Sequence& nu, int u, int v);
GenWord z_lambda_word(const Sequence& nu, const DominantWeight& lambda, const CartanDatum& datum);
GenWord z_prime_word(const Sequence& nu, const DominantWeight& lambda, const CartanDatum& datum);
GenWord e_minus_word(const Sequence& nu, const DominantWeight& lambda, const CartanDatum& datum);
std::vector<GenWord> r_lambda_set(const Sequence& nu, const DominantWeight& lambda, const CartanDatum& datum);
std::vector<GenWord> spanning_family(const Sequence& nu, const DominantWeight& lambda, const CartanDatum& datum);

/// Degree of a word read off the sequences it passes through.
int word_degree(const GenWord& g, const std::vector<Sequence>& seqs, const CartanDatum& datum);

/// Coordinates of sum over PD_alpha of e(nu), respectively e(nu)^(-).
SparseVec e_sum(const CyclotomicAlgebra& a);
SparseVec e_sum_minus(const CyclotomicAlgebra& a);

/// A e A = A; throws NotIdempotent when e^2 != e.
bool fullness_check(const CyclotomicAlgebra& a, const SparseVec& e);

/// Span, vanishing, degree and divided-power checks plus Z' proportionality, one record each.
std::vector<CheckResult> verify_spans(const CyclotomicAlgebra& a, const CocenterSpace& tr);
CheckResult verify_fullness(const CyclotomicAlgebra& a);
CheckResult verify_block_reduction(const CyclotomicAlgebra& a, const CocenterSpace& tr);
/// Agreement of the two dominance criteria over I^alpha.
CheckResult verify_dominance_criteria(const RootVector& alpha, const DominantWeight& lambda, const CartanDatum& datum);

}  // namespace klr
