#pragma once

#include <cstddef>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "klr/cartan_data.hpp"

namespace klr {

class HighestWeightError : public std::runtime_error {
 public:
  enum class Kind { SequenceMismatch, HeightCapExceeded };
  HighestWeightError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

/// <f_nu v, f_mu v> on V(Lambda), with f_nu v = f_{nu_n} ... f_{nu_1} v and
/// <v, v> = 1. Values are memoized per pair of sequences.
class ContravariantForm {
 public:
  ContravariantForm(const CartanDatum& datum, const DominantWeight& lambda) : datum_(datum), lambda_(lambda) {}

  mpz_class value(const Sequence& nu, const Sequence& mu);
  std::size_t memo_size() const { return memo_.size(); }

 private:
  CartanDatum datum_;
  DominantWeight lambda_;
  std::map<std::pair<Sequence, Sequence>, mpz_class> memo_;
};

mpz_class contravariant_form(const Sequence& nu, const Sequence& mu, const DominantWeight& lambda, const CartanDatum& datum);

/// Gram matrix on enumerate_sequences(alpha).
std::vector<std::vector<mpz_class>> gram_matrix(const DominantWeight& lambda, const RootVector& alpha, const CartanDatum& datum,
                                                int max_height = 8);

/// dim V(Lambda)_{Lambda - alpha} as the rank over Q of the Gram matrix.
std::size_t weight_multiplicity(const DominantWeight& lambda, const RootVector& alpha, const CartanDatum& datum, int max_height = 8);

}  // namespace klr
