#include "klr/highest_weight.hpp"

#include "klr/sparse.hpp"

namespace klr {

mpz_class ContravariantForm::value(const Sequence& nu, const Sequence& mu) {
  if (nu.size() != mu.size()) return 0;
  if (nu.empty()) return 1;
  auto key = std::make_pair(nu, mu);
  if (auto it = memo_.find(key); it != memo_.end()) return it->second;
  if (root_of_sequence(datum_, nu) != root_of_sequence(datum_, mu)) {
    memo_.emplace(key, 0);
    return 0;
  }
  // <f_i u, f_mu v> = <u, e_i f_mu v>, and e_i f_mu v picks up
  // <h_i, Lambda - (mu_1 + ... + mu_{t-1})> at each t with mu_t = i.
  int i = nu.back();
  Sequence rest(nu.begin(), nu.end() - 1);
  mpz_class total = 0;
  RootVector prefix{std::vector<int>(datum_.rank(), 0)};
  for (std::size_t t = 0; t < mu.size(); ++t) {
    if (mu[t] == i) {
      int h = pairing(static_cast<std::size_t>(i), lambda_, prefix, datum_);
      if (h != 0) {
        Sequence dropped = mu;
        dropped.erase(dropped.begin() + static_cast<long>(t));
        total += h * value(rest, dropped);
      }
    }
    prefix.coeffs[mu[t]] += 1;
  }
  memo_.emplace(key, total);
  return total;
}

mpz_class contravariant_form(const Sequence& nu, const Sequence& mu, const DominantWeight& lambda, const CartanDatum& datum) {
  if (root_of_sequence(datum, nu) != root_of_sequence(datum, mu))
    throw HighestWeightError(HighestWeightError::Kind::SequenceMismatch, "sequences have different weights");
  ContravariantForm form(datum, lambda);
  return form.value(nu, mu);
}

std::vector<std::vector<mpz_class>> gram_matrix(const DominantWeight& lambda, const RootVector& alpha, const CartanDatum& datum,
                                                int max_height) {
  if (alpha.height() > max_height)
    throw HighestWeightError(HighestWeightError::Kind::HeightCapExceeded, "height " + std::to_string(alpha.height()) + " above cap");
  auto seqs = enumerate_sequences(alpha);
  ContravariantForm form(datum, lambda);
  std::vector<std::vector<mpz_class>> g(seqs.size(), std::vector<mpz_class>(seqs.size()));
  for (std::size_t a = 0; a < seqs.size(); ++a)
    for (std::size_t b = a; b < seqs.size(); ++b) {
      g[a][b] = form.value(seqs[a], seqs[b]);
      g[b][a] = g[a][b];
    }
  return g;
}

std::size_t weight_multiplicity(const DominantWeight& lambda, const RootVector& alpha, const CartanDatum& datum, int max_height) {
  auto g = gram_matrix(lambda, alpha, datum, max_height);
  Field q = Field::rationals();
  SparseMatrix m(q, g.size(), g.size());
  for (std::size_t a = 0; a < g.size(); ++a)
    for (std::size_t b = 0; b < g.size(); ++b)
      if (sgn(g[a][b]) != 0) m.data[a].push_back(b, Scalar::from_rational(q, mpq_class(g[a][b])));
  return row_reduce(m).rank;
}

}  // namespace klr
