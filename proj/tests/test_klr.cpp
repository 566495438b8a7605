#include <doctest.h>

#include <random>

#include "klr/klr_presentation.hpp"

using namespace klr;

namespace {

const Field kQ = Field::rationals();

// Faithful polynomial representation: e(nu) K[x_1..x_n] per sequence, tau_l
// acting by a divided difference when nu_l = nu_{l+1}, by the swap when
// nu_l < nu_{l+1} and by Q_{nu_{l+1} nu_l}(x_l, x_{l+1}) times the swap otherwise.
class PolyRep {
 public:
  using State = std::map<int, ExactPolynomial>;
  explicit PolyRep(const KlrAlgebra& a) : a_(a) {}

  State apply(const GenLetter& letter, const State& s) const {
    State out;
    for (const auto& [seq, f] : s) {
      const Sequence& nu = a_.sequences()[seq];
      if (letter.kind == GenLetter::Kind::X) {
        add(out, seq, f.mul_var(letter.index - 1));
      } else if (letter.kind == GenLetter::Kind::Idem) {
        if (seq == letter.index) add(out, seq, f);
      } else {
        int l = letter.index;
        Sequence mu = nu;
        std::swap(mu[l - 1], mu[l]);
        int target = a_.seq_index(mu);
        if (nu[l - 1] == nu[l]) add(out, target, f.divided_difference(l - 1));
        else if (nu[l - 1] < nu[l]) add(out, target, f.swap_variables(l - 1, l));
        else add(out, target, a_.q_poly(nu[l], nu[l - 1], l - 1, l) * f.swap_variables(l - 1, l));
      }
    }
    return out;
  }

  State act_word(const GenWord& g, const ExactPolynomial& f) const {
    State s{{g.source, f}};
    for (auto it = g.letters.rbegin(); it != g.letters.rend(); ++it) s = apply(*it, s);
    return s;
  }

  State act(const AlgElement& e, int seq, const ExactPolynomial& f) const {
    State total;
    for (const auto& [m, c] : e.terms()) {
      if (m.seq != seq) continue;
      State s{{seq, f}};
      for (int p = a_.n() - 1; p >= 0; --p)
        for (int k = 0; k < m.a[p]; ++k) s = apply({GenLetter::Kind::X, p + 1}, s);
      auto w = fixed_word(m.w, a_.n());
      for (auto it = w.rbegin(); it != w.rend(); ++it) s = apply({GenLetter::Kind::Tau, *it}, s);
      for (const auto& [q, g] : s) add(total, q, g.scaled(c));
    }
    return total;
  }

 private:
  static void add(State& s, int seq, const ExactPolynomial& f) {
    auto it = s.find(seq);
    if (it == s.end()) s.emplace(seq, f);
    else it->second += f;
    if (s[seq].is_zero()) s.erase(seq);
  }
  const KlrAlgebra& a_;
};

GenWord random_word(const KlrAlgebra& a, std::mt19937& rng, int max_len) {
  GenWord g;
  g.source = static_cast<std::uint16_t>(rng() % a.sequences().size());
  int len = static_cast<int>(rng() % (max_len + 1));
  for (int i = 0; i < len; ++i) {
    if (a.n() == 1 || rng() % 3 == 0) g.letters.push_back({GenLetter::Kind::X, 1 + static_cast<int>(rng() % a.n())});
    else g.letters.push_back({GenLetter::Kind::Tau, 1 + static_cast<int>(rng() % (a.n() - 1))});
  }
  return g;
}

ExactPolynomial random_poly(const Field& f, int n, std::mt19937& rng) {
  ExactPolynomial p(f, n);
  for (int t = 0; t < 3; ++t) {
    std::vector<int> e(n);
    for (auto& v : e) v = static_cast<int>(rng() % 3);
    p += ExactPolynomial::monomial(f, n, e, Scalar::from_int(f, static_cast<long>(rng() % 5) + 1));
  }
  return p;
}

KlrAlgebra make(const IntMatrix& m, const std::vector<int>& alpha, const Field& f = kQ) {
  CartanDatum c = CartanDatum::validate(m);
  return KlrAlgebra(c, QMatrix::default_for(c), make_root(c, alpha), f);
}

GenWord word(std::uint16_t source, std::initializer_list<std::pair<char, int>> l) {
  GenWord g;
  g.source = source;
  for (auto [k, i] : l) g.letters.push_back({k == 'x' ? GenLetter::Kind::X : GenLetter::Kind::Tau, i});
  return g;
}

}  // namespace

TEST_CASE("degrees") {
  KlrAlgebra a1 = make({{2}}, {1});
  CHECK(a1.degree(word(0, {})) == 0);
  CHECK(a1.degree(word(0, {{'x', 1}})) == 2);
  KlrAlgebra a2 = make({{2, -1}, {-1, 2}}, {1, 1});
  CHECK(a2.degree(word(a2.seq_index({0, 1}), {{'t', 1}})) == 1);
  KlrAlgebra nh = make({{2}}, {2});
  CHECK(nh.degree(word(0, {{'t', 1}})) == -2);
  KlrAlgebra b2 = make({{2, -2}, {-1, 2}}, {0, 2});
  CHECK(b2.degree(word(0, {{'x', 1}})) == 4);
  CHECK(b2.degree(word(0, {{'t', 1}})) == -4);
}

TEST_CASE("normal form examples") {
  KlrAlgebra nh = make({{2}}, {2});
  AlgElement lhs = nh.normal_form(word(0, {{'t', 1}, {'x', 2}}));
  AlgElement rhs = nh.normal_form(FreeCombination{{word(0, {{'x', 1}, {'t', 1}}), Scalar::one(kQ)}, {word(0, {}), Scalar::one(kQ)}});
  CHECK(lhs == rhs);
  CHECK(nh.normal_form(word(0, {{'t', 1}, {'t', 1}})).is_zero());

  KlrAlgebra a2 = make({{2, -1}, {-1, 2}}, {1, 1});
  std::uint16_t s12 = a2.seq_index({0, 1});
  AlgElement sq = a2.normal_form(word(s12, {{'t', 1}, {'t', 1}}));
  AlgElement q = a2.normal_form(FreeCombination{{word(s12, {{'x', 1}}), Scalar::one(kQ)}, {word(s12, {{'x', 2}}), Scalar::one(kQ)}});
  CHECK(sq == q);
}

TEST_CASE("normal forms agree with the polynomial representation") {
  std::mt19937 rng(1);
  struct Case {
    IntMatrix m;
    std::vector<int> alpha;
    Field f;
  };
  std::vector<Case> cases{{{{2}}, {3}, kQ},
                          {{{2}}, {4}, Field::prime(2)},
                          {{{2, -1}, {-1, 2}}, {2, 1}, kQ},
                          {{{2, -1}, {-1, 2}}, {2, 2}, Field::prime(3)},
                          {{{2, -2}, {-1, 2}}, {1, 2}, kQ},
                          {{{2, -2}, {-1, 2}}, {2, 1}, Field::prime(2)},
                          {{{2, -1, 0}, {-1, 2, -1}, {0, -1, 2}}, {1, 2, 1}, kQ}};
  for (const Case& c : cases) {
    KlrAlgebra a = make(c.m, c.alpha, c.f);
    PolyRep rep(a);
    for (int trial = 0; trial < 150; ++trial) {
      GenWord g = random_word(a, rng, 6);
      ExactPolynomial f = random_poly(c.f, a.n(), rng);
      if (f.is_zero()) continue;
      AlgElement nf = a.normal_form(g);
      CHECK(rep.act_word(g, f) == rep.act(nf, g.source, f));
      auto deg = a.homogeneous_degree(nf);
      REQUIRE(deg.has_value());
      if (!nf.is_zero()) CHECK(*deg == a.degree(g));
    }
  }
}

TEST_CASE("normal form is idempotent and multiplication is associative") {
  std::mt19937 rng(2);
  KlrAlgebra a = make({{2, -1}, {-1, 2}}, {2, 1});
  for (int trial = 0; trial < 60; ++trial) {
    GenWord g = random_word(a, rng, 5);
    AlgElement nf = a.normal_form(g);
    AlgElement again = a.zero();
    for (const auto& [m, c] : nf.terms()) again.axpy(c, a.element(m));
    CHECK(again == nf);
    AlgElement x = a.normal_form(random_word(a, rng, 3)), y = a.normal_form(random_word(a, rng, 3)),
               z = a.normal_form(random_word(a, rng, 3));
    CHECK(a.multiply(a.multiply(x, y), z) == a.multiply(x, a.multiply(y, z)));
  }
}

TEST_CASE("anti-involution") {
  std::mt19937 rng(3);
  KlrAlgebra a = make({{2, -2}, {-1, 2}}, {1, 2});
  for (std::uint16_t s = 0; s < a.sequences().size(); ++s) CHECK(a.star(a.idempotent(s)) == a.idempotent(s));
  KlrAlgebra nh = make({{2}}, {2});
  CHECK(nh.star(nh.normal_form(word(0, {{'x', 1}, {'t', 1}}))) == nh.normal_form(word(0, {{'t', 1}, {'x', 1}})));
  for (int trial = 0; trial < 60; ++trial) {
    AlgElement u = a.normal_form(random_word(a, rng, 4)), v = a.normal_form(random_word(a, rng, 4));
    CHECK(a.star(a.star(u)) == u);
    CHECK(a.star(a.multiply(u, v)) == a.multiply(a.star(v), a.star(u)));
  }
}

TEST_CASE("relation instances vanish") {
  for (auto [m, alpha] : std::vector<std::pair<IntMatrix, std::vector<int>>>{{{{2}}, {1}},
                                                                              {{{2}}, {3}},
                                                                              {{{2, -1}, {-1, 2}}, {1, 1}},
                                                                              {{{2, -1}, {-1, 2}}, {2, 1}},
                                                                              {{{2, -2}, {-1, 2}}, {1, 2}}}) {
    for (Field f : {kQ, Field::prime(2)}) {
      KlrAlgebra a = make(m, alpha, f);
      auto rels = a.relation_instances();
      CHECK_FALSE(rels.empty());
      for (const auto& r : rels) CHECK_MESSAGE(a.normal_form(r.combination).is_zero(), r.name);
    }
  }
  // A wrong relation must not vanish.
  KlrAlgebra nh = make({{2}}, {2});
  CHECK_FALSE(nh.normal_form(FreeCombination{{word(0, {{'t', 1}, {'x', 2}}), Scalar::one(kQ)},
                                             {word(0, {{'x', 1}, {'t', 1}}), Scalar::from_int(kQ, -1)}})
                  .is_zero());
}

TEST_CASE("permutation helpers") {
  PermArray w = perm_of_word({1, 2, 1});
  CHECK(perm_length(w, 3) == 3);
  CHECK(fixed_word(w, 3) == std::vector<int>{1, 2, 1});
  CHECK(perm_of_word({2, 1, 2}) == w);
  CHECK(perm_length(identity_perm(), 4) == 0);
  CHECK_THROWS_AS(make({{2}}, {9}), KlrError);
}
