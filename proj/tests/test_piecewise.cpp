#include <doctest.h>

#include <random>

#include "klr/piecewise.hpp"

using namespace klr;

namespace {

const Field kQ = Field::rationals();
const IntMatrix kA1{{2}};
const IntMatrix kA2{{2, -1}, {-1, 2}};
const IntMatrix kB2{{2, -2}, {-1, 2}};
const IntMatrix kA3{{2, -1, 0}, {-1, 2, -1}, {0, -1, 2}};
const IntMatrix kAffA1{{2, -2}, {-2, 2}};

CyclotomicAlgebra build(const IntMatrix& m, const std::vector<int>& lambda, const std::vector<int>& alpha, const Field& f = kQ) {
  CartanDatum c = CartanDatum::validate(m);
  return build_cyclotomic(c, QMatrix::default_for(c), make_weight(c, lambda), make_root(c, alpha), f);
}

// <h_i, Lambda - alpha_{nu_1} - ... - alpha_{nu_p}>
int level(const CartanDatum& c, const std::vector<int>& lam, const Sequence& nu, int i, int p) {
  int v = lam[i];
  for (int t = 0; t < p; ++t) v -= c.a(i, nu[t]);
  return v;
}

// Levels at least block sizes, from a direct run-length scan.
bool dominant_oracle(const CartanDatum& c, const std::vector<int>& lam, const Sequence& nu) {
  std::size_t start = 0;
  while (start < nu.size()) {
    std::size_t end = start;
    while (end < nu.size() && nu[end] == nu[start]) ++end;
    if (level(c, lam, nu, nu[start], static_cast<int>(start)) < static_cast<int>(end - start)) return false;
    start = end;
  }
  return true;
}

// Some position k' in each block with <h, Lambda - prefix before k'> >= c_i - k' + 1.
bool position_oracle(const CartanDatum& c, const std::vector<int>& lam, const Sequence& nu) {
  std::size_t start = 0;
  while (start < nu.size()) {
    std::size_t end = start;
    while (end < nu.size() && nu[end] == nu[start]) ++end;
    bool found = false;
    for (std::size_t k = start + 1; k <= end && !found; ++k)
      found = level(c, lam, nu, nu[start], static_cast<int>(k - 1)) >= static_cast<int>(end - k + 1);
    if (!found) return false;
    start = end;
  }
  return true;
}

void all_roots(std::size_t rank, int height, std::vector<std::vector<int>>& out) {
  std::vector<int> cur(rank, 0);
  std::function<void(std::size_t, int)> rec = [&](std::size_t i, int left) {
    if (i + 1 == rank) {
      cur[i] = left;
      out.push_back(cur);
      return;
    }
    for (int v = 0; v <= left; ++v) {
      cur[i] = v;
      rec(i + 1, left - v);
    }
  };
  rec(0, height);
}

}  // namespace

TEST_CASE("block decomposition examples") {
  CartanDatum a2 = CartanDatum::validate(kA2);
  BlockDecomposition bd = block_decompose({0, 0, 1}, make_weight(a2, {2, 0}), a2);
  CHECK(bd.values == std::vector<int>{0, 1});
  CHECK(bd.sizes == std::vector<int>{2, 1});
  CHECK(bd.c == std::vector<int>{0, 2, 3});
  CHECK(bd.levels == std::vector<int>{2, 2});

  CartanDatum a1 = CartanDatum::validate(kA1);
  BlockDecomposition one = block_decompose({0, 0}, make_weight(a1, {3}), a1);
  CHECK(one.levels == std::vector<int>{3});
  CHECK(one.k == std::vector<int>{2});
  CHECK(block_decompose({}, make_weight(a1, {3}), a1).blocks() == 0);
}

TEST_CASE("piecewise dominance examples") {
  CartanDatum a1 = CartanDatum::validate(kA1), a2 = CartanDatum::validate(kA2);
  CHECK_FALSE(is_piecewise_dominant({0, 0}, make_weight(a1, {1}), a1));
  CHECK(is_piecewise_dominant({0, 0}, make_weight(a1, {2}), a1));
  CHECK(is_piecewise_dominant({0, 0, 1}, make_weight(a2, {2, 0}), a2));
  CHECK(enumerate_pd(make_root(a1, {2}), make_weight(a1, {2}), a1) == std::vector<Sequence>{{0, 0}});
  CHECK(enumerate_pd(make_root(a1, {2}), make_weight(a1, {1}), a1).empty());
  CHECK(enumerate_pd(make_root(a2, {1, 1}), make_weight(a2, {1, 0}), a2) == std::vector<Sequence>{{0, 1}});
}

TEST_CASE("both dominance criteria agree with direct oracles up to height 6") {
  std::mt19937 rng(4);
  for (const IntMatrix& m : {kA1, kA2, kB2, kA3, kAffA1}) {
    CartanDatum c = CartanDatum::validate(m);
    for (int trial = 0; trial < 4; ++trial) {
      std::vector<int> lam(c.rank());
      for (auto& v : lam) v = static_cast<int>(rng() % 3);
      lam[rng() % c.rank()] += 1;
      for (int h = 0; h <= (c.rank() > 2 ? 5 : 6); ++h) {
        std::vector<std::vector<int>> roots;
        all_roots(c.rank(), h, roots);
        for (const auto& al : roots) {
          for (const Sequence& nu : enumerate_sequences(make_root(c, al))) {
            bool expected = dominant_oracle(c, lam, nu);
            CHECK(position_oracle(c, lam, nu) == expected);
            CHECK(dominant_by_levels(nu, make_weight(c, lam), c) == expected);
            if (!nu.empty()) CHECK(dominance_positions(nu, make_weight(c, lam), c).empty() == !expected);
            CHECK(is_piecewise_dominant(nu, make_weight(c, lam), c) == expected);
          }
          CHECK(verify_dominance_criteria(make_root(c, al), make_weight(c, lam), c).status == CheckResult::Status::Pass);
        }
      }
    }
  }
}

TEST_CASE("refinements") {
  CartanDatum a2 = CartanDatum::validate(kA2), a1 = CartanDatum::validate(kA1);
  auto r = refinements({0, 0, 1}, make_weight(a2, {1, 0}), a2);
  REQUIRE(r.size() == 2);
  CHECK(r[0].b == std::vector<int>{1, 1, 1});
  CHECK(r[1].b == std::vector<int>{2, 1});
  CHECK(r[1].c == std::vector<int>{0, 2, 3});
  auto d = refinements({0, 1, 0}, make_weight(a2, {1, 0}), a2);
  REQUIRE(d.size() == 1);
  CHECK(d[0].b == std::vector<int>{1, 1, 1});
  auto p = refinements({0, 0}, make_weight(a1, {2}), a1);
  REQUIRE(p.size() == 2);
  CHECK(p[1].b == std::vector<int>{2});
  CHECK(p[1].lambdas == std::vector<int>{2});
  CHECK(p[1].positive);
}

TEST_CASE("distinguished words") {
  CartanDatum a1 = CartanDatum::validate(kA1);
  KlrAlgebra r2(a1, QMatrix::default_for(a1), make_root(a1, {2}), kQ);
  GenWord z3 = z_lambda_word({0, 0}, make_weight(a1, {3}), a1);
  CHECK(r2.normal_form(z3) == r2.normal_form(GenWord{0, {{GenLetter::Kind::X, 1}, {GenLetter::Kind::X, 1}}}));
  CHECK(word_degree(z3, r2.sequences(), a1) == 4);
  CHECK(d_lambda_alpha(make_weight(a1, {3}), make_root(a1, {2}), a1) == 4);

  GenWord z2 = z_lambda_word({0, 0}, make_weight(a1, {2}), a1);
  CHECK(r2.normal_form(z2) == r2.normal_form(GenWord{0, {{GenLetter::Kind::Tau, 1}, {GenLetter::Kind::X, 2}}}));
  CHECK(word_degree(z2, r2.sequences(), a1) == 0);

  CartanDatum a2 = CartanDatum::validate(kA2);
  KlrAlgebra r(a2, QMatrix::default_for(a2), make_root(a2, {1, 1}), kQ);
  GenWord em = e_minus_word({0, 1}, make_weight(a2, {1, 0}), a2);
  CHECK(r.normal_form(em) == r.idempotent(r.seq_index({0, 1})));
  CHECK_THROWS_AS(z_lambda_word({1, 0}, make_weight(a2, {1, 0}), a2), PiecewiseError);
  CHECK_THROWS_AS(interval_idempotent_word({0, 1}, 1, 2), PiecewiseError);
}

TEST_CASE("degrees of distinguished words") {
  for (auto [m, lam, al] : std::vector<std::tuple<IntMatrix, std::vector<int>, std::vector<int>>>{
           {kA1, {3}, {3}}, {kA2, {2, 1}, {2, 2}}, {kB2, {1, 1}, {2, 2}}, {kA3, {1, 1, 0}, {1, 2, 1}}}) {
    CartanDatum c = CartanDatum::validate(m);
    DominantWeight w = make_weight(c, lam);
    RootVector a = make_root(c, al);
    KlrAlgebra r(c, QMatrix::default_for(c), a, kQ);
    int d = d_lambda_alpha(w, a, c);
    for (const Sequence& nu : enumerate_pd(a, w, c)) {
      CHECK(r.degree(z_lambda_word(nu, w, c)) == d);
      CHECK(word_degree(z_lambda_word(nu, w, c), r.sequences(), c) == d);
      CHECK(r.degree(e_minus_word(nu, w, c)) == 0);
      for (const GenWord& g : r_lambda_set(nu, w, c)) CHECK(r.degree(g) == word_degree(g, r.sequences(), c));
    }
    for (const Sequence& nu : r.sequences())
      for (const GenWord& g : spanning_family(nu, w, c)) CHECK(r.degree(g) == word_degree(g, r.sequences(), c));
  }
}

TEST_CASE("idempotent sums and fullness") {
  for (Field f : {kQ, Field::prime(2)}) {
    CyclotomicAlgebra a = build(kA1, {2}, {2}, f);
    CHECK(fullness_check(a, a.identity));
    SparseVec e = e_sum(a), em = e_sum_minus(a);
    CHECK(a.multiply(e, e) == e);
    CHECK(a.multiply(em, em) == em);
    CHECK(fullness_check(a, e));
    CHECK(fullness_check(a, em));
    CHECK_THROWS_AS(fullness_check(a, a.x_images[0]), PiecewiseError);
  }
  CyclotomicAlgebra b = build(kA2, {1, 1}, {2, 1});
  SparseVec em = e_sum_minus(b);
  CHECK(b.multiply(em, em) == em);
  for (const SparseVec& idem : b.idempotents) CHECK(b.commutator(idem, em).empty());
  CHECK(verify_fullness(b).status == CheckResult::Status::Pass);
  CHECK(verify_fullness(build(kA1, {1}, {2})).status == CheckResult::Status::Skip);
}

TEST_CASE("span and vanishing checks") {
  struct Case {
    IntMatrix m;
    std::vector<int> lam, al;
  };
  for (const Case& cs : {Case{kA1, {2}, {2}}, Case{kA2, {1, 0}, {1, 1}}, Case{kA1, {1}, {2}}, Case{kA1, {3}, {3}},
                         Case{kB2, {1, 0}, {1, 1}}}) {
    for (Field f : {kQ, Field::prime(2)}) {
      CyclotomicAlgebra a = build(cs.m, cs.lam, cs.al, f);
      CocenterSpace tr(a);
      auto results = verify_spans(a, tr);
      CHECK(results.size() == 8);
      for (const auto& r : results) CHECK_MESSAGE(r.status != CheckResult::Status::Fail, r.id);
      CHECK(verify_block_reduction(a, tr).status != CheckResult::Status::Fail);
    }
  }
}

TEST_CASE("block reduction examples") {
  CyclotomicAlgebra a = build(kA1, {3}, {3});
  CocenterSpace tr(a);
  GenWord low{0, {{GenLetter::Kind::Tau, 1}, {GenLetter::Kind::Tau, 2}}};
  CHECK(tr.project(a.word_image(low)).coords.empty());
  GenWord top{0, {{GenLetter::Kind::X, 1}, {GenLetter::Kind::X, 1}, {GenLetter::Kind::Tau, 1}, {GenLetter::Kind::Tau, 2}}};
  auto p = tr.project(a.word_image(top));
  auto e = tr.project(a.word_image(interval_idempotent_word({0, 0, 0}, 1, 3)));
  REQUIRE_FALSE(e.coords.empty());
  CHECK(p.degree == e.degree);
  // Both images lie on one line in Tr_0.
  CHECK(tr.dims().get(0) == 1);
}
