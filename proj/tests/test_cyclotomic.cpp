#include <doctest.h>

#include <algorithm>

#include "klr/cyclotomic.hpp"
#include "klr/highest_weight.hpp"

using namespace klr;

namespace {

const Field kQ = Field::rationals();
const IntMatrix kA1{{2}};
const IntMatrix kA2{{2, -1}, {-1, 2}};
const IntMatrix kB2{{2, -2}, {-1, 2}};

CyclotomicAlgebra build(const IntMatrix& m, const std::vector<int>& lambda, const std::vector<int>& alpha, const Field& f = kQ) {
  CartanDatum c = CartanDatum::validate(m);
  return build_cyclotomic(c, QMatrix::default_for(c), make_weight(c, lambda), make_root(c, alpha), f);
}

std::optional<CyclotomicAlgebra> build_at(const IntMatrix& m, const std::vector<int>& lambda, const std::vector<int>& alpha, int bound) {
  CartanDatum c = CartanDatum::validate(m);
  auto r = std::make_shared<const KlrAlgebra>(c, QMatrix::default_for(c), make_root(c, alpha), kQ);
  return build_with_bound(r, make_weight(c, lambda), bound);
}

long factorial(int n) { return n <= 1 ? 1 : n * factorial(n - 1); }
long binom(int n, int k) { return k < 0 || k > n ? 0 : factorial(n) / (factorial(k) * factorial(n - k)); }

// dim e(mu) A e(nu) counted through the idempotent images.
std::size_t block_dim(const CyclotomicAlgebra& a, std::size_t mu, std::size_t nu) {
  std::size_t d = 0;
  for (std::size_t k = 0; k < a.dim(); ++k) {
    SparseVec b = a.basis_vector(k);
    if (a.multiply(a.multiply(a.idempotents[mu], b), a.idempotents[nu]) == b) ++d;
  }
  return d;
}

}  // namespace

TEST_CASE("cyclotomic generators") {
  CartanDatum a1 = CartanDatum::validate(kA1), a2 = CartanDatum::validate(kA2);
  {
    KlrAlgebra r(a1, QMatrix::default_for(a1), make_root(a1, {1}), kQ);
    auto g = cyclotomic_generators(r, make_weight(a1, {2}));
    REQUIRE(g.size() == 1);
    CHECK(g[0] == r.normal_form(GenWord{0, {{GenLetter::Kind::X, 1}, {GenLetter::Kind::X, 1}}}));
  }
  {
    KlrAlgebra r(a1, QMatrix::default_for(a1), make_root(a1, {2}), kQ);
    auto g = cyclotomic_generators(r, make_weight(a1, {1}));
    REQUIRE(g.size() == 1);
    CHECK(g[0] == r.normal_form(GenWord{0, {{GenLetter::Kind::X, 1}}}));
  }
  {
    KlrAlgebra r(a2, QMatrix::default_for(a2), make_root(a2, {1, 1}), kQ);
    auto g = cyclotomic_generators(r, make_weight(a2, {1, 0}));
    REQUIRE(g.size() == 2);
    CHECK(g[r.seq_index({0, 1})] == r.normal_form(GenWord{r.seq_index({0, 1}), {{GenLetter::Kind::X, 1}}}));
    CHECK(g[r.seq_index({1, 0})] == r.idempotent(r.seq_index({1, 0})));
  }
}

TEST_CASE("builds at a fixed bound") {
  auto a = build_at(kA1, {1}, {1}, 2);
  REQUIRE(a);
  CHECK(a->graded_dims() == GradedDims{{0, 1}});

  auto b = build_at(kA1, {2}, {1}, 3);
  REQUIRE(b);
  CHECK(b->graded_dims() == GradedDims{{0, 1}, {2, 1}});
  CHECK(b->multiply(b->x_images[0], b->x_images[0]).empty());
  CHECK_FALSE(b->x_images[0].empty());

  auto z = build_at(kA1, {1}, {2}, 3);
  REQUIRE(z);
  CHECK(z->is_zero_algebra());
  CHECK(z->graded_dims().empty());
  CHECK(weight_multiplicity(make_weight(CartanDatum::validate(kA1), {1}), make_root(CartanDatum::validate(kA1), {2}),
                            CartanDatum::validate(kA1)) == 0);

  CHECK_FALSE(build_at(kA1, {2}, {1}, 1).has_value());
}

TEST_CASE("escalation and failure") {
  CartanDatum c = CartanDatum::validate(kA1);
  BuildOptions tight;
  tight.initial_bound = 1;
  tight.max_escalations = 0;
  try {
    build_cyclotomic(c, QMatrix::default_for(c), make_weight(c, {2}), make_root(c, {1}), kQ, tight);
    FAIL("expected NeedLargerB");
  } catch (const CyclotomicError& e) {
    CHECK(e.kind() == CyclotomicError::Kind::NeedLargerB);
  }
  BuildOptions grow;
  grow.initial_bound = 1;
  grow.max_escalations = 2;
  CyclotomicAlgebra a = build_cyclotomic(c, QMatrix::default_for(c), make_weight(c, {2}), make_root(c, {1}), kQ, grow);
  CHECK(a.certificate.attempted_bounds.size() >= 2);
  CHECK(a.dim() == 2);
  CHECK(default_initial_bound(c, make_weight(c, {2}), make_root(c, {3})) == 5);
}

TEST_CASE("rank one dimensions match (n!)^2 binom(l, n)") {
  for (Field f : {kQ, Field::prime(2), Field::prime(3)}) {
    for (int l = 1; l <= 3; ++l)
      for (int n = 0; n <= 3; ++n) {
        CyclotomicAlgebra a = build(kA1, {l}, {n}, f);
        CHECK(static_cast<long>(a.dim()) == factorial(n) * factorial(n) * binom(l, n));
      }
  }
  CartanDatum c = CartanDatum::validate(kA1);
  CHECK(rank_one_dimension(c, make_weight(c, {3}), make_root(c, {2})) == std::optional<std::size_t>(12));
  CartanDatum a2 = CartanDatum::validate(kA2);
  CHECK_FALSE(rank_one_dimension(a2, make_weight(a2, {1, 0}), make_root(a2, {1, 0})).has_value());
}

TEST_CASE("idempotent blocks match the contravariant form") {
  struct Case {
    IntMatrix m;
    std::vector<int> lambda, alpha;
  };
  std::vector<Case> cases{{kA1, {2}, {2}},       {kA1, {3}, {3}},       {kA2, {1, 0}, {1, 1}}, {kA2, {1, 1}, {1, 1}},
                          {kA2, {1, 1}, {2, 1}}, {kA2, {2, 0}, {2, 1}}, {kA2, {1, 1}, {1, 2}}, {kB2, {1, 0}, {1, 1}},
                          {kB2, {1, 0}, {2, 0}}, {kB2, {0, 1}, {1, 1}}, {kB2, {1, 1}, {1, 2}}};
  for (const Case& cs : cases) {
    for (Field f : {kQ, Field::prime(2), Field::prime(3)}) {
      CyclotomicAlgebra a = build(cs.m, cs.lambda, cs.alpha, f);
      ContravariantForm form(a.datum, a.lambda);
      std::size_t total = 0;
      for (std::size_t mu = 0; mu < a.sequences.size(); ++mu)
        for (std::size_t nu = 0; nu < a.sequences.size(); ++nu) {
          mpz_class expected = form.value(a.sequences[mu], a.sequences[nu]);
          CHECK(mpz_class(static_cast<unsigned long>(block_dim(a, mu, nu))) == expected);
          total += block_dim(a, mu, nu);
        }
      CHECK(total == a.dim());
    }
  }
}

TEST_CASE("algebra invariants") {
  CyclotomicAlgebra a = build(kA2, {1, 1}, {1, 2});
  REQUIRE(a.dim() > 0);
  GradedDims g = a.graded_dims();
  CHECK(g.total() == a.dim());
  SparseVec sum;
  for (const auto& e : a.idempotents) sum = sum + e;
  CHECK(sum == a.identity);
  for (std::size_t i = 0; i < a.dim(); ++i) {
    SparseVec b = a.basis_vector(i);
    CHECK(a.multiply(a.identity, b) == b);
    CHECK(a.multiply(b, a.identity) == b);
    for (std::size_t j = 0; j < a.dim(); ++j) {
      for (const auto& [k, c] : a.product(i, j).entries) CHECK(a.degrees[k] == a.degrees[i] + a.degrees[j]);
      for (std::size_t k = 0; k < a.dim(); ++k)
        CHECK(a.multiply(a.product(i, j), a.basis_vector(k)) == a.multiply(b, a.product(j, k)));
    }
  }
  for (std::size_t s = 0; s < a.sequences.size(); ++s)
    for (std::size_t t = 0; t < a.sequences.size(); ++t)
      CHECK(a.multiply(a.idempotents[s], a.idempotents[t]) == (s == t ? a.idempotents[s] : SparseVec{}));
  for (const SparseVec& x : a.x_images) {
    SparseVec p = x;
    for (int e = 0; e < a.certificate.bound; ++e) p = a.multiply(p, x);
    CHECK(p.empty());
  }
  CHECK(a.homogeneous_degree(a.identity) == std::optional<int>(0));
  auto dot = std::find_if(a.x_images.begin(), a.x_images.end(), [](const SparseVec& x) { return !x.empty(); });
  REQUIRE(dot != a.x_images.end());
  CHECK_FALSE(a.homogeneous_degree(a.identity + *dot).has_value());
}

TEST_CASE("word images agree with presentation images") {
  CyclotomicAlgebra a = build(kB2, {1, 1}, {1, 2});
  const KlrAlgebra& r = *a.presentation->klr;
  for (std::uint16_t s = 0; s < a.sequences.size(); ++s) {
    std::vector<GenWord> words{GenWord{s, {{GenLetter::Kind::Tau, 1}, {GenLetter::Kind::X, 2}}},
                               GenWord{s, {{GenLetter::Kind::X, 3}, {GenLetter::Kind::Tau, 2}, {GenLetter::Kind::Tau, 1}}},
                               GenWord{s, {{GenLetter::Kind::Tau, 2}, {GenLetter::Kind::Tau, 2}}}};
    for (const GenWord& g : words) CHECK(a.word_image(g) == a.image(r.normal_form(g)));
  }
}

TEST_CASE("serialization round trip") {
  for (Field f : {kQ, Field::prime(3)}) {
    CyclotomicAlgebra a = build(kA2, {1, 1}, {1, 1}, f);
    std::string text = a.serialize();
    CyclotomicAlgebra b = CyclotomicAlgebra::deserialize(text);
    CHECK(b.serialize() == text);
    CHECK(b.dim() == a.dim());
    CHECK(b.products == a.products);
    CHECK(b.identity == a.identity);
    CHECK(b.labels == a.labels);
    CHECK(b.certificate.bound == a.certificate.bound);
    CHECK(b.field == f);
    CHECK_FALSE(b.presentation);
    CHECK_THROWS_AS(b.image(a.presentation->klr->one()), CyclotomicError);
  }
  CHECK_THROWS_AS(CyclotomicAlgebra::deserialize("not an algebra"), CyclotomicError);
}
