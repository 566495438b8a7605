#include <doctest.h>

#include <algorithm>
#include <random>

#include "klr/cartan_data.hpp"

using namespace klr;

namespace {

const IntMatrix kA1{{2}};
const IntMatrix kA2{{2, -1}, {-1, 2}};
const IntMatrix kB2{{2, -2}, {-1, 2}};
const IntMatrix kG2{{2, -1}, {-3, 2}};
const IntMatrix kA3{{2, -1, 0}, {-1, 2, -1}, {0, -1, 2}};
const IntMatrix kAffA1{{2, -2}, {-2, 2}};

bool has_kind(const std::vector<QValidationIssue>& issues, QValidationIssue::Kind k) {
  return std::any_of(issues.begin(), issues.end(), [&](const QValidationIssue& i) { return i.kind == k; });
}

CartanError::Kind error_kind(const IntMatrix& m) {
  try {
    CartanDatum::validate(m);
  } catch (const CartanError& e) {
    return e.kind();
  }
  FAIL("expected CartanError");
  return CartanError::Kind::NotSquare;
}

long multinomial(const std::vector<int>& k) {
  long n = 0, out = 1;
  for (int v : k)
    for (int i = 1; i <= v; ++i) out = out * (++n) / i;
  return out;
}

}  // namespace

TEST_CASE("symmetrizers") {
  CHECK(CartanDatum::validate(kA1).symmetrizers() == std::vector<int>{1});
  CHECK(CartanDatum::validate(kA2).symmetrizers() == std::vector<int>{1, 1});
  CHECK(CartanDatum::validate(kB2).symmetrizers() == std::vector<int>{1, 2});
  CHECK(CartanDatum::validate(kG2).symmetrizers() == std::vector<int>{3, 1});
  CHECK(CartanDatum::validate(kB2, std::vector<int>{2, 4}).symmetrizers() == std::vector<int>{2, 4});
  CHECK(CartanDatum::validate(kA2).simply_laced());
  CHECK_FALSE(CartanDatum::validate(kB2).simply_laced());
  CHECK(CartanDatum::validate(kA3).finite_type());
  CHECK_FALSE(CartanDatum::validate(kAffA1).finite_type());
}

TEST_CASE("datum errors") {
  CHECK(error_kind({{2, -1, -1}, {-2, 2, -1}, {-1, -1, 2}}) == CartanError::Kind::NotSymmetrizable);
  CHECK(error_kind({{3}}) == CartanError::Kind::DiagonalNotTwo);
  CHECK(error_kind({{2, 1}, {-1, 2}}) == CartanError::Kind::SignViolation);
  CHECK(error_kind({{2, 0}, {-1, 2}}) == CartanError::Kind::SignViolation);
  CHECK(error_kind({{2, -1}, {-1}}) == CartanError::Kind::NotSquare);
  CHECK_THROWS_AS(CartanDatum::validate(kB2, std::vector<int>{1, 1}), CartanError);
  CartanDatum c = CartanDatum::validate(kA2);
  CHECK_THROWS_AS(make_weight(c, {1}), CartanError);
  CHECK_THROWS_AS(make_root(c, {1, -1}), CartanError);
}

TEST_CASE("bilinear form and d_lambda_alpha examples") {
  CartanDatum a1 = CartanDatum::validate(kA1), a2 = CartanDatum::validate(kA2);
  CHECK(bilinear_form(make_root(a1, {1}), make_root(a1, {1}), a1) == 2);
  CHECK(bilinear_form(make_root(a2, {1, 0}), make_root(a2, {0, 1}), a2) == -1);
  CHECK(bilinear_form(make_root(a2, {1, 1}), make_root(a2, {1, 1}), a2) == 2);
  CHECK(d_lambda_alpha(make_weight(a1, {2}), make_root(a1, {1}), a1) == 2);
  CHECK(d_lambda_alpha(make_weight(a1, {3}), make_root(a1, {2}), a1) == 4);
  CHECK(d_lambda_alpha(make_weight(a2, {1, 1}), make_root(a2, {0, 0}), a2) == 0);
  CartanDatum b2 = CartanDatum::validate(kB2);
  // (alpha_2, Lambda_1) = 0 and (alpha_2, alpha_2) = 4.
  CHECK(d_lambda_alpha(make_weight(b2, {1, 0}), make_root(b2, {0, 1}), b2) == -4);
  CHECK(pairing(1, make_weight(a2, {1, 0}), make_root(a2, {1, 0}), a2) == 1);
  CHECK(pairing(0, make_weight(b2, {1, 0}), make_root(b2, {0, 1}), b2) == 3);
}

TEST_CASE("form symmetry and evenness on random roots") {
  std::mt19937 rng(3);
  for (const IntMatrix& m : {kA2, kB2, kG2, kA3, kAffA1}) {
    CartanDatum c = CartanDatum::validate(m);
    for (int t = 0; t < 50; ++t) {
      std::vector<int> a(c.rank()), b(c.rank()), l(c.rank());
      for (std::size_t i = 0; i < c.rank(); ++i) a[i] = rng() % 4, b[i] = rng() % 4, l[i] = rng() % 4;
      RootVector ra = make_root(c, a), rb = make_root(c, b);
      CHECK(bilinear_form(ra, rb, c) == bilinear_form(rb, ra, c));
      CHECK(d_lambda_alpha(make_weight(c, l), ra, c) % 2 == 0);
    }
  }
}

TEST_CASE("sequences") {
  CartanDatum a2 = CartanDatum::validate(kA2);
  CHECK(enumerate_sequences(make_root(a2, {1, 1})) == std::vector<Sequence>{{0, 1}, {1, 0}});
  CHECK(enumerate_sequences(make_root(a2, {2, 0})) == std::vector<Sequence>{{0, 0}});
  CHECK(enumerate_sequences(make_root(a2, {2, 1})).size() == 3);
  CHECK(enumerate_sequences(make_root(a2, {0, 0})) == std::vector<Sequence>{{}});
  CHECK(sequence_to_string({0, 1}) == "(1,2)");
  CartanDatum a3 = CartanDatum::validate(kA3);
  for (std::vector<int> k : {std::vector<int>{1, 2, 1}, {2, 2, 0}, {3, 1, 1}}) {
    auto seqs = enumerate_sequences(make_root(a3, k));
    CHECK(static_cast<long>(seqs.size()) == multinomial(k));
    CHECK(std::is_sorted(seqs.begin(), seqs.end()));
    for (const auto& nu : seqs) CHECK(root_of_sequence(a3, nu) == make_root(a3, k));
  }
}

TEST_CASE("Q matrix validation") {
  CartanDatum a2 = CartanDatum::validate(kA2);
  QMatrix q = QMatrix::default_for(a2);
  CHECK(q.coefficient(0, 1, 1, 0) == 1);
  CHECK(q.coefficient(0, 1, 0, 1) == 1);
  for (Field f : {Field::rationals(), Field::prime(2), Field::prime(3)}) CHECK(validate_q_matrix(q, a2, f).empty());

  QMatrix zero = q;
  zero.set_pair(0, 1, {});
  CHECK(has_kind(validate_q_matrix(zero, a2, Field::rationals()), QValidationIssue::Kind::LeadingCoefficientNotUnit));

  QMatrix diag = q;
  diag.set(0, 0, 1, 0, 1);
  CHECK(has_kind(validate_q_matrix(diag, a2, Field::rationals()), QValidationIssue::Kind::DiagonalNonzero));

  QMatrix asym = q;
  asym.set(0, 1, 0, 1, 2);
  CHECK(has_kind(validate_q_matrix(asym, a2, Field::rationals()), QValidationIssue::Kind::SymmetryViolation));

  QMatrix support = q;
  support.set_pair(0, 1, {{1, 0, mpq_class(1)}, {0, 1, mpq_class(1)}, {1, 1, mpq_class(1)}});
  CHECK(has_kind(validate_q_matrix(support, a2, Field::rationals()), QValidationIssue::Kind::HomogeneitySupportViolation));

  QMatrix even = q;
  even.set_pair(0, 1, {{1, 0, mpq_class(2)}, {0, 1, mpq_class(1)}});
  CHECK(validate_q_matrix(even, a2, Field::rationals()).empty());
  CHECK(has_kind(validate_q_matrix(even, a2, Field::prime(2)), QValidationIssue::Kind::LeadingCoefficientNotUnit));
}

TEST_CASE("default Q is valid for every datum and field") {
  for (const IntMatrix& m : {kA1, kA2, kB2, kG2, kA3, kAffA1}) {
    CartanDatum c = CartanDatum::validate(m);
    for (Field f : {Field::rationals(), Field::prime(2), Field::prime(3), Field::prime(5)})
      CHECK(validate_q_matrix(QMatrix::default_for(c), c, f).empty());
  }
  CartanDatum b2 = CartanDatum::validate(kB2);
  QMatrix q = QMatrix::default_for(b2);
  CHECK(q.coefficient(0, 1, 2, 0) == 1);
  CHECK(q.coefficient(0, 1, 0, 1) == 1);
  CHECK(q.coefficient(1, 0, 1, 0) == 1);
  CHECK(q.coefficient(1, 0, 0, 2) == 1);
}
