#include <doctest.h>

#include <random>

#include "klr/polynomial.hpp"
#include "klr/scalar.hpp"
#include "klr/sparse.hpp"

using namespace klr;

namespace {

// Dense Gaussian elimination kept separate from the sparse engine.
std::size_t dense_rank(const Field& f, std::vector<std::vector<Scalar>> m) {
  std::size_t rank = 0, cols = m.empty() ? 0 : m[0].size();
  for (std::size_t c = 0; c < cols && rank < m.size(); ++c) {
    std::size_t p = rank;
    while (p < m.size() && m[p][c].is_zero()) ++p;
    if (p == m.size()) continue;
    std::swap(m[p], m[rank]);
    for (std::size_t r = 0; r < m.size(); ++r) {
      if (r == rank || m[r][c].is_zero()) continue;
      Scalar t = m[r][c] / m[rank][c];
      for (std::size_t k = 0; k < cols; ++k) m[r][k] -= t * m[rank][k];
    }
    ++rank;
  }
  (void)f;
  return rank;
}

SparseVec to_sparse(const std::vector<Scalar>& row) {
  SparseVec v;
  for (std::size_t i = 0; i < row.size(); ++i)
    if (!row[i].is_zero()) v.push_back(i, row[i]);
  return v;
}

std::vector<std::vector<Scalar>> random_matrix(const Field& f, std::mt19937_64& rng, std::size_t rows, std::size_t cols) {
  std::uniform_int_distribution<int> val(-3, 3), sparse(0, 2);
  std::vector<std::vector<Scalar>> m(rows, std::vector<Scalar>(cols, Scalar::zero(f)));
  for (auto& row : m)
    for (auto& x : row) x = sparse(rng) ? Scalar::zero(f) : Scalar::from_int(f, val(rng));
  // Force some dependent rows.
  if (rows >= 3) {
    for (std::size_t k = 0; k < cols; ++k) m[rows - 1][k] = m[0][k] + m[1][k].operator*(Scalar::from_int(f, 2));
  }
  return m;
}

}  // namespace

TEST_CASE("scalars over Q and F_p") {
  Field q = Field::rationals(), f5 = Field::prime(5);
  CHECK((Scalar::from_rational(q, mpq_class(1, 3)) + Scalar::from_rational(q, mpq_class(2, 3))).is_one());
  CHECK(Scalar::from_int(f5, 7) == Scalar::from_int(f5, 2));
  CHECK(Scalar::from_int(f5, -1).residue() == 4);
  CHECK((Scalar::from_int(f5, 3) * Scalar::from_int(f5, 3).inverse()).is_one());
  CHECK(Scalar::from_rational(f5, mpq_class(1, 2)) == Scalar::from_int(f5, 3));
  CHECK_THROWS_AS(Scalar::from_rational(f5, mpq_class(1, 5)), ArithmeticError);
  CHECK_THROWS_AS(Scalar::zero(q).inverse(), ArithmeticError);
  CHECK_THROWS_AS(Field::prime(4), ArithmeticError);
  CHECK(Field::parse("F_3") == Field::prime(3));
  CHECK(Field::parse("GF(7)") == Field::prime(7));
  CHECK(Field::parse("QQ").is_rational());
  CHECK_THROWS_AS(Field::parse("R"), ArithmeticError);
}

TEST_CASE("rank examples") {
  Field q = Field::rationals(), f2 = Field::prime(2);
  CHECK(row_reduce(SparseMatrix::from_dense(q, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}})).rank == 3);
  CHECK(row_reduce(SparseMatrix::from_dense(f2, {{1, 1}, {1, 1}})).rank == 1);
  CHECK(row_reduce(SparseMatrix::from_dense(q, {{2, 4}, {1, 2}})).rank == 1);
  CHECK(row_reduce(SparseMatrix::from_dense(f2, {{1, 1}, {1, 3}})).rank == 1);
  CHECK(row_reduce(SparseMatrix::from_dense(q, {{1, 1}, {1, 3}})).rank == 2);
}

TEST_CASE("subspace membership") {
  Field q = Field::rationals();
  SparseMatrix basis = row_reduce(SparseMatrix::from_dense(q, {{1, 0, 2}, {0, 1, 1}})).rref;
  basis.data.resize(2);
  basis.rows = 2;
  Membership zero = subspace_membership(basis, SparseVec{});
  CHECK(zero.member);
  for (const auto& c : zero.coordinates) CHECK(c.is_zero());
  CHECK(subspace_membership(basis, basis.data[0]).member);
  SparseVec mix = basis.data[0] + Scalar::from_int(q, 3) * basis.data[1];
  Membership m = subspace_membership(basis, mix);
  REQUIRE(m.member);
  CHECK(m.coordinates[1] == Scalar::from_int(q, 3));
  CHECK_FALSE(subspace_membership(basis, SparseVec::unit(2, q)).member);
}

TEST_CASE("graded quotient dimensions") {
  Field q = Field::rationals();
  GradedVectors ambient{{0, {SparseVec::unit(0, q), SparseVec::unit(1, q)}}, {2, {SparseVec::unit(2, q)}}};
  CHECK(graded_quotient_dims(q, ambient, {}) == GradedDims{{0, 2}, {2, 1}});
  CHECK(graded_quotient_dims(q, ambient, ambient).empty());
  GradedVectors sub{{0, {SparseVec::unit(0, q) + SparseVec::unit(1, q)}}};
  CHECK(graded_quotient_dims(q, {{0, ambient[0]}}, sub) == GradedDims{{0, 1}});
}

TEST_CASE("echelon insertion and reduction") {
  Field f3 = Field::prime(3);
  EchelonBasis eb(f3);
  SparseVec a = SparseVec::unit(1, f3) + SparseVec::unit(3, f3);
  SparseVec b = SparseVec::unit(3, f3);
  CHECK(eb.insert(a));
  CHECK(eb.insert(b));
  CHECK_FALSE(eb.insert(a + b));
  CHECK(eb.contains(SparseVec::unit(1, f3)));
  CHECK_FALSE(eb.contains(SparseVec::unit(2, f3)));
  CHECK(eb.rank() == 2);
  for (const auto& row : eb.rows()) CHECK(row.entries.front().second.is_one());
}

TEST_CASE("rank and kernel agree with dense elimination on random matrices") {
  std::mt19937_64 rng(11);
  for (Field f : {Field::rationals(), Field::prime(2), Field::prime(3), Field::prime(7)}) {
    for (int trial = 0; trial < 40; ++trial) {
      std::size_t rows = 1 + rng() % 7, cols = 1 + rng() % 7;
      auto dense = random_matrix(f, rng, rows, cols);
      SparseMatrix m(f, rows, cols);
      for (std::size_t r = 0; r < rows; ++r) m.data[r] = to_sparse(dense[r]);
      std::size_t rank = dense_rank(f, dense);
      CHECK(row_reduce(m).rank == rank);
      CHECK(row_reduce(m.transpose()).rank == rank);

      auto ker = kernel(f, m.data);
      CHECK(ker.size() == rows - rank);
      for (const SparseVec& k : ker) {
        SparseVec combo;
        for (const auto& [i, c] : k.entries) combo.axpy(c, m.data[i]);
        CHECK(combo.empty());
      }
    }
  }
}

TEST_CASE("polynomial arithmetic") {
  Field q = Field::rationals();
  auto x1 = ExactPolynomial::variable(q, 2, 0), x2 = ExactPolynomial::variable(q, 2, 1);
  CHECK(x2.divided_difference(0) == ExactPolynomial::constant(q, 2, 1));
  CHECK((x1 * x2).divided_difference(0).is_zero());
  CHECK((x1 * x1).divided_difference(0) == -(x1 + x2));
  CHECK(((x1 * x1 - x2 * x2).divide_by_difference(0, 1)) == x1 + x2);
  CHECK_THROWS_AS((x1 * x1 + x2).divide_by_difference(0, 1), PolynomialError);
  CHECK(elementary_symmetric(q, 3, 2).is_symmetric());
  CHECK((x1 + x2).pow(3).size() == 4);
}
