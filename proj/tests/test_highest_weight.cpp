#include <doctest.h>

#include <map>
#include <set>

#include "klr/highest_weight.hpp"

using namespace klr;

namespace {

const IntMatrix kA1{{2}};
const IntMatrix kA2{{2, -1}, {-1, 2}};
const IntMatrix kB2{{2, -2}, {-1, 2}};
const IntMatrix kG2{{2, -1}, {-3, 2}};

// Freudenthal's multiplicity formula over finite type, with weights written
// as Lambda - beta and beta in simple-root coordinates.
class Freudenthal {
 public:
  Freudenthal(const CartanDatum& c, const std::vector<int>& lambda) : c_(c), lambda_(lambda) {
    std::set<std::vector<int>> seen;
    std::vector<std::vector<int>> todo;
    for (std::size_t i = 0; i < c.rank(); ++i) {
      std::vector<int> e(c.rank(), 0);
      e[i] = 1;
      todo.push_back(e);
    }
    while (!todo.empty()) {
      auto b = todo.back();
      todo.pop_back();
      if (!seen.insert(b).second) continue;
      for (std::size_t i = 0; i < c.rank(); ++i) {
        int p = 0;
        for (std::size_t j = 0; j < c.rank(); ++j) p += b[j] * c.a(i, j);
        auto r = b;
        r[i] -= p;
        bool positive = true;
        for (int v : r) positive = positive && v >= 0;
        if (positive) todo.push_back(r);
      }
    }
    roots_.assign(seen.begin(), seen.end());
  }

  long mult(const std::vector<int>& beta) {
    for (int v : beta)
      if (v < 0) return 0;
    bool zero = true;
    for (int v : beta) zero = zero && v == 0;
    if (zero) return 1;
    auto it = memo_.find(beta);
    if (it != memo_.end()) return it->second;
    long lhs = 2 * form_lambda_rho(beta) - form(beta, beta);
    long rhs = 0;
    for (const auto& a : roots_) {
      for (int k = 1;; ++k) {
        std::vector<int> g = beta;
        bool ok = true;
        for (std::size_t i = 0; i < g.size(); ++i) {
          g[i] -= k * a[i];
          ok = ok && g[i] >= 0;
        }
        if (!ok) break;
        rhs += mult(g) * (form_lambda(a) - form(g, a));
      }
    }
    rhs *= 2;
    long m = lhs == 0 ? 0 : rhs / lhs;
    REQUIRE((lhs == 0 || rhs % lhs == 0));
    memo_[beta] = m;
    return m;
  }

 private:
  long form(const std::vector<int>& x, const std::vector<int>& y) const {
    long s = 0;
    for (std::size_t i = 0; i < x.size(); ++i)
      for (std::size_t j = 0; j < y.size(); ++j) s += static_cast<long>(x[i]) * y[j] * c_.simple_form(i, j);
    return s;
  }
  long form_lambda(const std::vector<int>& x) const {
    long s = 0;
    for (std::size_t i = 0; i < x.size(); ++i) s += static_cast<long>(x[i]) * c_.d(i) * lambda_[i];
    return s;
  }
  long form_lambda_rho(const std::vector<int>& x) const {
    long s = 0;
    for (std::size_t i = 0; i < x.size(); ++i) s += static_cast<long>(x[i]) * c_.d(i) * (lambda_[i] + 1);
    return s;
  }

  CartanDatum c_;
  std::vector<int> lambda_;
  std::vector<std::vector<int>> roots_;
  std::map<std::vector<int>, long> memo_;
};

}  // namespace

TEST_CASE("contravariant form examples") {
  CartanDatum a1 = CartanDatum::validate(kA1), a2 = CartanDatum::validate(kA2);
  CHECK(contravariant_form({}, {}, make_weight(a1, {2}), a1) == 1);
  CHECK(contravariant_form({0}, {0}, make_weight(a1, {2}), a1) == 2);
  CHECK(contravariant_form({0, 1}, {1, 0}, make_weight(a2, {1, 0}), a2) == 0);
  // <f^n v, f^n v> = n! l (l-1) ... (l-n+1) for sl2.
  CHECK(contravariant_form({0, 0, 0}, {0, 0, 0}, make_weight(a1, {5}), a1) == 6 * 5 * 4 * 3);
  CHECK_THROWS_AS(contravariant_form({0}, {0, 0}, make_weight(a1, {2}), a1), HighestWeightError);
}

TEST_CASE("weight multiplicity examples") {
  CartanDatum a1 = CartanDatum::validate(kA1), a2 = CartanDatum::validate(kA2);
  CHECK(weight_multiplicity(make_weight(a2, {1, 1}), make_root(a2, {0, 0}), a2) == 1);
  CHECK(weight_multiplicity(make_weight(a1, {2}), make_root(a1, {3}), a1) == 0);
  CHECK(weight_multiplicity(make_weight(a2, {1, 0}), make_root(a2, {1, 1}), a2) == 1);
  CHECK(weight_multiplicity(make_weight(a2, {1, 1}), make_root(a2, {1, 1}), a2) == 2);
  CHECK_THROWS_AS(weight_multiplicity(make_weight(a1, {9}), make_root(a1, {9}), a1, 8), HighestWeightError);
}

TEST_CASE("sl2 multiplicities") {
  CartanDatum a1 = CartanDatum::validate(kA1);
  for (int l = 0; l <= 5; ++l)
    for (int n = 0; n <= 6; ++n)
      CHECK(weight_multiplicity(make_weight(a1, {l}), make_root(a1, {n}), a1) == (n <= l ? 1u : 0u));
}

TEST_CASE("Gram matrices are symmetric") {
  CartanDatum b2 = CartanDatum::validate(kB2);
  auto g = gram_matrix(make_weight(b2, {1, 1}), make_root(b2, {2, 2}), b2);
  for (std::size_t i = 0; i < g.size(); ++i)
    for (std::size_t j = 0; j < g.size(); ++j) CHECK(g[i][j] == g[j][i]);
}

TEST_CASE("Gram rank agrees with Freudenthal on finite type") {
  struct Case {
    IntMatrix m;
    std::vector<std::vector<int>> lambdas;
  };
  for (const Case& cs : {Case{kA2, {{1, 0}, {1, 1}, {2, 0}, {2, 1}}}, Case{kB2, {{1, 0}, {0, 1}, {1, 1}}},
                         Case{kG2, {{1, 0}, {0, 1}}}}) {
    CartanDatum c = CartanDatum::validate(cs.m);
    for (const auto& lam : cs.lambdas) {
      Freudenthal oracle(c, lam);
      for (int a = 0; a <= 4; ++a)
        for (int b = 0; a + b <= 5; ++b) {
          std::size_t gram = weight_multiplicity(make_weight(c, lam), make_root(c, {a, b}), c);
          CHECK_MESSAGE(static_cast<long>(gram) == oracle.mult({a, b}), c.to_string() << " alpha=(" << a << "," << b << ")");
        }
    }
  }
}

TEST_CASE("multiplicity is invariant under simple reflections") {
  CartanDatum a2 = CartanDatum::validate(kA2);
  std::vector<int> lam{1, 1};
  DominantWeight w = make_weight(a2, lam);
  for (int a = 0; a <= 3; ++a)
    for (int b = 0; b <= 3; ++b) {
      std::size_t m = weight_multiplicity(w, make_root(a2, {a, b}), a2);
      for (std::size_t i = 0; i < 2; ++i) {
        int p = pairing(i, w, make_root(a2, {a, b}), a2);
        std::vector<int> r{a, b};
        r[i] += p;
        if (r[0] < 0 || r[1] < 0 || r[0] + r[1] > 7) continue;
        CHECK(weight_multiplicity(w, make_root(a2, r), a2) == m);
      }
    }
}
