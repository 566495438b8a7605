#include "klr/cartan_data.hpp"

#include <algorithm>
#include <numeric>
#include <queue>
#include <sstream>

namespace klr {

const char* CartanError::kind_name(Kind k) {
  switch (k) {
    case Kind::NotSymmetrizable: return "NotSymmetrizable";
    case Kind::DiagonalNotTwo: return "DiagonalNotTwo";
    case Kind::SignViolation: return "SignViolation";
    case Kind::IndexMismatch: return "IndexMismatch";
    case Kind::NotSquare: return "NotSquare";
    case Kind::NegativeCoefficient: return "NegativeCoefficient";
  }
  return "Unknown";
}

const char* QValidationIssue::kind_name(Kind k) {
  switch (k) {
    case Kind::SymmetryViolation: return "SymmetryViolation";
    case Kind::LeadingCoefficientNotUnit: return "LeadingCoefficientNotUnit";
    case Kind::HomogeneitySupportViolation: return "HomogeneitySupportViolation";
    case Kind::DiagonalNonzero: return "DiagonalNonzero";
  }
  return "Unknown";
}

CartanDatum CartanDatum::validate(const IntMatrix& m, const std::optional<std::vector<int>>& symmetrizers) {
  const std::size_t r = m.size();
  for (const auto& row : m)
    if (row.size() != r) throw CartanError(CartanError::Kind::NotSquare, "Cartan matrix is not square");
  for (std::size_t i = 0; i < r; ++i) {
    if (m[i][i] != 2)
      throw CartanError(CartanError::Kind::DiagonalNotTwo, "a_" + std::to_string(i + 1) + std::to_string(i + 1) + " != 2");
    for (std::size_t j = 0; j < r; ++j) {
      if (i == j) continue;
      if (m[i][j] > 0)
        throw CartanError(CartanError::Kind::SignViolation, "positive off-diagonal entry at (" + std::to_string(i + 1) +
                                                                "," + std::to_string(j + 1) + ")");
      if ((m[i][j] == 0) != (m[j][i] == 0))
        throw CartanError(CartanError::Kind::SignViolation, "zero pattern not symmetric at (" + std::to_string(i + 1) +
                                                                "," + std::to_string(j + 1) + ")");
    }
  }
  CartanDatum c;
  c.a_ = m;
  if (symmetrizers) {
    if (symmetrizers->size() != r)
      throw CartanError(CartanError::Kind::IndexMismatch, "symmetrizer count does not match rank");
    for (int d : *symmetrizers)
      if (d < 1) throw CartanError(CartanError::Kind::NotSymmetrizable, "symmetrizers must be positive");
    c.d_ = *symmetrizers;
  } else {
    std::vector<mpq_class> d(r, 0);
    std::vector<bool> seen(r, false);
    for (std::size_t root = 0; root < r; ++root) {
      if (seen[root]) continue;
      std::vector<std::size_t> block;
      std::queue<std::size_t> todo;
      todo.push(root);
      seen[root] = true;
      d[root] = 1;
      while (!todo.empty()) {
        std::size_t i = todo.front();
        todo.pop();
        block.push_back(i);
        for (std::size_t j = 0; j < r; ++j) {
          if (j == i || m[i][j] == 0 || seen[j]) continue;
          // d_i a_ij = d_j a_ji
          d[j] = d[i] * m[i][j] / m[j][i];
          seen[j] = true;
          todo.push(j);
        }
      }
      mpz_class l = 1;
      for (auto i : block) l = lcm(l, mpz_class(d[i].get_den()));
      mpz_class g = 0;
      for (auto i : block) {
        d[i] *= l;
        g = gcd(g, mpz_class(d[i].get_num()));
      }
      for (auto i : block) d[i] /= g;
    }
    c.d_.resize(r);
    for (std::size_t i = 0; i < r; ++i) c.d_[i] = static_cast<int>(d[i].get_num().get_si());
  }
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j)
      if (c.d_[i] * m[i][j] != c.d_[j] * m[j][i])
        throw CartanError(CartanError::Kind::NotSymmetrizable,
                          "d_i a_ij != d_j a_ji at (" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")");
  return c;
}

bool CartanDatum::simply_laced() const {
  for (std::size_t i = 0; i < rank(); ++i)
    for (std::size_t j = 0; j < rank(); ++j)
      if (i != j && a_[i][j] != 0 && a_[i][j] != -1) return false;
  return true;
}

bool CartanDatum::finite_type() const {
  // Positive definite symmetrized matrix, tested by exact leading minors.
  const std::size_t r = rank();
  std::vector<std::vector<mpq_class>> b(r, std::vector<mpq_class>(r));
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) b[i][j] = simple_form(i, j);
  for (std::size_t k = 0; k < r; ++k) {
    if (b[k][k] <= 0) return false;
    for (std::size_t i = k + 1; i < r; ++i) {
      mpq_class f = b[i][k] / b[k][k];
      for (std::size_t j = k; j < r; ++j) b[i][j] -= f * b[k][j];
    }
  }
  return true;
}

std::string CartanDatum::to_string() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < rank(); ++i) {
    if (i) os << ',';
    os << '[';
    for (std::size_t j = 0; j < rank(); ++j) os << (j ? "," : "") << a_[i][j];
    os << ']';
  }
  os << ']';
  return os.str();
}

int RootVector::height() const { return std::accumulate(coeffs.begin(), coeffs.end(), 0); }

DominantWeight make_weight(const CartanDatum& c, const std::vector<int>& coeffs) {
  if (coeffs.size() != c.rank()) throw CartanError(CartanError::Kind::IndexMismatch, "weight length does not match rank");
  for (int v : coeffs)
    if (v < 0) throw CartanError(CartanError::Kind::NegativeCoefficient, "dominant weight has a negative coefficient");
  return DominantWeight{coeffs};
}

RootVector make_root(const CartanDatum& c, const std::vector<int>& coeffs) {
  if (coeffs.size() != c.rank()) throw CartanError(CartanError::Kind::IndexMismatch, "root length does not match rank");
  for (int v : coeffs)
    if (v < 0) throw CartanError(CartanError::Kind::NegativeCoefficient, "root has a negative coefficient");
  return RootVector{coeffs};
}

RootVector root_of_sequence(const CartanDatum& c, const Sequence& nu) {
  RootVector r{std::vector<int>(c.rank(), 0)};
  for (int i : nu) {
    if (i < 0 || static_cast<std::size_t>(i) >= c.rank())
      throw CartanError(CartanError::Kind::IndexMismatch, "sequence entry out of range");
    ++r.coeffs[i];
  }
  return r;
}

int bilinear_form(const RootVector& a, const RootVector& b, const CartanDatum& c) {
  if (a.coeffs.size() != c.rank() || b.coeffs.size() != c.rank())
    throw CartanError(CartanError::Kind::IndexMismatch, "root length does not match rank");
  int s = 0;
  for (std::size_t i = 0; i < c.rank(); ++i)
    for (std::size_t j = 0; j < c.rank(); ++j) s += a.coeffs[i] * b.coeffs[j] * c.simple_form(i, j);
  return s;
}

int pairing(std::size_t i, const DominantWeight& lambda, const RootVector& beta, const CartanDatum& c) {
  if (lambda.coeffs.size() != c.rank() || beta.coeffs.size() != c.rank() || i >= c.rank())
    throw CartanError(CartanError::Kind::IndexMismatch, "pairing arguments do not match rank");
  int s = lambda.coeffs[i];
  for (std::size_t j = 0; j < c.rank(); ++j) s -= beta.coeffs[j] * c.a(i, j);
  return s;
}

int d_lambda_alpha(const DominantWeight& lambda, const RootVector& alpha, const CartanDatum& c) {
  if (lambda.coeffs.size() != c.rank() || alpha.coeffs.size() != c.rank())
    throw CartanError(CartanError::Kind::IndexMismatch, "arguments do not match rank");
  int al = 0;
  for (std::size_t i = 0; i < c.rank(); ++i) al += alpha.coeffs[i] * c.d(i) * lambda.coeffs[i];
  return 2 * al - bilinear_form(alpha, alpha, c);
}

std::vector<Sequence> enumerate_sequences(const RootVector& alpha) {
  Sequence s;
  for (std::size_t i = 0; i < alpha.coeffs.size(); ++i)
    for (int k = 0; k < alpha.coeffs[i]; ++k) s.push_back(static_cast<int>(i));
  std::vector<Sequence> out;
  do {
    out.push_back(s);
  } while (std::next_permutation(s.begin(), s.end()));
  return out;
}

std::string sequence_to_string(const Sequence& nu) {
  std::string s = "(";
  for (std::size_t i = 0; i < nu.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(nu[i] + 1);
  }
  return s + ")";
}

QMatrix QMatrix::default_for(const CartanDatum& c) {
  QMatrix q(c.rank());
  for (std::size_t i = 0; i < c.rank(); ++i)
    for (std::size_t j = 0; j < c.rank(); ++j) {
      if (i == j) continue;
      int ii = static_cast<int>(i), jj = static_cast<int>(j);
      if (c.a(i, j) == 0) {
        q.set(ii, jj, 0, 0, 1);
      } else {
        q.set(ii, jj, -c.a(i, j), 0, 1);
        q.set(ii, jj, 0, -c.a(j, i), 1);
      }
    }
  return q;
}

void QMatrix::set(int i, int j, int k, int q, const mpq_class& c) {
  Key key{i, j, k, q};
  if (sgn(c) == 0)
    c_.erase(key);
  else
    c_[key] = c;
}

void QMatrix::set_pair(int i, int j, const std::vector<std::tuple<int, int, mpq_class>>& terms) {
  for (auto it = c_.begin(); it != c_.end();) {
    auto [a, b, k, q] = it->first;
    if ((a == i && b == j) || (a == j && b == i))
      it = c_.erase(it);
    else
      ++it;
  }
  for (const auto& [k, q, c] : terms) {
    set(i, j, k, q, c);
    if (i != j) set(j, i, q, k, c);
  }
}

mpq_class QMatrix::coefficient(int i, int j, int k, int q) const {
  auto it = c_.find(Key{i, j, k, q});
  return it == c_.end() ? mpq_class(0) : it->second;
}

ExactPolynomial QMatrix::poly(const Field& f, int i, int j, std::size_t nvars, std::size_t u, std::size_t v) const {
  ExactPolynomial p(f, nvars);
  for (auto it = c_.lower_bound(Key{i, j, 0, 0}); it != c_.end(); ++it) {
    auto [a, b, k, q] = it->first;
    if (a != i || b != j) break;
    std::vector<int> e(nvars, 0);
    e[u] += k;
    e[v] += q;
    p += ExactPolynomial::monomial(f, nvars, e, Scalar::from_rational(f, it->second));
  }
  return p;
}

std::string QMatrix::to_string(int i, int j) const {
  ExactPolynomial p = poly(Field::rationals(), i, j, 2, 0, 1);
  std::string s = p.to_string();
  std::string out;
  for (std::size_t k = 0; k < s.size(); ++k) {
    if (s[k] == 'x' && k + 1 < s.size() && (s[k + 1] == '1' || s[k + 1] == '2')) {
      out += s[k + 1] == '1' ? 'u' : 'v';
      ++k;
    } else {
      out += s[k];
    }
  }
  return out;
}

std::vector<QValidationIssue> validate_q_matrix(const QMatrix& q, const CartanDatum& c, const Field& f) {
  using K = QValidationIssue::Kind;
  std::vector<QValidationIssue> out;
  auto name = [](int i, int j) { return "Q_" + std::to_string(i + 1) + std::to_string(j + 1); };
  for (const auto& [key, v] : q.coefficients()) {
    auto [i, j, k, e] = key;
    if (i < 0 || j < 0 || static_cast<std::size_t>(i) >= c.rank() || static_cast<std::size_t>(j) >= c.rank()) {
      out.push_back({K::HomogeneitySupportViolation, "coefficient outside the index set"});
      continue;
    }
    if (i == j) {
      out.push_back({K::DiagonalNonzero, name(i, j) + " has a nonzero coefficient"});
      continue;
    }
    if (q.coefficient(j, i, e, k) != v)
      out.push_back({K::SymmetryViolation, name(i, j) + "(u,v) != " + name(j, i) + "(v,u) at u^" + std::to_string(k) +
                                               " v^" + std::to_string(e)});
    // 2(a_i,a_j) = -(a_i,a_i) k - (a_j,a_j) q
    if (2 * c.simple_form(i, j) != -2 * c.d(i) * k - 2 * c.d(j) * e)
      out.push_back({K::HomogeneitySupportViolation,
                     name(i, j) + " has a term u^" + std::to_string(k) + " v^" + std::to_string(e) + " of wrong degree"});
  }
  for (std::size_t i = 0; i < c.rank(); ++i)
    for (std::size_t j = 0; j < c.rank(); ++j) {
      if (i == j) continue;
      int ii = static_cast<int>(i), jj = static_cast<int>(j);
      mpq_class lead = q.coefficient(ii, jj, -c.a(i, j), 0);
      bool unit = sgn(lead) != 0;
      if (unit && !f.is_rational()) {
        try {
          unit = !Scalar::from_rational(f, lead).is_zero();
        } catch (const ArithmeticError&) {
          unit = false;
        }
      }
      if (!unit)
        out.push_back({K::LeadingCoefficientNotUnit, "leading coefficient of " + name(ii, jj) + " is not a unit in " + f.name()});
    }
  if (!f.is_rational()) {
    for (const auto& [key, v] : q.coefficients()) {
      try {
        (void)Scalar::from_rational(f, v);
      } catch (const ArithmeticError&) {
        out.push_back({K::LeadingCoefficientNotUnit, "coefficient " + v.get_str() + " is undefined in " + f.name()});
      }
    }
  }
  return out;
}

}  // namespace klr
