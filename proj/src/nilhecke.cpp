#include "klr/nilhecke.hpp"

#include <algorithm>
#include <sstream>

namespace klr {

std::string word_to_string(const NhWord& w) {
  if (w.empty()) return "1";
  std::ostringstream os;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) os << ' ';
    os << (w[i].kind == NhLetter::Kind::X ? "x" : "t") << w[i].index;
  }
  return os.str();
}

NilHeckeElement NilHeckeElement::identity(const Field& f, int n) { return word(f, n, {}, Scalar::one(f)); }

NilHeckeElement NilHeckeElement::word(const Field& f, int n, const NhWord& w, const Scalar& c) {
  for (const auto& l : w) {
    int hi = l.kind == NhLetter::Kind::X ? n : n - 1;
    if (l.index < 1 || l.index > hi)
      throw NilHeckeError(NilHeckeError::Kind::ParameterOutOfRange, "generator index out of range: " + word_to_string(w));
  }
  NilHeckeElement e(f, n);
  e.add(w, c);
  return e;
}

NilHeckeElement NilHeckeElement::x(const Field& f, int n, int k, int power) {
  return word(f, n, NhWord(static_cast<std::size_t>(power), NhLetter{NhLetter::Kind::X, k}), Scalar::one(f));
}

NilHeckeElement NilHeckeElement::tau(const Field& f, int n, int j) {
  return word(f, n, {NhLetter{NhLetter::Kind::Tau, j}}, Scalar::one(f));
}

int NilHeckeElement::word_degree(const NhWord& w) {
  int d = 0;
  for (const auto& l : w) d += l.kind == NhLetter::Kind::X ? 2 : -2;
  return d;
}

bool NilHeckeElement::is_homogeneous() const {
  for (const auto& [w, c] : terms_)
    if (word_degree(w) != word_degree(terms_.front().first)) return false;
  return true;
}

void NilHeckeElement::check(const NilHeckeElement& o) const {
  if (n_ != o.n_) throw NilHeckeError(NilHeckeError::Kind::RankMismatch, "nilHecke ranks differ");
  if (field_ != o.field_) throw ArithmeticError("nilHecke elements over different fields");
}

void NilHeckeElement::add(const NhWord& w, const Scalar& c) {
  if (c.is_zero()) return;
  for (auto it = terms_.begin(); it != terms_.end(); ++it) {
    if (it->first == w) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
      return;
    }
  }
  terms_.emplace_back(w, c);
}

NilHeckeElement NilHeckeElement::operator*(const NilHeckeElement& o) const {
  check(o);
  NilHeckeElement r(field_, n_);
  for (const auto& [w1, c1] : terms_)
    for (const auto& [w2, c2] : o.terms_) {
      NhWord w = w1;
      w.insert(w.end(), w2.begin(), w2.end());
      r.add(w, c1 * c2);
    }
  return r;
}

NilHeckeElement NilHeckeElement::operator+(const NilHeckeElement& o) const {
  check(o);
  NilHeckeElement r = *this;
  for (const auto& [w, c] : o.terms_) r.add(w, c);
  return r;
}

NilHeckeElement NilHeckeElement::operator-(const NilHeckeElement& o) const {
  check(o);
  NilHeckeElement r = *this;
  for (const auto& [w, c] : o.terms_) r.add(w, -c);
  return r;
}

NilHeckeElement NilHeckeElement::scaled(const Scalar& c) const {
  NilHeckeElement r(field_, n_);
  for (const auto& [w, v] : terms_) r.add(w, v * c);
  return r;
}

std::string NilHeckeElement::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    if (i) os << " + ";
    os << terms_[i].second.to_string() << '*' << word_to_string(terms_[i].first);
  }
  return os.str();
}

ExactPolynomial act_word(const NhWord& w, const ExactPolynomial& f) {
  ExactPolynomial g = f;
  for (auto it = w.rbegin(); it != w.rend(); ++it) {
    if (g.is_zero()) break;
    if (it->kind == NhLetter::Kind::X)
      g = g.mul_var(static_cast<std::size_t>(it->index - 1));
    else
      g = g.divided_difference(static_cast<std::size_t>(it->index - 1));
  }
  return g;
}

ExactPolynomial act(const NilHeckeElement& e, const ExactPolynomial& f) {
  if (static_cast<int>(f.nvars()) != e.n())
    throw NilHeckeError(NilHeckeError::Kind::VariableCountMismatch,
                        "polynomial has " + std::to_string(f.nvars()) + " variables, algebra rank is " + std::to_string(e.n()));
  ExactPolynomial out(f.field(), f.nvars());
  for (const auto& [w, c] : e.terms()) out += act_word(w, f).scaled(c);
  return out;
}

std::vector<Exponent> artin_basis(int n) {
  std::vector<Exponent> out;
  Exponent a{};
  a.fill(0);
  while (true) {
    out.push_back(a);
    int k = n - 2;
    while (k >= 0 && a[k] == n - 1 - k) {
      a[k] = 0;
      --k;
    }
    if (k < 0) break;
    ++a[k];
  }
  return out;
}

ExactPolynomial elementary_to_x(const ElementaryPoly& p, int n) {
  const Field& f = p.field();
  std::vector<ExactPolynomial> e;
  for (int i = 1; i <= n; ++i) e.push_back(elementary_symmetric(f, static_cast<std::size_t>(n), static_cast<std::size_t>(i)));
  std::map<std::pair<int, int>, ExactPolynomial> powers;
  auto power = [&](int i, int k) -> const ExactPolynomial& {
    auto it = powers.find({i, k});
    if (it == powers.end()) it = powers.emplace(std::make_pair(i, k), e[i].pow(static_cast<unsigned>(k))).first;
    return it->second;
  };
  ExactPolynomial out(f, static_cast<std::size_t>(n));
  for (const auto& [ex, c] : p.terms()) {
    ExactPolynomial t = ExactPolynomial::constant(f, static_cast<std::size_t>(n), c);
    for (int i = 0; i < n; ++i)
      if (ex[i]) t = t * power(i, ex[i]);
    out += t;
  }
  return out;
}

std::map<Exponent, ElementaryPoly> artin_expand(const ExactPolynomial& f, int n, const Exponent* only) {
  if (static_cast<int>(f.nvars()) != n)
    throw NilHeckeError(NilHeckeError::Kind::VariableCountMismatch, "polynomial variable count differs from rank");
  if (n < 1 || 2 * static_cast<std::size_t>(n) > kMaxVars)
    throw NilHeckeError(NilHeckeError::Kind::ParameterOutOfRange, "rank outside the supported range");
  const Field& F = f.field();
  const std::size_t nv = 2 * static_cast<std::size_t>(n);
  // Slot n + i - 1 holds the i-th elementary symmetric polynomial of the
  // variables not yet split off.
  auto E = [n](int i) { return static_cast<std::size_t>(n + i - 1); };
  std::map<Exponent, ElementaryPoly> out;
  if (only && (*only)[n - 1] != 0) return out;

  ExactPolynomial P(F, nv);
  for (const auto& [e, c] : f.terms()) {
    Exponent g = e;
    g[E(1)] = g[n - 1];
    g[n - 1] = 0;
    P.add_term(g, c);
  }
  for (int k = n - 1; k >= 1 && !P.is_zero(); --k) {
    const int m = n - k;
    const int N = n - k + 1;
    const std::size_t xs = static_cast<std::size_t>(k - 1);
    // E'_i = sum_j (-x_k)^j E_{i-j} where E' omits x_k
    std::vector<ExactPolynomial> sub(static_cast<std::size_t>(m + 1));
    for (int i = 1; i <= m; ++i) {
      ExactPolynomial s(F, nv);
      for (int j = 0; j <= i; ++j) {
        Exponent g{};
        g.fill(0);
        g[xs] = static_cast<std::uint8_t>(j);
        if (i - j > 0) g[E(i - j)] = 1;
        s.add_term(g, Scalar::from_int(F, j % 2 ? -1 : 1));
      }
      sub[i] = s;
    }
    std::map<Exponent, ExactPolynomial> cache;
    ExactPolynomial Q(F, nv);
    for (const auto& [e, c] : P.terms()) {
      Exponent rest = e;
      Exponent epart{};
      epart.fill(0);
      for (int i = 1; i <= m; ++i) {
        epart[i] = rest[E(i)];
        rest[E(i)] = 0;
      }
      auto it = cache.find(epart);
      if (it == cache.end()) {
        ExactPolynomial S = ExactPolynomial::constant(F, nv, 1);
        for (int i = 1; i <= m; ++i)
          if (epart[i]) S = S * sub[i].pow(epart[i]);
        it = cache.emplace(epart, std::move(S)).first;
      }
      Q += it->second.mul_monomial(rest).scaled(c);
    }
    int maxa = 0;
    for (const auto& [e, c] : Q.terms()) maxa = std::max(maxa, int(e[xs]));
    for (int a = maxa; a >= N; --a) {
      std::vector<std::pair<Exponent, Scalar>> hit;
      for (const auto& [e, c] : Q.terms())
        if (e[xs] == a) hit.emplace_back(e, c);
      for (const auto& [e, c] : hit) {
        Q.add_term(e, -c);
        for (int i = 1; i <= N; ++i) {
          Exponent g = e;
          g[xs] = static_cast<std::uint8_t>(a - i);
          g[E(i)] = static_cast<std::uint8_t>(g[E(i)] + 1);
          Q.add_term(g, i % 2 ? c : -c);
        }
      }
    }
    if (only) {
      ExactPolynomial kept(F, nv);
      for (const auto& [e, c] : Q.terms())
        if (e[xs] == (*only)[xs]) kept.add_term(e, c);
      Q = std::move(kept);
    }
    P = std::move(Q);
  }
  for (const auto& [e, c] : P.terms()) {
    Exponent b{}, s{};
    b.fill(0);
    s.fill(0);
    for (int i = 0; i < n; ++i) {
      b[i] = e[i];
      if (b[i] > n - 1 - i)
        throw NilHeckeError(NilHeckeError::Kind::ExpansionFailure, "exponent left outside the Artin range");
      s[i] = e[E(i + 1)];
    }
    auto it = out.try_emplace(b, F, static_cast<std::size_t>(n)).first;
    it->second.add_term(s, c);
  }
  for (auto it = out.begin(); it != out.end();) {
    if (it->second.is_zero())
      it = out.erase(it);
    else
      ++it;
  }
  return out;
}

SymMatrixModel SymMatrixModel::operator*(const SymMatrixModel& o) const {
  if (n != o.n) throw NilHeckeError(NilHeckeError::Kind::RankMismatch, "matrix models of different rank");
  const std::size_t d = entries.size();
  SymMatrixModel r{field, n, basis, std::vector<std::vector<ExactPolynomial>>(d)};
  for (std::size_t i = 0; i < d; ++i) {
    r.entries[i].assign(d, ExactPolynomial(field, static_cast<std::size_t>(n)));
    for (std::size_t k = 0; k < d; ++k) {
      if (entries[i][k].is_zero()) continue;
      for (std::size_t j = 0; j < d; ++j)
        if (!o.entries[k][j].is_zero()) r.entries[i][j] += entries[i][k] * o.entries[k][j];
    }
  }
  return r;
}

ExactPolynomial SymMatrixModel::trace() const {
  ExactPolynomial t(field, static_cast<std::size_t>(n));
  for (std::size_t i = 0; i < entries.size(); ++i) t += entries[i][i];
  return t;
}

bool SymMatrixModel::is_identity() const {
  for (std::size_t i = 0; i < entries.size(); ++i)
    for (std::size_t j = 0; j < entries.size(); ++j) {
      const auto& e = entries[i][j];
      if (i == j ? !(e.is_constant() && e.constant_value().is_one()) : !e.is_zero()) return false;
    }
  return true;
}

namespace {

ExactPolynomial basis_poly(const Field& f, int n, const Exponent& b) {
  ExactPolynomial p(f, static_cast<std::size_t>(n));
  p.add_term(b, Scalar::one(f));
  return p;
}

}  // namespace

SymMatrixModel to_sym_matrix(const NilHeckeElement& e) {
  const int n = e.n();
  if (n < 1) throw NilHeckeError(NilHeckeError::Kind::ParameterOutOfRange, "rank must be positive");
  SymMatrixModel m{e.field(), n, artin_basis(n), {}};
  const std::size_t d = m.basis.size();
  std::map<Exponent, std::size_t> row_of;
  for (std::size_t i = 0; i < d; ++i) row_of[m.basis[i]] = i;
  m.entries.assign(d, std::vector<ExactPolynomial>(d, ExactPolynomial(e.field(), static_cast<std::size_t>(n))));
  for (std::size_t j = 0; j < d; ++j) {
    ExactPolynomial img = act(e, basis_poly(e.field(), n, m.basis[j]));
    for (const auto& [b, coeff] : artin_expand(img, n)) {
      auto it = row_of.find(b);
      if (it == row_of.end()) throw NilHeckeError(NilHeckeError::Kind::ExpansionFailure, "expansion left the basis");
      m.entries[it->second][j] = elementary_to_x(coeff, n);
    }
  }
  return m;
}

ElementaryPoly nh_trace_elementary(const NilHeckeElement& e) {
  const int n = e.n();
  if (n < 1) throw NilHeckeError(NilHeckeError::Kind::ParameterOutOfRange, "rank must be positive");
  ElementaryPoly t(e.field(), static_cast<std::size_t>(n));
  for (const auto& b : artin_basis(n)) {
    ExactPolynomial img = act(e, basis_poly(e.field(), n, b));
    auto exp = artin_expand(img, n, &b);
    auto it = exp.find(b);
    if (it != exp.end()) t += it->second;
  }
  return t;
}

ExactPolynomial nh_trace(const NilHeckeElement& e) { return elementary_to_x(nh_trace_elementary(e), e.n()); }

bool trace_equiv(const NilHeckeElement& a, const NilHeckeElement& b) {
  if (a.n() != b.n()) throw NilHeckeError(NilHeckeError::Kind::RankMismatch, "nilHecke ranks differ");
  return nh_trace_elementary(a) == nh_trace_elementary(b);
}

NhWord interval_tau_word(int u, int v) {
  NhWord w;
  for (int top = v - 1; top >= u; --top)
    for (int j = u; j <= top; ++j) w.push_back({NhLetter::Kind::Tau, j});
  return w;
}

NilHeckeElement e_interval(const Field& f, int n, int u, int v) {
  if (u < 1 || u > v || v > n)
    throw NilHeckeError(NilHeckeError::Kind::ParameterOutOfRange, "e_[u,v] needs 1 <= u <= v <= n");
  NhWord w = interval_tau_word(u, v);
  for (int j = u + 1; j <= v; ++j)
    for (int p = 0; p < j - u; ++p) w.push_back({NhLetter::Kind::X, j});
  return NilHeckeElement::word(f, n, w, Scalar::one(f));
}

NilHeckeElement X_kn(const Field& f, int n, int k) {
  if (n < 2 || k < 1) throw NilHeckeError(NilHeckeError::Kind::ParameterOutOfRange, "X_{k,n} needs n >= 2, k >= 1");
  NhWord w;
  for (int j = 2; j <= n - 1; ++j) w.push_back({NhLetter::Kind::X, j});
  for (int p = 0; p < k; ++p) w.push_back({NhLetter::Kind::X, n});
  for (int j = 1; j <= n - 1; ++j) w.push_back({NhLetter::Kind::Tau, j});
  return NilHeckeElement::word(f, n, w, Scalar::one(f));
}

NilHeckeElement X_ktl(const Field& f, int n, int k, int t, int l) {
  if (k < 1 || t < 1 || t > n - 2 || l < t + 2 || l > n)
    throw NilHeckeError(NilHeckeError::Kind::ParameterOutOfRange, "X_{k,t,l} needs k >= 1, 1 <= t <= n-2, t+2 <= l <= n");
  NhWord w;
  auto xs = [&](int j, int p) {
    for (int i = 0; i < p; ++i) w.push_back({NhLetter::Kind::X, j});
  };
  for (int j = 2; j <= t + 1; ++j) xs(j, j - 1);
  for (int j = t + 2; j <= l - 1; ++j) xs(j, t + 1);
  for (int j = l; j <= n; ++j) xs(j, t);
  xs(n, k - 1);
  for (int s = 1; s <= t; ++s)
    for (int j = 1; j <= n - s; ++j) w.push_back({NhLetter::Kind::Tau, j});
  for (int j = 1; j <= l - (t + 2); ++j) w.push_back({NhLetter::Kind::Tau, j});
  return NilHeckeElement::word(f, n, w, Scalar::one(f));
}

NilHeckeElement Z_nk(const Field& f, int n, int k) {
  if (n < 1 || k < 0) throw NilHeckeError(NilHeckeError::Kind::ParameterOutOfRange, "Z_n^(k) needs n >= 1, k >= 0");
  NhWord w;
  for (int p = 0; p < k; ++p) w.push_back({NhLetter::Kind::X, 1});
  for (int j = 1; j <= n - 1; ++j) w.push_back({NhLetter::Kind::Tau, j});
  return NilHeckeElement::word(f, n, w, Scalar::one(f));
}

}  // namespace klr
