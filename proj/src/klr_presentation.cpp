#include "klr/klr_presentation.hpp"

#include <algorithm>
#include <sstream>

namespace klr {

PermArray identity_perm() {
  PermArray w;
  for (std::size_t i = 0; i < kMaxStrands; ++i) w[i] = static_cast<std::uint8_t>(i);
  return w;
}

PermArray left_swap(const PermArray& w, int l) {
  PermArray r = w;
  std::swap(r[l - 1], r[l]);
  return r;
}

bool is_left_descent(const PermArray& w, int l) { return w[l - 1] > w[l]; }

int perm_length(const PermArray& w, int n) {
  int c = 0;
  for (int p = 0; p < n; ++p)
    for (int q = p + 1; q < n; ++q)
      if (w[p] > w[q]) ++c;
  return c;
}

std::vector<int> fixed_word(const PermArray& w, int n) {
  std::vector<int> out;
  PermArray v = w;
  while (true) {
    int d = 0;
    for (int l = 1; l < n; ++l)
      if (is_left_descent(v, l)) {
        d = l;
        break;
      }
    if (d == 0) break;
    out.push_back(d);
    v = left_swap(v, d);
  }
  return out;
}

PermArray perm_of_word(const std::vector<int>& word) {
  PermArray w = identity_perm();
  for (auto it = word.rbegin(); it != word.rend(); ++it) w = left_swap(w, *it);
  return w;
}

Scalar AlgElement::coefficient(const NormalMonomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Scalar::zero(field_) : it->second;
}

void AlgElement::add(const NormalMonomial& m, const Scalar& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

void AlgElement::axpy(const Scalar& c, const AlgElement& o) {
  if (c.is_zero()) return;
  for (const auto& [m, v] : o.terms_) add(m, c * v);
}

AlgElement& AlgElement::operator+=(const AlgElement& o) {
  for (const auto& [m, v] : o.terms_) add(m, v);
  return *this;
}

AlgElement& AlgElement::operator-=(const AlgElement& o) {
  for (const auto& [m, v] : o.terms_) add(m, -v);
  return *this;
}

AlgElement AlgElement::operator+(const AlgElement& o) const {
  AlgElement r = *this;
  r += o;
  return r;
}

AlgElement AlgElement::operator-(const AlgElement& o) const {
  AlgElement r = *this;
  r -= o;
  return r;
}

AlgElement AlgElement::scaled(const Scalar& c) const {
  AlgElement r(field_);
  if (c.is_zero()) return r;
  for (const auto& [m, v] : terms_) r.terms_.emplace_hint(r.terms_.end(), m, v * c);
  return r;
}

std::size_t KlrAlgebra::BaseKeyHash::operator()(const BaseKey& k) const {
  std::size_t h = static_cast<std::size_t>(k.gen) * 1000003u + k.seq;
  for (auto b : k.w) h = h * 31 + b;
  return h;
}

std::size_t KlrAlgebra::CorrKeyHash::operator()(const std::pair<std::vector<int>, std::uint16_t>& k) const {
  std::size_t h = k.second;
  for (int v : k.first) h = h * 131 + static_cast<std::size_t>(v);
  return h;
}

KlrAlgebra::KlrAlgebra(const CartanDatum& datum, const QMatrix& q, const RootVector& alpha, const Field& field)
    : datum_(datum), q_(q), alpha_(alpha), field_(field) {
  if (alpha.coeffs.size() != datum.rank()) throw KlrError(KlrError::Kind::OutOfRange, "root does not match the datum");
  n_ = alpha.height();
  if (n_ > static_cast<int>(kMaxStrands))
    throw KlrError(KlrError::Kind::TooManyStrands, "height " + std::to_string(n_) + " exceeds " + std::to_string(kMaxStrands));
  seqs_ = enumerate_sequences(alpha);
  for (std::size_t i = 0; i < seqs_.size(); ++i) seq_lookup_[seqs_[i]] = static_cast<std::uint16_t>(i);
  swap_target_.resize(seqs_.size());
  for (std::size_t i = 0; i < seqs_.size(); ++i)
    for (int l = 1; l < n_; ++l) {
      Sequence s = seqs_[i];
      std::swap(s[l - 1], s[l]);
      swap_target_[i].push_back(seq_lookup_.at(s));
    }
}

std::uint16_t KlrAlgebra::seq_index(const Sequence& nu) const {
  auto it = seq_lookup_.find(nu);
  if (it == seq_lookup_.end()) throw KlrError(KlrError::Kind::SequenceMismatch, "sequence " + sequence_to_string(nu) + " not in I^alpha");
  return it->second;
}

std::uint16_t KlrAlgebra::target(const PermArray& w, std::uint16_t seq) const {
  Sequence mu(static_cast<std::size_t>(n_));
  const Sequence& nu = seqs_[seq];
  for (int p = 0; p < n_; ++p) mu[p] = nu[w[p]];
  return seq_lookup_.at(mu);
}

int KlrAlgebra::degree(const NormalMonomial& m) const {
  const Sequence& nu = seqs_[m.seq];
  int d = 0;
  for (int p = 0; p < n_; ++p) d += m.a[p] * datum_.simple_form(nu[p], nu[p]);
  for (int p = 0; p < n_; ++p)
    for (int q = p + 1; q < n_; ++q)
      if (m.w[p] > m.w[q]) d -= datum_.simple_form(nu[m.w[p]], nu[m.w[q]]);
  return d;
}

int KlrAlgebra::degree(const GenWord& g) const {
  Sequence cur = seqs_.at(g.source);
  int d = 0;
  for (auto it = g.letters.rbegin(); it != g.letters.rend(); ++it) {
    if (it->kind == GenLetter::Kind::X) {
      d += datum_.simple_form(cur[it->index - 1], cur[it->index - 1]);
    } else if (it->kind == GenLetter::Kind::Tau) {
      d -= datum_.simple_form(cur[it->index - 1], cur[it->index]);
      std::swap(cur[it->index - 1], cur[it->index]);
    }
  }
  return d;
}

std::optional<int> KlrAlgebra::homogeneous_degree(const AlgElement& e) const {
  if (e.is_zero()) return 0;
  int d = degree(e.terms().begin()->first);
  for (const auto& [m, c] : e.terms())
    if (degree(m) != d) return std::nullopt;
  return d;
}

AlgElement KlrAlgebra::element(const NormalMonomial& m) const {
  AlgElement e(field_);
  e.add(m, Scalar::one(field_));
  return e;
}

AlgElement KlrAlgebra::idempotent(std::uint16_t seq) const {
  DotArray a{};
  a.fill(0);
  return element(NormalMonomial{identity_perm(), a, seq});
}

AlgElement KlrAlgebra::one() const {
  AlgElement e(field_);
  for (std::size_t s = 0; s < seqs_.size(); ++s) e += idempotent(static_cast<std::uint16_t>(s));
  return e;
}

AlgElement KlrAlgebra::shifted(const AlgElement& e, const DotArray& a) const {
  bool trivial = std::all_of(a.begin(), a.end(), [](std::uint8_t v) { return v == 0; });
  if (trivial) return e;
  AlgElement r(field_);
  for (const auto& [m, c] : e.terms()) {
    NormalMonomial t = m;
    for (int p = 0; p < n_; ++p) {
      unsigned s = unsigned(t.a[p]) + a[p];
      if (s > 255) throw KlrError(KlrError::Kind::OutOfRange, "dot exponent exceeds 255");
      t.a[p] = static_cast<std::uint8_t>(s);
    }
    r.add(t, c);
  }
  return r;
}

ExactPolynomial KlrAlgebra::q_poly(int i, int j, std::size_t u, std::size_t v) const {
  ExactPolynomial p = q_.poly(field_, i, j, static_cast<std::size_t>(n_), u, v);
  if (i != j && p.is_zero())
    throw KlrError(KlrError::Kind::RelationDataMissing,
                   "Q_" + std::to_string(i + 1) + std::to_string(j + 1) + " has no coefficients");
  return p;
}

ExactPolynomial KlrAlgebra::braid_correction(int i, int j, int k) const {
  auto key = std::make_tuple(i, j, k);
  auto it = braid_cache_.find(key);
  if (it != braid_cache_.end()) return it->second;
  const std::size_t s = static_cast<std::size_t>(k - 1);
  ExactPolynomial num = q_poly(i, j, s, s + 1) - q_poly(i, j, s + 2, s + 1);
  ExactPolynomial quo;
  try {
    quo = num.divide_by_difference(s, s + 2);
  } catch (const PolynomialError& e) {
    throw KlrError(KlrError::Kind::NotDivisible, std::string("braid correction: ") + e.what());
  }
  braid_cache_.emplace(key, quo);
  return quo;
}

const AlgElement& KlrAlgebra::left_x_base(int j, const PermArray& w, std::uint16_t seq) const {
  BaseKey key{j, w, seq};
  auto it = x_cache_.find(key);
  if (it != x_cache_.end()) return it->second;
  AlgElement res(field_);
  auto word = fixed_word(w, n_);
  if (word.empty()) {
    DotArray a{};
    a.fill(0);
    a[j - 1] = 1;
    res.add(NormalMonomial{w, a, seq}, Scalar::one(field_));
  } else {
    const int d = word.front();
    const PermArray w1 = left_swap(w, d);
    const int jj = j == d ? d + 1 : (j == d + 1 ? d : j);
    res = left_tau(d, left_x_base(jj, w1, seq));
    const Sequence& mu = seqs_[target(w1, seq)];
    if (mu[d - 1] == mu[d] && (j == d || j == d + 1)) {
      DotArray a{};
      a.fill(0);
      res.add(NormalMonomial{w1, a, seq}, Scalar::from_int(field_, j == d + 1 ? 1 : -1));
    }
  }
  return x_cache_.emplace(key, std::move(res)).first->second;
}

const AlgElement& KlrAlgebra::left_tau_base(int l, const PermArray& w, std::uint16_t seq) const {
  BaseKey key{l, w, seq};
  auto it = tau_cache_.find(key);
  if (it != tau_cache_.end()) return it->second;
  AlgElement res(field_);
  DotArray zero{};
  zero.fill(0);
  const PermArray w2 = left_swap(w, l);
  if (!is_left_descent(w, l)) {
    std::vector<int> u{l};
    auto f = fixed_word(w, n_);
    u.insert(u.end(), f.begin(), f.end());
    res.add(NormalMonomial{w2, zero, seq}, Scalar::one(field_));
    res += corr(u, seq);
  } else {
    const Sequence& mu = seqs_[target(w2, seq)];
    if (mu[l - 1] != mu[l]) {
      ExactPolynomial p = q_poly(mu[l - 1], mu[l], static_cast<std::size_t>(l - 1), static_cast<std::size_t>(l));
      res = left_poly(p, element(NormalMonomial{w2, zero, seq}));
    }
    std::vector<int> u{l};
    auto f = fixed_word(w2, n_);
    u.insert(u.end(), f.begin(), f.end());
    res -= left_tau(l, corr(u, seq));
  }
  return tau_cache_.emplace(key, std::move(res)).first->second;
}

const AlgElement& KlrAlgebra::corr(const std::vector<int>& u, std::uint16_t seq) const {
  auto key = std::make_pair(u, seq);
  auto it = corr_cache_.find(key);
  if (it != corr_cache_.end()) return it->second;
  AlgElement res(field_);
  const PermArray w = perm_of_word(u);
  const auto f = fixed_word(w, n_);
  if (u != f) {
    const int d = f.front();
    const int a = u.front();
    const std::vector<int> tail(u.begin() + 1, u.end());
    if (a == d) {
      res = left_tau(d, corr(tail, seq));
    } else if (std::abs(a - d) > 1) {
      const PermArray wa = left_swap(w, a);
      const auto r = fixed_word(left_swap(wa, d), n_);
      std::vector<int> v{d};
      v.insert(v.end(), r.begin(), r.end());
      std::vector<int> v3{d, a};
      v3.insert(v3.end(), r.begin(), r.end());
      AlgElement diff = corr(tail, seq) - corr(v, seq);
      res = corr(v3, seq) + left_tau(a, diff);
    } else {
      const PermArray w3 = left_swap(left_swap(left_swap(w, a), d), a);
      const auto r = fixed_word(w3, n_);
      std::vector<int> v{d, a};
      v.insert(v.end(), r.begin(), r.end());
      std::vector<int> v3{d, a, d};
      v3.insert(v3.end(), r.begin(), r.end());
      AlgElement diff = corr(tail, seq) - corr(v, seq);
      res = corr(v3, seq) + left_tau(a, diff);
      const int k = std::min(a, d);
      const Sequence& mu = seqs_[target(w3, seq)];
      if (mu[k - 1] == mu[k + 1]) {
        DotArray zero{};
        zero.fill(0);
        AlgElement b = left_poly(braid_correction(mu[k - 1], mu[k], k), element(NormalMonomial{w3, zero, seq}));
        // tau_{k+1} tau_k tau_{k+1} = tau_k tau_{k+1} tau_k + P
        if (a == k + 1)
          res += b;
        else
          res -= b;
      }
    }
  }
  return corr_cache_.emplace(key, std::move(res)).first->second;
}

AlgElement KlrAlgebra::left_x_mono(int j, const NormalMonomial& m) const {
  return shifted(left_x_base(j, m.w, m.seq), m.a);
}

AlgElement KlrAlgebra::left_tau_mono(int l, const NormalMonomial& m) const {
  return shifted(left_tau_base(l, m.w, m.seq), m.a);
}

AlgElement KlrAlgebra::left_x(int j, const AlgElement& e) const {
  if (j < 1 || j > n_) throw KlrError(KlrError::Kind::OutOfRange, "x index out of range");
  AlgElement r(field_);
  for (const auto& [m, c] : e.terms()) r.axpy(c, left_x_mono(j, m));
  return r;
}

AlgElement KlrAlgebra::left_tau(int l, const AlgElement& e) const {
  if (l < 1 || l >= n_) throw KlrError(KlrError::Kind::OutOfRange, "tau index out of range");
  AlgElement r(field_);
  for (const auto& [m, c] : e.terms()) r.axpy(c, left_tau_mono(l, m));
  return r;
}

AlgElement KlrAlgebra::left_idem(std::uint16_t seq, const AlgElement& e) const {
  AlgElement r(field_);
  for (const auto& [m, c] : e.terms())
    if (target(m) == seq) r.add(m, c);
  return r;
}

AlgElement KlrAlgebra::left_poly(const ExactPolynomial& p, const AlgElement& e) const {
  AlgElement r(field_);
  for (const auto& [ex, c] : p.terms()) {
    AlgElement t = e;
    for (int q = 0; q < n_ && !t.is_zero(); ++q)
      for (int k = 0; k < ex[q]; ++k) t = left_x(q + 1, t);
    r.axpy(c, t);
  }
  return r;
}

AlgElement KlrAlgebra::right_x(int k, const AlgElement& e) const {
  if (k < 1 || k > n_) throw KlrError(KlrError::Kind::OutOfRange, "x index out of range");
  DotArray a{};
  a.fill(0);
  a[k - 1] = 1;
  return shifted(e, a);
}

AlgElement KlrAlgebra::right_tau(int l, const AlgElement& e) const {
  if (l < 1 || l >= n_) throw KlrError(KlrError::Kind::OutOfRange, "tau index out of range");
  AlgElement r(field_);
  DotArray zero{};
  zero.fill(0);
  for (const auto& [m, c] : e.terms()) {
    std::uint16_t sigma = swap_target_[m.seq][l - 1];
    AlgElement t = element(NormalMonomial{left_swap(identity_perm(), l), zero, sigma});
    r.axpy(c, multiply_mono(m, t));
  }
  return r;
}

AlgElement KlrAlgebra::multiply_mono(const NormalMonomial& m, const AlgElement& b) const {
  AlgElement r = left_idem(m.seq, b);
  for (int p = 0; p < n_ && !r.is_zero(); ++p)
    for (int k = 0; k < m.a[p]; ++k) r = left_x(p + 1, r);
  auto word = fixed_word(m.w, n_);
  for (auto it = word.rbegin(); it != word.rend() && !r.is_zero(); ++it) r = left_tau(*it, r);
  return r;
}

AlgElement KlrAlgebra::multiply(const AlgElement& a, const AlgElement& b) const {
  AlgElement r(field_);
  for (const auto& [m, c] : a.terms()) r.axpy(c, multiply_mono(m, b));
  return r;
}

AlgElement KlrAlgebra::normal_form(const GenWord& g) const {
  if (g.source >= seqs_.size()) throw KlrError(KlrError::Kind::SequenceMismatch, "source sequence out of range");
  AlgElement r = idempotent(g.source);
  for (auto it = g.letters.rbegin(); it != g.letters.rend() && !r.is_zero(); ++it) {
    switch (it->kind) {
      case GenLetter::Kind::X: r = left_x(it->index, r); break;
      case GenLetter::Kind::Tau: r = left_tau(it->index, r); break;
      case GenLetter::Kind::Idem: r = left_idem(static_cast<std::uint16_t>(it->index), r); break;
    }
  }
  return r;
}

AlgElement KlrAlgebra::normal_form(const FreeCombination& c) const {
  AlgElement r(field_);
  for (const auto& [g, s] : c) r.axpy(s, normal_form(g));
  return r;
}

AlgElement KlrAlgebra::star(const AlgElement& e) const {
  AlgElement r(field_);
  for (const auto& [m, c] : e.terms()) {
    AlgElement t = idempotent(target(m));
    for (int l : fixed_word(m.w, n_)) t = left_tau(l, t);
    for (int p = 0; p < n_; ++p)
      for (int k = 0; k < m.a[p]; ++k) t = left_x(p + 1, t);
    r.axpy(c, t);
  }
  return r;
}

namespace {

void add_poly_words(FreeCombination& out, const ExactPolynomial& p, std::uint16_t seq, const Scalar& sign,
                    const std::vector<GenLetter>& suffix) {
  for (const auto& [ex, c] : p.terms()) {
    GenWord g{seq, {}};
    for (std::size_t q = 0; q < p.nvars(); ++q)
      for (int k = 0; k < ex[q]; ++k) g.letters.push_back({GenLetter::Kind::X, static_cast<int>(q + 1)});
    g.letters.insert(g.letters.end(), suffix.begin(), suffix.end());
    out.emplace_back(g, sign * c);
  }
}

}  // namespace

std::vector<RelationInstance> KlrAlgebra::relation_instances() const {
  using K = GenLetter::Kind;
  std::vector<RelationInstance> out;
  const Scalar one = Scalar::one(field_);
  const Scalar neg = -one;
  for (std::size_t si = 0; si < seqs_.size(); ++si) {
    const auto s = static_cast<std::uint16_t>(si);
    const Sequence& nu = seqs_[si];
    const std::string tag = " e" + sequence_to_string(nu);
    {
      RelationInstance unit{"sum of idempotents is the unit on" + tag, {}};
      for (std::size_t ti = 0; ti < seqs_.size(); ++ti)
        unit.combination.emplace_back(GenWord{s, {{K::Idem, static_cast<int>(ti)}}}, one);
      unit.combination.emplace_back(GenWord{s, {}}, neg);
      out.push_back(unit);
    }
    for (std::size_t ti = 0; ti < seqs_.size(); ++ti) {
      RelationInstance r{"e" + sequence_to_string(seqs_[ti]) + tag + " orthogonality", {}};
      r.combination.emplace_back(GenWord{s, {{K::Idem, static_cast<int>(ti)}}}, one);
      if (ti == si) r.combination.emplace_back(GenWord{s, {}}, neg);
      out.push_back(r);
    }
    for (int k = 1; k <= n_; ++k) {
      out.push_back({"x" + std::to_string(k) + " commutes with" + tag,
                     {{GenWord{s, {{K::Idem, static_cast<int>(si)}, {K::X, k}}}, one}, {GenWord{s, {{K::X, k}}}, neg}}});
      for (int l = k + 1; l <= n_; ++l)
        out.push_back({"x" + std::to_string(k) + " x" + std::to_string(l) + " commute on" + tag,
                       {{GenWord{s, {{K::X, k}, {K::X, l}}}, one}, {GenWord{s, {{K::X, l}, {K::X, k}}}, neg}}});
    }
    for (int l = 1; l < n_; ++l) {
      const int st = swap_target_[si][l - 1];
      out.push_back({"t" + std::to_string(l) + " transports" + tag,
                     {{GenWord{s, {{K::Tau, l}}}, one}, {GenWord{s, {{K::Idem, st}, {K::Tau, l}}}, neg}}});
      for (int k = l + 2; k < n_; ++k)
        out.push_back({"t" + std::to_string(l) + " t" + std::to_string(k) + " commute on" + tag,
                       {{GenWord{s, {{K::Tau, l}, {K::Tau, k}}}, one}, {GenWord{s, {{K::Tau, k}, {K::Tau, l}}}, neg}}});
      RelationInstance quad{"t" + std::to_string(l) + "^2" + tag, {{GenWord{s, {{K::Tau, l}, {K::Tau, l}}}, one}}};
      if (nu[l - 1] != nu[l])
        add_poly_words(quad.combination, q_poly(nu[l - 1], nu[l], static_cast<std::size_t>(l - 1), static_cast<std::size_t>(l)),
                       s, neg, {});
      out.push_back(quad);
      for (int j = 1; j <= n_; ++j) {
        const int sj = j == l ? l + 1 : (j == l + 1 ? l : j);
        RelationInstance dc{"t" + std::to_string(l) + " x" + std::to_string(j) + tag,
                            {{GenWord{s, {{K::Tau, l}, {K::X, j}}}, one}, {GenWord{s, {{K::X, sj}, {K::Tau, l}}}, neg}}};
        if (nu[l - 1] == nu[l]) {
          if (j == l) dc.combination.emplace_back(GenWord{s, {}}, one);
          if (j == l + 1) dc.combination.emplace_back(GenWord{s, {}}, neg);
        }
        out.push_back(dc);
      }
    }
    for (int k = 1; k + 2 <= n_; ++k) {
      RelationInstance br{"braid t" + std::to_string(k) + tag,
                          {{GenWord{s, {{K::Tau, k + 1}, {K::Tau, k}, {K::Tau, k + 1}}}, one},
                           {GenWord{s, {{K::Tau, k}, {K::Tau, k + 1}, {K::Tau, k}}}, neg}}};
      if (nu[k - 1] == nu[k + 1]) add_poly_words(br.combination, braid_correction(nu[k - 1], nu[k], k), s, neg, {});
      out.push_back(br);
    }
  }
  return out;
}

std::string KlrAlgebra::to_string(const NormalMonomial& m) const {
  std::ostringstream os;
  for (int l : fixed_word(m.w, n_)) os << 't' << l << ' ';
  for (int p = 0; p < n_; ++p) {
    if (!m.a[p]) continue;
    os << 'x' << (p + 1);
    if (m.a[p] > 1) os << '^' << int(m.a[p]);
    os << ' ';
  }
  os << 'e' << sequence_to_string(seqs_[m.seq]);
  return os.str();
}

std::string KlrAlgebra::to_string(const AlgElement& e) const {
  if (e.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : e.terms()) {
    if (!first) os << " + ";
    first = false;
    if (!c.is_one()) os << c.to_string() << '*';
    os << to_string(m);
  }
  return os.str();
}

std::string KlrAlgebra::to_string(const GenWord& g) const {
  std::ostringstream os;
  for (const auto& l : g.letters) {
    switch (l.kind) {
      case GenLetter::Kind::X: os << 'x' << l.index << ' '; break;
      case GenLetter::Kind::Tau: os << 't' << l.index << ' '; break;
      case GenLetter::Kind::Idem: os << 'e' << sequence_to_string(seqs_.at(static_cast<std::size_t>(l.index))) << ' '; break;
    }
  }
  os << 'e' << sequence_to_string(seqs_.at(g.source));
  return os.str();
}

}  // namespace klr
