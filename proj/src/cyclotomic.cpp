#include "klr/cyclotomic.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <sstream>
#include <tuple>

namespace klr {

namespace {

using Acc = std::map<std::size_t, Scalar>;

void accumulate(Acc& acc, const Scalar& c, const SparseVec& v) {
  for (const auto& [i, x] : v.entries) {
    auto it = acc.find(i);
    if (it == acc.end()) {
      acc.emplace(i, c * x);
    } else {
      it->second += c * x;
      if (it->second.is_zero()) acc.erase(it);
    }
  }
}

SparseVec from_acc(const Acc& acc) {
  SparseVec v;
  v.entries.reserve(acc.size());
  for (const auto& [i, c] : acc)
    if (!c.is_zero()) v.entries.emplace_back(i, c);
  return v;
}

bool fits(const NormalMonomial& m, int n, int bound) {
  for (int p = 0; p < n; ++p)
    if (m.a[p] >= bound) return false;
  return true;
}

struct Column {
  SparseVec proj;
  AlgElement overflow;
};

/// Generator actions on the ambient space V_B, cached column by column.
class Closure {
 public:
  Closure(std::shared_ptr<const KlrAlgebra> r, int bound) : pres_(std::make_shared<CyclotomicPresentation>()) {
    pres_->klr = std::move(r);
    pres_->bound = bound;
    const KlrAlgebra& R = *pres_->klr;
    n_ = R.n();
    pres_->ideal = EchelonBasis(R.field());
    enumerate();
    int per_side = n_ + std::max(n_ - 1, 0);
    ops_ = 2 * per_side;
    cache_.assign(ops_, std::vector<std::optional<Column>>(pres_->monomials.size()));
  }

  CyclotomicPresentation& pres() { return *pres_; }
  std::shared_ptr<CyclotomicPresentation> shared() { return pres_; }
  int ops() const { return ops_; }
  int n() const { return n_; }

  /// Ambient vector plus the part that fell outside V_B.
  std::pair<SparseVec, AlgElement> split(const AlgElement& e) const {
    Acc acc;
    AlgElement over(e.field());
    for (const auto& [m, c] : e.terms()) {
      if (fits(m, n_, pres_->bound)) {
        acc.emplace(pres_->index.at(m), c);
      } else {
        over.add(m, c);
      }
    }
    return {from_acc(acc), over};
  }

  AlgElement element(std::size_t i) const { return pres_->klr->element(pres_->monomials[i]); }

  /// op in [0, ops): left x_1..x_n, left tau_1..tau_{n-1}, then the same on the right.
  AlgElement raw(int op, const AlgElement& e) const {
    const KlrAlgebra& R = *pres_->klr;
    int per_side = ops_ / 2;
    bool left = op < per_side;
    int k = op % per_side;
    if (k < n_) return left ? R.left_x(k + 1, e) : R.right_x(k + 1, e);
    int l = k - n_ + 1;
    return left ? R.left_tau(l, e) : R.right_tau(l, e);
  }

  const Column& column(int op, std::size_t i) {
    auto& slot = cache_[op][i];
    if (!slot) {
      auto [proj, over] = split(raw(op, element(i)));
      slot = Column{std::move(proj), std::move(over)};
    }
    return *slot;
  }

  std::pair<SparseVec, AlgElement> apply(int op, const SparseVec& v, bool want_overflow) {
    Acc acc;
    AlgElement over(pres_->klr->field());
    for (const auto& [i, c] : v.entries) {
      const Column& col = column(op, i);
      accumulate(acc, c, col.proj);
      if (want_overflow && !col.overflow.is_zero()) over.axpy(c, col.overflow);
    }
    return {from_acc(acc), over};
  }

  std::size_t index_of(const NormalMonomial& m) const { return pres_->index.at(m); }

 private:
  void enumerate() {
    const KlrAlgebra& R = *pres_->klr;
    int B = pres_->bound;
    std::vector<std::uint8_t> perm(n_);
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<PermArray> perms;
    do {
      PermArray w = identity_perm();
      for (int p = 0; p < n_; ++p) w[p] = perm[p];
      perms.push_back(w);
    } while (std::next_permutation(perm.begin(), perm.end()));
    std::size_t dots = 1;
    for (int p = 0; p < n_; ++p) dots *= static_cast<std::size_t>(B);
    auto& mons = pres_->monomials;
    for (std::size_t s = 0; s < R.sequences().size(); ++s) {
      for (const auto& w : perms) {
        for (std::size_t code = 0; code < dots; ++code) {
          DotArray a{};
          a.fill(0);
          std::size_t c = code;
          for (int p = 0; p < n_; ++p) {
            a[p] = static_cast<std::uint8_t>(c % B);
            c /= B;
          }
          mons.push_back(NormalMonomial{w, a, static_cast<std::uint16_t>(s)});
        }
      }
    }
    // Pivots land on the smallest indices, so high-dot, long monomials go
    // first and the quotient basis is drawn from the low ones.
    auto key = [&](const NormalMonomial& m) {
      int dsum = 0;
      for (int p = 0; p < n_; ++p) dsum += m.a[p];
      return std::make_tuple(-dsum, -perm_length(m.w, n_), m.seq, m.w, m.a);
    };
    std::sort(mons.begin(), mons.end(), [&](const NormalMonomial& x, const NormalMonomial& y) { return key(x) < key(y); });
    for (std::size_t i = 0; i < mons.size(); ++i) pres_->index.emplace(mons[i], i);
  }

  std::shared_ptr<CyclotomicPresentation> pres_;
  int n_ = 0;
  int ops_ = 0;
  std::vector<std::vector<std::optional<Column>>> cache_;
};

NormalMonomial dot_monomial(int n, std::uint16_t seq, int k, int power) {
  DotArray a{};
  a.fill(0);
  if (n > 0) a[k] = static_cast<std::uint8_t>(power);
  return NormalMonomial{identity_perm(), a, seq};
}

std::string vec_to_text(const SparseVec& v) {
  std::ostringstream os;
  os << v.entries.size();
  for (const auto& [i, c] : v.entries) os << ' ' << i << ' ' << c.to_string();
  return os.str();
}

Scalar parse_scalar(const Field& f, const std::string& s) {
  mpq_class q(s);
  q.canonicalize();
  return Scalar::from_rational(f, q);
}

SparseVec vec_from_stream(std::istream& is, const Field& f) {
  std::size_t count = 0;
  if (!(is >> count)) throw CyclotomicError(CyclotomicError::Kind::ParseError, "bad vector length");
  SparseVec v;
  for (std::size_t t = 0; t < count; ++t) {
    std::size_t i;
    std::string c;
    if (!(is >> i >> c)) throw CyclotomicError(CyclotomicError::Kind::ParseError, "bad vector entry");
    v.entries.emplace_back(i, parse_scalar(f, c));
  }
  return v;
}

}  // namespace

SparseVec CyclotomicPresentation::project(const AlgElement& e) const {
  Acc acc;
  int n = klr->n();
  for (const auto& [m, c] : e.terms())
    if (fits(m, n, bound)) acc.emplace(index.at(m), c);
  return from_acc(acc);
}

SparseVec CyclotomicPresentation::residue(const SparseVec& ambient) const {
  SparseVec r = ideal.reduce(ambient);
  SparseVec out;
  for (const auto& [i, c] : r.entries) {
    long pos = basis_position[i];
    if (pos < 0) throw CyclotomicError(CyclotomicError::Kind::InconsistentClosure, "residue hit a pivot column");
    out.entries.emplace_back(static_cast<std::size_t>(pos), c);
  }
  return out;
}

std::vector<AlgElement> cyclotomic_generators(const KlrAlgebra& r, const DominantWeight& lambda) {
  std::vector<AlgElement> out;
  if (r.n() == 0) return out;
  for (std::size_t s = 0; s < r.sequences().size(); ++s) {
    int node = r.sequences()[s][0];
    int power = lambda.coeffs[node];
    DotArray a{};
    a.fill(0);
    a[0] = static_cast<std::uint8_t>(power);
    out.push_back(r.element(NormalMonomial{identity_perm(), a, static_cast<std::uint16_t>(s)}));
  }
  return out;
}

int default_initial_bound(const CartanDatum& c, const DominantWeight& lambda, const RootVector& alpha) {
  int best = 0;
  for (std::size_t i = 0; i < c.rank(); ++i)
    if (alpha.coeffs[i] > 0) best = std::max(best, lambda.coeffs[i]);
  return std::max(1, best + alpha.height());
}

std::optional<std::size_t> rank_one_dimension(const CartanDatum& c, const DominantWeight& lambda, const RootVector& alpha) {
  if (c.rank() != 1) return std::nullopt;
  long l = lambda.coeffs[0];
  long n = alpha.coeffs[0];
  if (n > l) return 0;
  std::size_t fact = 1;
  for (long k = 2; k <= n; ++k) fact *= static_cast<std::size_t>(k);
  std::size_t binom = 1;
  for (long k = 1; k <= n; ++k) binom = binom * static_cast<std::size_t>(l - n + k) / static_cast<std::size_t>(k);
  return fact * fact * binom;
}

std::optional<CyclotomicAlgebra> build_with_bound(std::shared_ptr<const KlrAlgebra> r, const DominantWeight& lambda, int bound) {
  if (bound < 1) throw CyclotomicError(CyclotomicError::Kind::NeedLargerB, "bound must be at least 1");
  const KlrAlgebra& R = *r;
  const Field& f = R.field();
  Closure cl(r, bound);
  EchelonBasis& S = cl.pres().ideal;
  int n = cl.n();

  std::deque<SparseVec> queue;
  for (const AlgElement& g : cyclotomic_generators(R, lambda)) {
    auto [v, over] = cl.split(g);
    if (!over.is_zero() || v.empty()) continue;
    if (S.insert(v)) queue.push_back(v);
  }

  // Exact phase: only products that stay inside V_B.
  while (!queue.empty()) {
    SparseVec v = std::move(queue.front());
    queue.pop_front();
    for (int op = 0; op < cl.ops(); ++op) {
      auto [p, over] = cl.apply(op, v, true);
      if (!over.is_zero() || p.empty()) continue;
      if (S.insert(p)) queue.push_back(std::move(p));
    }
  }

  TruncationCertificate cert;
  cert.bound = bound;
  cert.exact_rank = S.rank();
  for (std::size_t s = 0; s < R.sequences().size(); ++s) {
    for (int k = 0; k < n; ++k) {
      int witness = -1;
      for (int N = 0; N < bound; ++N) {
        SparseVec u = SparseVec::unit(cl.index_of(dot_monomial(n, static_cast<std::uint16_t>(s), k, N)), f);
        if (S.contains(u)) {
          witness = N;
          break;
        }
      }
      if (witness < 0) return std::nullopt;
      cert.nilpotency_witness = std::max(cert.nilpotency_witness, witness);
    }
  }

  // Truncated phase: exponents >= B are absorbed into the ideal.
  for (const SparseVec& row : S.rows()) queue.push_back(row);
  while (!queue.empty()) {
    SparseVec v = std::move(queue.front());
    queue.pop_front();
    for (int op = 0; op < cl.ops(); ++op) {
      SparseVec p = cl.apply(op, v, false).first;
      if (p.empty()) continue;
      if (S.insert(p)) queue.push_back(std::move(p));
    }
  }

  CyclotomicPresentation& pres = cl.pres();
  cert.ambient_dim = pres.monomials.size();
  cert.ideal_rank = S.rank();

  CyclotomicAlgebra A;
  A.field = f;
  A.datum = R.datum();
  A.q = R.q();
  A.lambda = lambda;
  A.alpha = R.alpha();
  A.sequences = R.sequences();
  pres.basis_position.assign(pres.monomials.size(), -1);
  std::vector<std::size_t> basis_ambient;
  for (std::size_t i = 0; i < pres.monomials.size(); ++i) {
    if (S.is_pivot(i)) continue;
    pres.basis_position[i] = static_cast<long>(basis_ambient.size());
    basis_ambient.push_back(i);
    A.labels.push_back(R.to_string(pres.monomials[i]));
    A.degrees.push_back(R.degree(pres.monomials[i]));
  }
  std::size_t dim = basis_ambient.size();

  auto residue_of = [&](const AlgElement& e) { return pres.residue(pres.project(e)); };
  for (std::size_t s = 0; s < R.sequences().size(); ++s) A.idempotents.push_back(residue_of(R.idempotent(static_cast<std::uint16_t>(s))));
  A.identity = residue_of(R.one());
  for (int k = 1; k <= n; ++k) A.x_images.push_back(residue_of(R.left_x(k, R.one())));
  for (int l = 1; l < n; ++l) A.tau_images.push_back(residue_of(R.left_tau(l, R.one())));

  // b_i b_j by applying the letters of b_i to b_j from the left; T is a
  // left ideal, so projecting after each letter is harmless.
  A.products.assign(dim * dim, SparseVec{});
  for (std::size_t i = 0; i < dim; ++i) {
    const NormalMonomial& mi = pres.monomials[basis_ambient[i]];
    std::vector<int> ops;
    for (int p = 0; p < n; ++p)
      for (int t = 0; t < mi.a[p]; ++t) ops.push_back(p);
    std::vector<int> word = fixed_word(mi.w, n);
    for (auto it = word.rbegin(); it != word.rend(); ++it) ops.push_back(n + *it - 1);
    for (std::size_t j = 0; j < dim; ++j) {
      const NormalMonomial& mj = pres.monomials[basis_ambient[j]];
      if (R.target(mj) != mi.seq) continue;
      SparseVec v = SparseVec::unit(basis_ambient[j], f);
      for (int op : ops) {
        if (v.empty()) break;
        v = cl.apply(op, v, false).first;
      }
      A.products[i * dim + j] = pres.residue(v);
    }
  }

  A.certificate = cert;
  A.presentation = cl.shared();

  for (std::size_t i = 0; i < dim; ++i) {
    SparseVec b = A.basis_vector(i);
    if (!(A.multiply(A.identity, b) == b) || !(A.multiply(b, A.identity) == b))
      throw CyclotomicError(CyclotomicError::Kind::InconsistentClosure, "identity fails on basis element " + A.labels[i]);
  }
  return A;
}

CyclotomicAlgebra build_cyclotomic(const CartanDatum& c, const QMatrix& q, const DominantWeight& lambda,
                                   const RootVector& alpha, const Field& f, const BuildOptions& opts) {
  auto r = std::make_shared<const KlrAlgebra>(c, q, alpha, f);
  int bound = opts.initial_bound.value_or(default_initial_bound(c, lambda, alpha));
  std::vector<int> attempted;
  for (int attempt = 0; attempt <= opts.max_escalations; ++attempt, bound *= 2) {
    attempted.push_back(bound);
    auto A = build_with_bound(r, lambda, bound);
    if (!A) continue;
    A->certificate.attempted_bounds = attempted;
    A->certificate.oracle_dimension = rank_one_dimension(c, lambda, alpha);
    if (f.is_rational() && A->certificate.oracle_dimension && *A->certificate.oracle_dimension != A->dim())
      throw CyclotomicError(CyclotomicError::Kind::InconsistentClosure,
                            "dimension " + std::to_string(A->dim()) + " disagrees with closed form " +
                                std::to_string(*A->certificate.oracle_dimension));
    return std::move(*A);
  }
  std::ostringstream os;
  os << "truncation certificate failed for bounds";
  for (int b : attempted) os << ' ' << b;
  throw CyclotomicError(CyclotomicError::Kind::NeedLargerB, os.str());
}

SparseVec CyclotomicAlgebra::multiply(const SparseVec& a, const SparseVec& b) const {
  std::size_t d = dim();
  Acc acc;
  for (const auto& [i, ca] : a.entries) {
    if (i >= d) throw CyclotomicError(CyclotomicError::Kind::DimensionMismatch, "coordinate out of range");
    for (const auto& [j, cb] : b.entries) {
      if (j >= d) throw CyclotomicError(CyclotomicError::Kind::DimensionMismatch, "coordinate out of range");
      const SparseVec& p = products[i * d + j];
      if (!p.empty()) accumulate(acc, ca * cb, p);
    }
  }
  return from_acc(acc);
}

SparseVec CyclotomicAlgebra::commutator(const SparseVec& a, const SparseVec& b) const {
  return multiply(a, b) - multiply(b, a);
}

GradedDims CyclotomicAlgebra::graded_dims() const {
  GradedDims g;
  for (int d : degrees) g.add(d, 1);
  return g;
}

std::optional<int> CyclotomicAlgebra::homogeneous_degree(const SparseVec& v) const {
  if (v.empty()) return 0;
  int d = degrees[v.entries.front().first];
  for (const auto& [i, c] : v.entries)
    if (degrees[i] != d) return std::nullopt;
  return d;
}

std::uint16_t CyclotomicAlgebra::seq_index(const Sequence& nu) const {
  auto it = std::find(sequences.begin(), sequences.end(), nu);
  if (it == sequences.end()) throw CyclotomicError(CyclotomicError::Kind::DimensionMismatch, "sequence not in I^alpha");
  return static_cast<std::uint16_t>(it - sequences.begin());
}

SparseVec CyclotomicAlgebra::word_image(const GenWord& g) const {
  SparseVec v = idempotents.at(g.source);
  for (auto it = g.letters.rbegin(); it != g.letters.rend(); ++it) {
    if (v.empty()) break;
    switch (it->kind) {
      case GenLetter::Kind::X:
        v = multiply(x_images.at(it->index - 1), v);
        break;
      case GenLetter::Kind::Tau:
        v = multiply(tau_images.at(it->index - 1), v);
        break;
      case GenLetter::Kind::Idem:
        v = multiply(idempotents.at(it->index), v);
        break;
    }
  }
  return v;
}

SparseVec CyclotomicAlgebra::image(const AlgElement& e) const {
  if (!presentation) throw CyclotomicError(CyclotomicError::Kind::NoPresentation, "algebra was loaded without its presentation");
  return presentation->residue(presentation->project(e));
}

std::string CyclotomicAlgebra::serialize() const {
  std::ostringstream os;
  std::size_t rank = datum.rank();
  os << "klr-cyclotomic 1\n";
  os << "field " << field.name() << '\n';
  os << "cartan " << rank;
  for (const auto& row : datum.matrix())
    for (int v : row) os << ' ' << v;
  os << "\nsymmetrizers";
  for (int d : datum.symmetrizers()) os << ' ' << d;
  os << '\n';
  for (const auto& [key, c] : q.coefficients()) {
    auto [i, j, k, p] = key;
    os << "qterm " << i + 1 << ' ' << j + 1 << ' ' << k << ' ' << p << ' ' << c.get_str() << '\n';
  }
  os << "lambda";
  for (int v : lambda.coeffs) os << ' ' << v;
  os << "\nalpha";
  for (int v : alpha.coeffs) os << ' ' << v;
  os << "\nbound " << certificate.bound << '\n';
  os << "certificate " << certificate.nilpotency_witness << ' ' << certificate.ambient_dim << ' ' << certificate.exact_rank
     << ' ' << certificate.ideal_rank << ' '
     << (certificate.oracle_dimension ? std::to_string(*certificate.oracle_dimension) : std::string("-")) << ' '
     << certificate.attempted_bounds.size();
  for (int b : certificate.attempted_bounds) os << ' ' << b;
  os << "\nsequences " << sequences.size() << '\n';
  for (const auto& nu : sequences) {
    os << "s " << nu.size();
    for (int v : nu) os << ' ' << v;
    os << '\n';
  }
  os << "basis " << dim() << '\n';
  for (std::size_t i = 0; i < dim(); ++i) os << "b " << degrees[i] << ' ' << labels[i] << '\n';
  os << "identity " << vec_to_text(identity) << '\n';
  for (const auto& v : idempotents) os << "idem " << vec_to_text(v) << '\n';
  for (const auto& v : x_images) os << "x " << vec_to_text(v) << '\n';
  for (const auto& v : tau_images) os << "tau " << vec_to_text(v) << '\n';
  std::size_t count = 0;
  for (const auto& p : products) count += p.entries.size();
  os << "products " << count << '\n';
  for (std::size_t i = 0; i < dim(); ++i)
    for (std::size_t j = 0; j < dim(); ++j)
      for (const auto& [k, c] : product(i, j).entries) os << i << ' ' << j << ' ' << k << ' ' << c.to_string() << '\n';
  os << "end\n";
  return os.str();
}

CyclotomicAlgebra CyclotomicAlgebra::deserialize(const std::string& text) {
  using K = CyclotomicError::Kind;
  std::istringstream is(text);
  auto expect = [&](const std::string& word) {
    std::string w;
    if (!(is >> w) || w != word) throw CyclotomicError(K::ParseError, "expected '" + word + "', found '" + w + "'");
  };
  CyclotomicAlgebra A;
  expect("klr-cyclotomic");
  int version = 0;
  is >> version;
  if (version != 1) throw CyclotomicError(K::ParseError, "unsupported version");
  expect("field");
  std::string fname;
  is >> fname;
  A.field = Field::parse(fname);
  expect("cartan");
  std::size_t rank = 0;
  is >> rank;
  IntMatrix m(rank, std::vector<int>(rank));
  for (auto& row : m)
    for (int& v : row) is >> v;
  expect("symmetrizers");
  std::vector<int> d(rank);
  for (int& v : d) is >> v;
  A.datum = CartanDatum::validate(m, d);
  A.q = QMatrix(rank);
  std::string word;
  is >> word;
  while (word == "qterm") {
    int i, j, k, p;
    std::string c;
    is >> i >> j >> k >> p >> c;
    A.q.set(i - 1, j - 1, k, p, mpq_class(c));
    is >> word;
  }
  if (word != "lambda") throw CyclotomicError(K::ParseError, "expected 'lambda'");
  A.lambda.coeffs.resize(rank);
  for (int& v : A.lambda.coeffs) is >> v;
  expect("alpha");
  A.alpha.coeffs.resize(rank);
  for (int& v : A.alpha.coeffs) is >> v;
  expect("bound");
  is >> A.certificate.bound;
  expect("certificate");
  std::string oracle;
  std::size_t nb = 0;
  is >> A.certificate.nilpotency_witness >> A.certificate.ambient_dim >> A.certificate.exact_rank >> A.certificate.ideal_rank >>
      oracle >> nb;
  if (oracle != "-") A.certificate.oracle_dimension = std::stoull(oracle);
  A.certificate.attempted_bounds.resize(nb);
  for (int& b : A.certificate.attempted_bounds) is >> b;
  expect("sequences");
  std::size_t ns = 0;
  is >> ns;
  for (std::size_t s = 0; s < ns; ++s) {
    expect("s");
    std::size_t len = 0;
    is >> len;
    Sequence nu(len);
    for (int& v : nu) is >> v;
    A.sequences.push_back(nu);
  }
  expect("basis");
  std::size_t dim = 0;
  is >> dim;
  for (std::size_t i = 0; i < dim; ++i) {
    expect("b");
    int deg = 0;
    is >> deg;
    std::string label;
    std::getline(is, label);
    if (!label.empty() && label.front() == ' ') label.erase(0, 1);
    A.degrees.push_back(deg);
    A.labels.push_back(label);
  }
  expect("identity");
  A.identity = vec_from_stream(is, A.field);
  int n = A.alpha.height();
  for (std::size_t s = 0; s < ns; ++s) {
    expect("idem");
    A.idempotents.push_back(vec_from_stream(is, A.field));
  }
  for (int k = 0; k < n; ++k) {
    expect("x");
    A.x_images.push_back(vec_from_stream(is, A.field));
  }
  for (int l = 0; l + 1 < n; ++l) {
    expect("tau");
    A.tau_images.push_back(vec_from_stream(is, A.field));
  }
  expect("products");
  std::size_t count = 0;
  is >> count;
  std::vector<Acc> table(dim * dim);
  for (std::size_t t = 0; t < count; ++t) {
    std::size_t i, j, k;
    std::string c;
    if (!(is >> i >> j >> k >> c) || i >= dim || j >= dim || k >= dim) throw CyclotomicError(K::ParseError, "bad product line");
    table[i * dim + j].emplace(k, parse_scalar(A.field, c));
  }
  expect("end");
  A.products.reserve(dim * dim);
  for (const auto& acc : table) A.products.push_back(from_acc(acc));
  return A;
}

}  // namespace klr
