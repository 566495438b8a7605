#include "klr/sparse.hpp"

#include <algorithm>
#include <sstream>

namespace klr {

SparseVec SparseVec::unit(std::size_t i, const Field& f) {
  SparseVec v;
  v.entries.emplace_back(i, Scalar::one(f));
  return v;
}

Scalar SparseVec::at(std::size_t i, const Field& f) const {
  auto it = std::lower_bound(entries.begin(), entries.end(), i,
                             [](const auto& e, std::size_t k) { return e.first < k; });
  if (it != entries.end() && it->first == i) return it->second;
  return Scalar::zero(f);
}

void SparseVec::axpy(const Scalar& c, const SparseVec& x) {
  if (c.is_zero() || x.entries.empty()) return;
  std::vector<std::pair<std::size_t, Scalar>> out;
  out.reserve(entries.size() + x.entries.size());
  auto a = entries.begin();
  auto b = x.entries.begin();
  while (a != entries.end() || b != x.entries.end()) {
    if (b == x.entries.end() || (a != entries.end() && a->first < b->first)) {
      out.push_back(std::move(*a));
      ++a;
    } else if (a == entries.end() || b->first < a->first) {
      out.emplace_back(b->first, c * b->second);
      ++b;
    } else {
      Scalar s = a->second + c * b->second;
      if (!s.is_zero()) out.emplace_back(a->first, std::move(s));
      ++a;
      ++b;
    }
  }
  entries = std::move(out);
}

void SparseVec::scale(const Scalar& c) {
  if (c.is_zero()) {
    entries.clear();
    return;
  }
  for (auto& e : entries) e.second *= c;
}

void SparseVec::push_back(std::size_t i, const Scalar& c) {
  if (!entries.empty() && entries.back().first >= i)
    throw LinalgError(LinalgError::Kind::NotEchelon, "SparseVec::push_back out of order");
  if (!c.is_zero()) entries.emplace_back(i, c);
}

SparseVec operator+(const SparseVec& a, const SparseVec& b) {
  if (b.empty()) return a;
  SparseVec r = a;
  r.axpy(Scalar::one(b.entries.front().second.field()), b);
  return r;
}

SparseVec operator-(const SparseVec& a, const SparseVec& b) {
  if (b.empty()) return a;
  SparseVec r = a;
  r.axpy(-Scalar::one(b.entries.front().second.field()), b);
  return r;
}

SparseVec operator*(const Scalar& c, const SparseVec& a) {
  SparseVec r = a;
  r.scale(c);
  return r;
}

SparseMatrix SparseMatrix::from_dense(const Field& f, const std::vector<std::vector<long>>& m) {
  SparseMatrix out(f, m.size(), m.empty() ? 0 : m.front().size());
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (m[i].size() != out.cols) throw LinalgError(LinalgError::Kind::DimensionMismatch, "ragged dense matrix");
    for (std::size_t j = 0; j < m[i].size(); ++j) out.data[i].push_back(j, Scalar::from_int(f, m[i][j]));
  }
  return out;
}

SparseMatrix SparseMatrix::transpose() const {
  SparseMatrix t(field, cols, rows);
  for (std::size_t i = 0; i < rows; ++i)
    for (const auto& [j, c] : data[i].entries) t.data[j].entries.emplace_back(i, c);
  return t;
}

EchelonBasis EchelonBasis::from_echelon_rows(const Field& f, const std::vector<SparseVec>& rows) {
  EchelonBasis b(f);
  for (const auto& r : rows) {
    if (r.empty()) throw LinalgError(LinalgError::Kind::NotEchelon, "zero row in echelon basis");
    if (!b.pivot_row_.emplace(r.leading(), b.rows_.size()).second)
      throw LinalgError(LinalgError::Kind::NotEchelon, "repeated leading index in echelon basis");
    b.rows_.push_back(r);
  }
  return b;
}

std::vector<std::size_t> EchelonBasis::pivots() const {
  std::vector<std::size_t> p;
  p.reserve(rows_.size());
  for (const auto& r : rows_) p.push_back(r.leading());
  return p;
}

SparseVec EchelonBasis::reduce(SparseVec v, std::vector<Scalar>* coords) const {
  if (coords) coords->assign(rows_.size(), Scalar::zero(field_));
  std::size_t pos = 0;
  while (pos < v.entries.size()) {
    auto it = pivot_row_.find(v.entries[pos].first);
    if (it == pivot_row_.end()) {
      ++pos;
      continue;
    }
    const SparseVec& row = rows_[it->second];
    Scalar c = v.entries[pos].second;
    const Scalar& lead = row.entries.front().second;
    if (!lead.is_one()) c = c / lead;
    v.axpy(-c, row);
    if (coords) (*coords)[it->second] += c;
  }
  return v;
}

std::optional<std::vector<Scalar>> EchelonBasis::coordinates(const SparseVec& v) const {
  std::vector<Scalar> c;
  if (!reduce(v, &c).empty()) return std::nullopt;
  return c;
}

bool EchelonBasis::insert(const SparseVec& v) {
  SparseVec r = reduce(v);
  if (r.empty()) return false;
  Scalar lead = r.entries.front().second;
  if (!lead.is_one()) r.scale(lead.inverse());
  pivot_row_.emplace(r.leading(), rows_.size());
  rows_.push_back(std::move(r));
  return true;
}

RowReduction row_reduce(const SparseMatrix& m) {
  EchelonBasis eb(m.field);
  for (const auto& row : m.data) {
    for (const auto& e : row.entries)
      if (e.first >= m.cols) throw LinalgError(LinalgError::Kind::DimensionMismatch, "entry outside matrix");
    eb.insert(row);
  }
  std::vector<SparseVec> rows = eb.rows();
  std::sort(rows.begin(), rows.end(), [](const SparseVec& a, const SparseVec& b) { return a.leading() < b.leading(); });
  RowReduction out;
  out.rank = rows.size();
  out.rref = SparseMatrix(m.field, rows.size(), m.cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    SparseVec tail = rows[i];
    auto lead = tail.entries.front();
    tail.entries.erase(tail.entries.begin());
    SparseVec full = eb.reduce(tail);
    full.entries.insert(full.entries.begin(), lead);
    out.rref.data[i] = std::move(full);
    out.pivots.push_back(lead.first);
  }
  return out;
}

Membership subspace_membership(const SparseMatrix& basis_rows, const SparseVec& v) {
  for (const auto& e : v.entries)
    if (e.first >= basis_rows.cols)
      throw LinalgError(LinalgError::Kind::DimensionMismatch, "vector longer than basis rows");
  EchelonBasis eb = EchelonBasis::from_echelon_rows(basis_rows.field, basis_rows.data);
  Membership m;
  std::vector<Scalar> c;
  m.member = eb.reduce(v, &c).empty();
  if (m.member) m.coordinates = std::move(c);
  return m;
}

std::vector<SparseVec> kernel(const Field& f, const std::vector<SparseVec>& vectors) {
  std::size_t offset = 0;
  for (const auto& v : vectors)
    if (!v.empty()) offset = std::max(offset, v.entries.back().first + 1);
  EchelonBasis eb(f);
  std::vector<SparseVec> out;
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    SparseVec aug = vectors[i];
    aug.push_back(offset + i, Scalar::one(f));
    SparseVec r = eb.reduce(aug);
    if (r.leading() >= offset) {
      SparseVec k;
      for (const auto& [j, c] : r.entries) k.entries.emplace_back(j - offset, c);
      out.push_back(std::move(k));
    } else {
      eb.insert(r);
    }
  }
  return out;
}

GradedDims::GradedDims(std::initializer_list<std::pair<const int, std::size_t>> init) {
  for (const auto& [d, n] : init) set(d, n);
}

void GradedDims::set(int degree, std::size_t dim) {
  if (dim == 0)
    dims_.erase(degree);
  else
    dims_[degree] = dim;
}

void GradedDims::add(int degree, std::size_t dim) { set(degree, get(degree) + dim); }

std::size_t GradedDims::get(int degree) const {
  auto it = dims_.find(degree);
  return it == dims_.end() ? 0 : it->second;
}

std::size_t GradedDims::total() const {
  std::size_t t = 0;
  for (const auto& [d, n] : dims_) t += n;
  return t;
}

std::vector<int> GradedDims::support() const {
  std::vector<int> s;
  for (const auto& [d, n] : dims_) s.push_back(d);
  return s;
}

std::string GradedDims::to_string() const {
  std::ostringstream os;
  os << '{';
  bool first = true;
  for (const auto& [d, n] : dims_) {
    if (!first) os << ", ";
    os << d << ':' << n;
    first = false;
  }
  os << '}';
  return os.str();
}

GradedDims graded_quotient_dims(const Field& f, const GradedVectors& ambient, const GradedVectors& sub) {
  GradedDims out;
  for (const auto& [d, vecs] : sub) {
    if (vecs.empty()) continue;
    auto it = ambient.find(d);
    EchelonBasis amb(f);
    if (it != ambient.end())
      for (const auto& v : it->second) amb.insert(v);
    for (const auto& v : vecs)
      if (!amb.contains(v))
        throw LinalgError(LinalgError::Kind::SubspaceNotContained,
                          "subspace vector in degree " + std::to_string(d) + " not in ambient span");
  }
  for (const auto& [d, vecs] : ambient) {
    EchelonBasis amb(f), s(f);
    for (const auto& v : vecs) amb.insert(v);
    auto it = sub.find(d);
    if (it != sub.end())
      for (const auto& v : it->second) s.insert(v);
    out.set(d, amb.rank() - s.rank());
  }
  return out;
}

}  // namespace klr
