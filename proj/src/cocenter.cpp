#include "klr/cocenter.hpp"

#include <algorithm>

#include "klr/highest_weight.hpp"

namespace klr {

CocenterSpace::CocenterSpace(const CyclotomicAlgebra& a) : a_(&a), comm_(a.field) {
  std::size_t d = a.dim();
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i + 1; j < d; ++j) {
      SparseVec c = a.product(i, j) - a.product(j, i);
      if (!c.empty()) comm_.insert(c);
    }
  for (std::size_t p = 0; p < d; ++p)
    if (!comm_.is_pivot(p)) tr_basis_[a.degrees[p]].push_back(p);
}

GradedDims CocenterSpace::commutator_dims() const {
  GradedDims g;
  for (std::size_t p : comm_.pivots()) g.add(a_->degrees[p], 1);
  return g;
}

GradedDims CocenterSpace::dims() const {
  GradedDims g;
  for (const auto& [d, b] : tr_basis_) g.set(d, b.size());
  return g;
}

const std::vector<std::size_t>& CocenterSpace::tr_basis(int d) const {
  static const std::vector<std::size_t> empty;
  auto it = tr_basis_.find(d);
  return it == tr_basis_.end() ? empty : it->second;
}

CocenterSpace::Projection CocenterSpace::project(const SparseVec& v) const {
  auto deg = a_->homogeneous_degree(v);
  if (!deg) throw CocenterError(CocenterError::Kind::NotHomogeneous, "cannot project an inhomogeneous element");
  Projection out;
  out.degree = *deg;
  SparseVec r = comm_.reduce(v);
  const auto& basis = tr_basis(*deg);
  for (const auto& [p, c] : r.entries) {
    auto it = std::lower_bound(basis.begin(), basis.end(), p);
    out.coords.entries.emplace_back(static_cast<std::size_t>(it - basis.begin()), c);
  }
  return out;
}

std::map<int, std::size_t> CocenterSpace::image_ranks(const std::vector<SparseVec>& elements) const {
  std::map<int, EchelonBasis> spans;
  for (const SparseVec& v : elements) {
    Projection p = project(v);
    if (p.coords.empty()) continue;
    auto it = spans.try_emplace(p.degree, a_->field).first;
    it->second.insert(p.coords);
  }
  std::map<int, std::size_t> ranks;
  for (const auto& [d, s] : spans) ranks[d] = s.rank();
  return ranks;
}

CenterSpace::CenterSpace(const CyclotomicAlgebra& a) : a_(&a) {
  std::vector<const SparseVec*> gens;
  for (const auto& v : a.idempotents) gens.push_back(&v);
  for (const auto& v : a.x_images) gens.push_back(&v);
  for (const auto& v : a.tau_images) gens.push_back(&v);
  std::size_t dim = a.dim();
  std::map<int, std::vector<std::size_t>> by_degree;
  for (std::size_t p = 0; p < dim; ++p) by_degree[a.degrees[p]].push_back(p);
  for (const auto& [d, positions] : by_degree) {
    std::vector<SparseVec> columns;
    for (std::size_t p : positions) {
      SparseVec b = a.basis_vector(p);
      SparseVec col;
      for (std::size_t g = 0; g < gens.size(); ++g) {
        SparseVec c = a.commutator(b, *gens[g]);
        for (const auto& [k, x] : c.entries) col.push_back(g * dim + k, x);
      }
      columns.push_back(std::move(col));
    }
    for (const SparseVec& kv : kernel(a.field, columns)) {
      SparseVec z;
      for (const auto& [t, x] : kv.entries) z.push_back(positions[t], x);
      basis_[d].push_back(std::move(z));
    }
  }
}

GradedDims CenterSpace::dims() const {
  GradedDims g;
  for (const auto& [d, b] : basis_)
    if (!b.empty()) g.set(d, b.size());
  return g;
}

bool CenterSpace::contains(const SparseVec& z) const {
  for (std::size_t p = 0; p < a_->dim(); ++p)
    if (!a_->commutator(z, a_->basis_vector(p)).empty()) return false;
  return true;
}

GradedDims cocenter_dims(const CyclotomicAlgebra& a) { return CocenterSpace(a).dims(); }

GradedDims center_dims(const CyclotomicAlgebra& a) { return CenterSpace(a).dims(); }

int algebra_d(const CyclotomicAlgebra& a) { return d_lambda_alpha(a.lambda, a.alpha, a.datum); }

CheckResult verify_degree_support(const CyclotomicAlgebra& a, const CocenterSpace& tr, const CenterSpace& z) {
  CheckResult r;
  r.id = "degree_support";
  int d = algebra_d(a);
  GradedDims trd = tr.dims();
  GradedDims zd = z.dims();
  r.witness("d_lambda_alpha", std::to_string(d));
  r.witness("tr_dims", trd.to_string());
  r.witness("center_dims", zd.to_string());
  r.witness("tr_top_dim", std::to_string(trd.get(d)));
  auto check = [&](const GradedDims& g, const std::string& what) {
    for (int deg : g.support()) {
      r.expect(deg >= 0 && deg <= d, what + " has degree " + std::to_string(deg) + " outside [0, " + std::to_string(d) + "]");
      r.expect(deg % 2 == 0, what + " has odd degree " + std::to_string(deg));
    }
  };
  check(trd, "cocenter");
  check(zd, "center");
  return r;
}

CheckResult verify_duality(const CyclotomicAlgebra& a, const CocenterSpace& tr, const CenterSpace& z) {
  CheckResult r;
  r.id = "duality";
  int d = algebra_d(a);
  GradedDims trd = tr.dims();
  GradedDims zd = z.dims();
  std::vector<int> degrees = trd.support();
  for (int deg : zd.support()) degrees.push_back(d - deg);
  std::sort(degrees.begin(), degrees.end());
  degrees.erase(std::unique(degrees.begin(), degrees.end()), degrees.end());
  GradedDims reflected;
  for (int deg : zd.support()) reflected.set(d - deg, zd.get(deg));
  r.witness("tr_dims", trd.to_string());
  r.witness("reflected_center_dims", reflected.to_string());
  for (int deg : degrees)
    r.expect(trd.get(deg) == zd.get(d - deg), "dim Tr_" + std::to_string(deg) + " = " + std::to_string(trd.get(deg)) +
                                                  " but dim Z_" + std::to_string(d - deg) + " = " + std::to_string(zd.get(d - deg)));
  return r;
}

CheckResult verify_tr0_dimension(const CyclotomicAlgebra& a, const CocenterSpace& tr) {
  CheckResult r;
  r.id = "tr0_dimension";
  std::size_t m = weight_multiplicity(a.lambda, a.alpha, a.datum);
  std::size_t t0 = tr.dims().get(0);
  r.witness("tr0_dim", std::to_string(t0));
  r.witness("weight_multiplicity", std::to_string(m));
  r.notes.push_back("dimension equality stands in for the primitive-idempotent basis statement");
  r.expect(t0 == m, "dim Tr_0 = " + std::to_string(t0) + " but weight multiplicity = " + std::to_string(m));
  return r;
}

}  // namespace klr
