#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "klr/check.hpp"
#include "klr/cyclotomic.hpp"
#include "klr/sparse.hpp"

namespace klr {

class CocenterError : public std::runtime_error {
 public:
  enum class Kind { NotHomogeneous };
  CocenterError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

/// [R, R] inside the algebra coordinates, with the induced basis of Tr.
class CocenterSpace {
 public:
  explicit CocenterSpace(const CyclotomicAlgebra& a);

  const CyclotomicAlgebra& algebra() const { return *a_; }
  const EchelonBasis& commutators() const { return comm_; }
  GradedDims commutator_dims() const;
  GradedDims dims() const;
  /// Basis positions of the algebra representing a basis of Tr_d.
  const std::vector<std::size_t>& tr_basis(int d) const;

  struct Projection {
    int degree = 0;
    SparseVec coords;  // indexed by position in tr_basis(degree)
  };
  /// Residue class of a homogeneous element; zero vectors project to degree 0.
  Projection project(const SparseVec& v) const;
  /// Per degree, rank of the span of the images.
  std::map<int, std::size_t> image_ranks(const std::vector<SparseVec>& elements) const;

 private:
  const CyclotomicAlgebra* a_;
  EchelonBasis comm_;
  std::map<int, std::vector<std::size_t>> tr_basis_;
};

class CenterSpace {
 public:
  explicit CenterSpace(const CyclotomicAlgebra& a);

  const std::map<int, std::vector<SparseVec>>& basis() const { return basis_; }
  GradedDims dims() const;
  bool contains(const SparseVec& z) const;

 private:
  const CyclotomicAlgebra* a_;
  std::map<int, std::vector<SparseVec>> basis_;
};

GradedDims cocenter_dims(const CyclotomicAlgebra& a);
GradedDims center_dims(const CyclotomicAlgebra& a);

int algebra_d(const CyclotomicAlgebra& a);

CheckResult verify_degree_support(const CyclotomicAlgebra& a, const CocenterSpace& tr, const CenterSpace& z);
CheckResult verify_duality(const CyclotomicAlgebra& a, const CocenterSpace& tr, const CenterSpace& z);
CheckResult verify_tr0_dimension(const CyclotomicAlgebra& a, const CocenterSpace& tr);

}  // namespace klr
