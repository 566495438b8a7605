#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "klr/scalar.hpp"

namespace klr {

class LinalgError : public std::runtime_error {
 public:
  enum class Kind { DimensionMismatch, SubspaceNotContained, NotEchelon };
  LinalgError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

/// Sparse vector: entries sorted by index, no stored zeros.
struct SparseVec {
  std::vector<std::pair<std::size_t, Scalar>> entries;

  static SparseVec unit(std::size_t i, const Field& f);

  bool empty() const { return entries.empty(); }
  std::size_t size() const { return entries.size(); }
  std::size_t leading() const { return entries.front().first; }
  Scalar at(std::size_t i, const Field& f) const;

  /// this += c * x
  void axpy(const Scalar& c, const SparseVec& x);
  void scale(const Scalar& c);
  /// Appends an entry with index larger than every stored one.
  void push_back(std::size_t i, const Scalar& c);

  bool operator==(const SparseVec& o) const { return entries == o.entries; }
};

SparseVec operator+(const SparseVec& a, const SparseVec& b);
SparseVec operator-(const SparseVec& a, const SparseVec& b);
SparseVec operator*(const Scalar& c, const SparseVec& a);

struct SparseMatrix {
  Field field;
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<SparseVec> data;

  SparseMatrix() = default;
  SparseMatrix(const Field& f, std::size_t r, std::size_t c) : field(f), rows(r), cols(c), data(r) {}
  static SparseMatrix from_dense(const Field& f, const std::vector<std::vector<long>>& m);

  SparseMatrix transpose() const;
};

/// Row space in echelon form: each row has a distinct leading index and
/// no entry before it. Rows built by insert() are normalized and fully
/// reduced against the rows present at insertion time.
class EchelonBasis {
 public:
  EchelonBasis() = default;
  explicit EchelonBasis(const Field& f) : field_(f) {}

  /// Wraps rows that are already in echelon form, keeping them verbatim.
  static EchelonBasis from_echelon_rows(const Field& f, const std::vector<SparseVec>& rows);

  const Field& field() const { return field_; }
  std::size_t rank() const { return rows_.size(); }
  const std::vector<SparseVec>& rows() const { return rows_; }
  bool is_pivot(std::size_t col) const { return pivot_row_.count(col) != 0; }
  std::vector<std::size_t> pivots() const;

  /// Eliminates every pivot column from v. When coords is given it
  /// receives c with v = sum_r c[r] rows[r] + result.
  SparseVec reduce(SparseVec v, std::vector<Scalar>* coords = nullptr) const;
  bool contains(const SparseVec& v) const { return reduce(v).empty(); }
  std::optional<std::vector<Scalar>> coordinates(const SparseVec& v) const;

  /// Adds v to the span; returns false when v was already a member.
  bool insert(const SparseVec& v);

 private:
  Field field_;
  std::vector<SparseVec> rows_;
  std::unordered_map<std::size_t, std::size_t> pivot_row_;
};

struct RowReduction {
  SparseMatrix rref;
  std::size_t rank = 0;
  std::vector<std::size_t> pivots;
};

/// Reduced row echelon form with leftmost pivots.
RowReduction row_reduce(const SparseMatrix& m);

struct Membership {
  bool member = false;
  std::vector<Scalar> coordinates;
};

/// Membership of v in the span of echelonized rows, with coordinates
/// against those rows.
Membership subspace_membership(const SparseMatrix& basis_rows, const SparseVec& v);

/// Basis of {c : sum_i c_i v_i = 0}, each kernel vector indexed by i.
std::vector<SparseVec> kernel(const Field& f, const std::vector<SparseVec>& vectors);

/// Degree -> dimension, storing only nonzero dimensions.
class GradedDims {
 public:
  GradedDims() = default;
  GradedDims(std::initializer_list<std::pair<const int, std::size_t>> init);

  void set(int degree, std::size_t dim);
  void add(int degree, std::size_t dim);
  std::size_t get(int degree) const;
  std::size_t total() const;
  bool empty() const { return dims_.empty(); }
  std::vector<int> support() const;
  const std::map<int, std::size_t>& map() const { return dims_; }
  std::string to_string() const;

  bool operator==(const GradedDims& o) const { return dims_ == o.dims_; }
  bool operator!=(const GradedDims& o) const { return dims_ != o.dims_; }

 private:
  std::map<int, std::size_t> dims_;
};

using GradedVectors = std::map<int, std::vector<SparseVec>>;

/// Per-degree dim(span ambient_d) - dim(span sub_d).
GradedDims graded_quotient_dims(const Field& f, const GradedVectors& ambient, const GradedVectors& sub);

}  // namespace klr
