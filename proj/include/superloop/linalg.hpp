#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "superloop/rational.hpp"

namespace superloop {

/// One sparse row: (column, value) pairs sorted by column, no zero values.
using SparseRow = std::vector<std::pair<int, Rat>>;

/// Sparse matrix over exact rationals, row-major.
class Mat {
 public:
  Mat() : rows_(0), cols_(0) {}
  Mat(int rows, int cols);

  static Mat identity(int n);
  static Mat from_rows(const std::vector<std::vector<Rat>>& dense);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  const SparseRow& row(int i) const { return data_[i]; }
  SparseRow& mutable_row(int i) { return data_[i]; }

  Rat at(int i, int j) const;
  void set(int i, int j, const Rat& v);
  void add_at(int i, int j, const Rat& v);

  bool is_zero() const;
  long nnz() const;
  Mat transpose() const;
  Mat scaled(const Rat& c) const;

  std::vector<Rat> apply(const std::vector<Rat>& v) const;  // M*v
  void append_row(const SparseRow& r);

  friend Mat operator+(const Mat& a, const Mat& b);
  friend Mat operator-(const Mat& a, const Mat& b);
  friend Mat operator*(const Mat& a, const Mat& b);
  friend bool operator==(const Mat& a, const Mat& b);

 private:
  int rows_, cols_;
  std::vector<SparseRow> data_;
};

SparseRow sparse_from_dense(const std::vector<Rat>& v);
std::vector<Rat> dense_from_sparse(const SparseRow& r, int n);
bool vec_is_zero(const std::vector<Rat>& v);

struct RrefResult {
  Mat mat;                  // reduced row-echelon form, zero rows removed
  int rank = 0;
  std::vector<int> pivots;  // pivot column per kept row
};

/// Unique canonical reduced row-echelon form.
RrefResult rref(const Mat& m);

int rank(const Mat& m);

/// Solves A x = b; empty optional when inconsistent. Free variables are 0.
std::optional<std::vector<Rat>> solve(const Mat& a, const std::vector<Rat>& b);

/// Repeated solves against a fixed matrix: factor once, solve many.
class LinSolver {
 public:
  explicit LinSolver(const Mat& a);
  std::optional<std::vector<Rat>> solve(const std::vector<Rat>& b) const;
  int rank() const { return rank_; }

 private:
  int rows_, cols_;
  int rank_;
  Mat r_;                    // rref of a
  Mat t_;                    // transform with r_ = t_ * a
  Mat leftnull_;             // rows u with u^T a = 0 (consistency certificates)
  std::vector<int> pivots_;
};

/// Linear subspace of Q^n held as the canonical RREF row basis.
class Subspace {
 public:
  Subspace() : ambient_(0), basis_(0, 0) {}
  static Subspace zero(int ambient);
  static Subspace full(int ambient);
  static Subspace span_rows(const Mat& rows);
  static Subspace span_vectors(int ambient, const std::vector<std::vector<Rat>>& vs);

  int ambient() const { return ambient_; }
  int dim() const { return basis_.rows(); }
  const Mat& basis() const { return basis_; }

  bool contains(const std::vector<Rat>& v) const;
  bool contains(const Subspace& other) const;
  /// Coordinates of v in the RREF basis; empty when v is outside the span.
  std::optional<std::vector<Rat>> coordinates(const std::vector<Rat>& v) const;

  Subspace sum(const Subspace& other) const;
  Subspace intersect(const Subspace& other) const;

  /// Rows R with this = ker(R) (orthogonal complement basis, standard form).
  Mat constraint_rows() const;

  friend bool operator==(const Subspace& a, const Subspace& b);

 private:
  Subspace(int ambient, Mat basis) : ambient_(ambient), basis_(std::move(basis)) {}
  int ambient_ = 0;
  Mat basis_;  // dim x ambient, RREF
};

/// Null space {v : M v = 0}.
Subspace kernel(const Mat& m);

/// Largest subspace W of `ambient` with g W contained in W for every
/// generator, by the decreasing fixpoint W <- W cap (cap_g g^-1 W).
Subspace largest_invariant_subspace(const Subspace& ambient,
                                    const std::vector<Mat>& generators);

}  // namespace superloop
