#pragma once

#include <string>

#include "superloop/linalg.hpp"

namespace superloop {

enum class Parity { Even, Odd, Mixed, Zero };

/// Block sizes (p|q) of a Z2-graded square matrix space gl(p,q).
struct BlockShape {
  int p = 0, q = 0;
  int size() const { return p + q; }
  /// 0 for indices in the first block, 1 in the second (0-based index).
  int index_parity(int a) const { return a < p ? 0 : 1; }
  friend bool operator==(const BlockShape& x, const BlockShape& y) {
    return x.p == y.p && x.q == y.q;
  }
};

/// A Z2-graded square matrix over exact rationals.
class SuperMatrix {
 public:
  SuperMatrix() : shape_{0, 0}, entries_(0, 0) {}
  SuperMatrix(BlockShape shape, Mat entries);
  static SuperMatrix zero(BlockShape shape);
  /// Matrix unit E_ab (0-based indices).
  static SuperMatrix unit(BlockShape shape, int a, int b);

  const BlockShape& shape() const { return shape_; }
  const Mat& entries() const { return entries_; }
  Rat at(int a, int b) const { return entries_.at(a, b); }

  /// Derived from the support: Even, Odd, Mixed, or Zero.
  Parity parity() const;
  bool is_homogeneous() const;  // Even, Odd or Zero
  /// 0 or 1; Zero counts as even. Throws on Mixed.
  int parity_bit() const;

  Rat supertrace() const;
  /// (A B; C D)^st = (A^t C^t; -B^t D^t).
  SuperMatrix supertranspose() const;

  bool is_zero() const { return entries_.is_zero(); }
  std::vector<Rat> vectorized() const;  // row-major flattening, length size^2

  SuperMatrix operator+(const SuperMatrix& o) const;
  SuperMatrix operator-(const SuperMatrix& o) const;
  SuperMatrix operator*(const SuperMatrix& o) const;  // plain matrix product
  SuperMatrix scaled(const Rat& c) const;
  friend bool operator==(const SuperMatrix& x, const SuperMatrix& y);

 private:
  BlockShape shape_;
  Mat entries_;
};

/// xy - (-1)^{|x||y|} yx on homogeneous inputs; throws on mixed parity.
SuperMatrix superbracket(const SuperMatrix& x, const SuperMatrix& y);

/// str(x y), the invariant bilinear form.
Rat invariant_form(const SuperMatrix& x, const SuperMatrix& y);

}  // namespace superloop
