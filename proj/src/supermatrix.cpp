#include "superloop/supermatrix.hpp"

#include <stdexcept>

namespace superloop {

SuperMatrix::SuperMatrix(BlockShape shape, Mat entries)
    : shape_(shape), entries_(std::move(entries)) {
  if (entries_.rows() != shape.size() || entries_.cols() != shape.size())
    throw std::invalid_argument("SuperMatrix: entries do not match block shape");
}

SuperMatrix SuperMatrix::zero(BlockShape shape) {
  return SuperMatrix(shape, Mat(shape.size(), shape.size()));
}

SuperMatrix SuperMatrix::unit(BlockShape shape, int a, int b) {
  Mat m(shape.size(), shape.size());
  m.set(a, b, Rat(1));
  return SuperMatrix(shape, m);
}

Parity SuperMatrix::parity() const {
  bool even = false, odd = false;
  for (int i = 0; i < entries_.rows(); ++i)
    for (const auto& [j, v] : entries_.row(i)) {
      (void)v;
      if (shape_.index_parity(i) == shape_.index_parity(j))
        even = true;
      else
        odd = true;
    }
  if (even && odd) return Parity::Mixed;
  if (even) return Parity::Even;
  if (odd) return Parity::Odd;
  return Parity::Zero;
}

bool SuperMatrix::is_homogeneous() const { return parity() != Parity::Mixed; }

int SuperMatrix::parity_bit() const {
  switch (parity()) {
    case Parity::Even:
    case Parity::Zero:
      return 0;
    case Parity::Odd:
      return 1;
    default:
      throw std::invalid_argument("parity_bit on a mixed-parity matrix");
  }
}

Rat SuperMatrix::supertrace() const {
  Rat s(0);
  for (int i = 0; i < shape_.size(); ++i) {
    Rat d = entries_.at(i, i);
    s += shape_.index_parity(i) == 0 ? d : -d;
  }
  return s;
}

SuperMatrix SuperMatrix::supertranspose() const {
  const int n = shape_.size();
  Mat m(n, n);
  for (int i = 0; i < n; ++i)
    for (const auto& [j, v] : entries_.row(i)) {
      // (X^st)_{ji} = X_{ij}, negated on the upper-right odd block.
      Rat w = (shape_.index_parity(i) == 0 && shape_.index_parity(j) == 1) ? -v : v;
      m.set(j, i, w);
    }
  return SuperMatrix(shape_, m);
}

std::vector<Rat> SuperMatrix::vectorized() const {
  const int n = shape_.size();
  std::vector<Rat> v(static_cast<std::size_t>(n) * n, Rat(0));
  for (int i = 0; i < n; ++i)
    for (const auto& [j, c] : entries_.row(i)) v[static_cast<std::size_t>(i) * n + j] = c;
  return v;
}

SuperMatrix SuperMatrix::operator+(const SuperMatrix& o) const {
  if (!(shape_ == o.shape_)) throw std::invalid_argument("shape mismatch");
  return SuperMatrix(shape_, entries_ + o.entries_);
}

SuperMatrix SuperMatrix::operator-(const SuperMatrix& o) const {
  if (!(shape_ == o.shape_)) throw std::invalid_argument("shape mismatch");
  return SuperMatrix(shape_, entries_ - o.entries_);
}

SuperMatrix SuperMatrix::operator*(const SuperMatrix& o) const {
  if (!(shape_ == o.shape_)) throw std::invalid_argument("shape mismatch");
  return SuperMatrix(shape_, entries_ * o.entries_);
}

SuperMatrix SuperMatrix::scaled(const Rat& c) const {
  return SuperMatrix(shape_, entries_.scaled(c));
}

bool operator==(const SuperMatrix& x, const SuperMatrix& y) {
  return x.shape_ == y.shape_ && x.entries_ == y.entries_;
}

SuperMatrix superbracket(const SuperMatrix& x, const SuperMatrix& y) {
  if (!(x.shape() == y.shape())) throw std::invalid_argument("shape mismatch");
  const int px = x.parity_bit(), py = y.parity_bit();
  SuperMatrix xy = x * y;
  SuperMatrix yx = y * x;
  return (px && py) ? xy + yx : xy - yx;
}

Rat invariant_form(const SuperMatrix& x, const SuperMatrix& y) {
  if (!(x.shape() == y.shape())) throw std::invalid_argument("shape mismatch");
  return (x * y).supertrace();
}

}  // namespace superloop
