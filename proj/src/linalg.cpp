#include "superloop/linalg.hpp"

#include <algorithm>
#include <stdexcept>

namespace superloop {

namespace {

void check_dims(bool ok, const char* what) {
  if (!ok) throw std::invalid_argument(std::string("dimension mismatch: ") + what);
}

// b += c * a, dense accumulator.
void axpy_into(std::vector<Rat>& b, const Rat& c, const SparseRow& a) {
  for (const auto& [j, v] : a) b[j] += c * v;
}

Rat sparse_dot(const SparseRow& r, const std::vector<Rat>& v) {
  Rat s(0);
  for (const auto& [j, c] : r) s += c * v[j];
  return s;
}

}  // namespace

Mat::Mat(int rows, int cols) : rows_(rows), cols_(cols), data_(rows) {
  check_dims(rows >= 0 && cols >= 0, "negative size");
}

Mat Mat::identity(int n) {
  Mat m(n, n);
  for (int i = 0; i < n; ++i) m.data_[i].push_back({i, Rat(1)});
  return m;
}

Mat Mat::from_rows(const std::vector<std::vector<Rat>>& dense) {
  int r = static_cast<int>(dense.size());
  int c = r ? static_cast<int>(dense[0].size()) : 0;
  Mat m(r, c);
  for (int i = 0; i < r; ++i) {
    check_dims(static_cast<int>(dense[i].size()) == c, "ragged rows");
    m.data_[i] = sparse_from_dense(dense[i]);
  }
  return m;
}

Rat Mat::at(int i, int j) const {
  const auto& r = data_[i];
  auto it = std::lower_bound(r.begin(), r.end(), j,
                             [](const auto& p, int col) { return p.first < col; });
  if (it != r.end() && it->first == j) return it->second;
  return Rat(0);
}

void Mat::set(int i, int j, const Rat& v) {
  auto& r = data_[i];
  auto it = std::lower_bound(r.begin(), r.end(), j,
                             [](const auto& p, int col) { return p.first < col; });
  if (it != r.end() && it->first == j) {
    if (v == 0)
      r.erase(it);
    else
      it->second = v;
  } else if (v != 0) {
    r.insert(it, {j, v});
  }
}

void Mat::add_at(int i, int j, const Rat& v) {
  if (v == 0) return;
  auto& r = data_[i];
  auto it = std::lower_bound(r.begin(), r.end(), j,
                             [](const auto& p, int col) { return p.first < col; });
  if (it != r.end() && it->first == j) {
    it->second += v;
    if (it->second == 0) r.erase(it);
  } else {
    r.insert(it, {j, v});
  }
}

bool Mat::is_zero() const {
  for (const auto& r : data_)
    if (!r.empty()) return false;
  return true;
}

long Mat::nnz() const {
  long n = 0;
  for (const auto& r : data_) n += static_cast<long>(r.size());
  return n;
}

Mat Mat::transpose() const {
  Mat t(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (const auto& [j, v] : data_[i]) t.data_[j].push_back({i, v});
  return t;  // per-row order is already sorted because i increases
}

Mat Mat::scaled(const Rat& c) const {
  if (c == 0) return Mat(rows_, cols_);
  Mat m(rows_, cols_);
  for (int i = 0; i < rows_; ++i) {
    m.data_[i] = data_[i];
    for (auto& [j, v] : m.data_[i]) v *= c;
  }
  return m;
}

std::vector<Rat> Mat::apply(const std::vector<Rat>& v) const {
  check_dims(static_cast<int>(v.size()) == cols_, "Mat::apply");
  std::vector<Rat> out(rows_, Rat(0));
  for (int i = 0; i < rows_; ++i) out[i] = sparse_dot(data_[i], v);
  return out;
}

void Mat::append_row(const SparseRow& r) {
  data_.push_back(r);
  ++rows_;
}

Mat operator+(const Mat& a, const Mat& b) {
  check_dims(a.rows_ == b.rows_ && a.cols_ == b.cols_, "operator+");
  Mat m(a.rows_, a.cols_);
  for (int i = 0; i < a.rows_; ++i) {
    std::vector<Rat> buf(a.cols_, Rat(0));
    axpy_into(buf, Rat(1), a.data_[i]);
    axpy_into(buf, Rat(1), b.data_[i]);
    m.data_[i] = sparse_from_dense(buf);
  }
  return m;
}

Mat operator-(const Mat& a, const Mat& b) { return a + b.scaled(Rat(-1)); }

Mat operator*(const Mat& a, const Mat& b) {
  check_dims(a.cols_ == b.rows_, "operator*");
  Mat m(a.rows_, b.cols_);
  std::vector<Rat> buf(b.cols_);
  for (int i = 0; i < a.rows_; ++i) {
    std::fill(buf.begin(), buf.end(), Rat(0));
    for (const auto& [k, c] : a.data_[i]) axpy_into(buf, c, b.data_[k]);
    m.data_[i] = sparse_from_dense(buf);
  }
  return m;
}

bool operator==(const Mat& a, const Mat& b) {
  return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

SparseRow sparse_from_dense(const std::vector<Rat>& v) {
  SparseRow r;
  for (int j = 0; j < static_cast<int>(v.size()); ++j)
    if (v[j] != 0) r.push_back({j, v[j]});
  return r;
}

std::vector<Rat> dense_from_sparse(const SparseRow& r, int n) {
  std::vector<Rat> v(n, Rat(0));
  for (const auto& [j, c] : r) v[j] = c;
  return v;
}

bool vec_is_zero(const std::vector<Rat>& v) {
  for (const auto& x : v)
    if (x != 0) return false;
  return true;
}

namespace {

// Shared elimination core. Rows are reduced one by one against the growing
// pivot set through a dense accumulator, then back-substituted at the end so
// the result is the canonical RREF. The last `tail` columns are augmentation:
// they ride along and never produce pivots. A row whose main part vanishes is
// handed back to the caller (its tail is a left-null certificate).
struct Eliminator {
  int cols, tail;
  std::vector<SparseRow> rows;  // pivot rows, ascending pivot column
  std::vector<int> pivots;
  std::vector<SparseRow> residues;  // fully reduced rows with zero main part

  explicit Eliminator(int cols_, int tail_ = 0) : cols(cols_), tail(tail_) {}

  void feed(const SparseRow& r) {
    std::vector<Rat> buf = dense_from_sparse(r, cols + tail);
    for (std::size_t k = 0; k < rows.size(); ++k) {
      const Rat c = buf[pivots[k]];
      if (c != 0) axpy_into(buf, -c, rows[k]);
    }
    int lead = -1;
    for (int j = 0; j < cols; ++j)
      if (buf[j] != 0) {
        lead = j;
        break;
      }
    if (lead < 0) {
      SparseRow res = sparse_from_dense(buf);
      if (!res.empty()) residues.push_back(std::move(res));
      return;
    }
    Rat inv = Rat(1) / buf[lead];
    for (auto& x : buf) x *= inv;
    auto pos = std::lower_bound(pivots.begin(), pivots.end(), lead);
    std::size_t idx = static_cast<std::size_t>(pos - pivots.begin());
    pivots.insert(pos, lead);
    rows.insert(rows.begin() + idx, sparse_from_dense(buf));
  }

  void back_substitute() {
    for (int k = static_cast<int>(rows.size()) - 1; k >= 0; --k) {
      for (int i = 0; i < k; ++i) {
        const auto& upper = rows[i];
        auto it = std::lower_bound(
            upper.begin(), upper.end(), pivots[k],
            [](const auto& p, int col) { return p.first < col; });
        if (it == upper.end() || it->first != pivots[k]) continue;
        Rat c = it->second;
        std::vector<Rat> buf = dense_from_sparse(upper, cols + tail);
        axpy_into(buf, -c, rows[k]);
        rows[i] = sparse_from_dense(buf);
      }
    }
  }
};

}  // namespace

RrefResult rref(const Mat& m) {
  Eliminator e(m.cols());
  for (int i = 0; i < m.rows(); ++i) e.feed(m.row(i));
  e.back_substitute();
  RrefResult out;
  out.rank = static_cast<int>(e.rows.size());
  out.pivots = e.pivots;
  out.mat = Mat(out.rank, m.cols());
  for (int i = 0; i < out.rank; ++i) out.mat.mutable_row(i) = e.rows[i];
  return out;
}

int rank(const Mat& m) {
  Eliminator e(m.cols());
  for (int i = 0; i < m.rows(); ++i) e.feed(m.row(i));
  return static_cast<int>(e.rows.size());
}

std::optional<std::vector<Rat>> solve(const Mat& a, const std::vector<Rat>& b) {
  return LinSolver(a).solve(b);
}

LinSolver::LinSolver(const Mat& a) : rows_(a.rows()), cols_(a.cols()) {
  // Eliminate [A | I]; tails of kept rows give the transform T with T A = R,
  // tails of vanished rows span the left null space of A.
  Eliminator e(cols_, rows_);
  for (int i = 0; i < rows_; ++i) {
    SparseRow r = a.row(i);
    r.push_back({cols_ + i, Rat(1)});
    e.feed(r);
  }
  e.back_substitute();
  rank_ = static_cast<int>(e.rows.size());
  pivots_ = e.pivots;
  r_ = Mat(rank_, cols_);
  t_ = Mat(rank_, rows_);
  for (int k = 0; k < rank_; ++k) {
    for (const auto& [j, v] : e.rows[k]) {
      if (j < cols_)
        r_.mutable_row(k).push_back({j, v});
      else
        t_.mutable_row(k).push_back({j - cols_, v});
    }
  }
  leftnull_ = Mat(static_cast<int>(e.residues.size()), rows_);
  for (std::size_t k = 0; k < e.residues.size(); ++k)
    for (const auto& [j, v] : e.residues[k])
      leftnull_.mutable_row(static_cast<int>(k)).push_back({j - cols_, v});
}

std::optional<std::vector<Rat>> LinSolver::solve(const std::vector<Rat>& b) const {
  check_dims(static_cast<int>(b.size()) == rows_, "LinSolver::solve");
  // Consistent iff b is orthogonal to the left null space of A.
  if (!vec_is_zero(leftnull_.apply(b))) return std::nullopt;
  std::vector<Rat> y = t_.apply(b);
  std::vector<Rat> x(cols_, Rat(0));
  for (int k = 0; k < rank_; ++k) x[pivots_[k]] = y[k];
  return x;
}

Subspace Subspace::zero(int ambient) { return Subspace(ambient, Mat(0, ambient)); }

Subspace Subspace::full(int ambient) {
  return Subspace(ambient, Mat::identity(ambient));
}

Subspace Subspace::span_rows(const Mat& rows) {
  return Subspace(rows.cols(), rref(rows).mat);
}

Subspace Subspace::span_vectors(int ambient, const std::vector<std::vector<Rat>>& vs) {
  Mat m(0, ambient);
  for (const auto& v : vs) {
    check_dims(static_cast<int>(v.size()) == ambient, "span_vectors");
    m.append_row(sparse_from_dense(v));
  }
  return span_rows(m);
}

bool Subspace::contains(const std::vector<Rat>& v) const {
  check_dims(static_cast<int>(v.size()) == ambient_, "Subspace::contains");
  std::vector<Rat> buf = v;
  const auto piv = [&]() {
    std::vector<int> p;
    for (int i = 0; i < basis_.rows(); ++i) p.push_back(basis_.row(i).front().first);
    return p;
  }();
  for (int i = 0; i < basis_.rows(); ++i) {
    const Rat c = buf[piv[i]];
    if (c != 0) axpy_into(buf, -c, basis_.row(i));
  }
  return vec_is_zero(buf);
}

bool Subspace::contains(const Subspace& other) const {
  check_dims(ambient_ == other.ambient_, "Subspace::contains");
  for (int i = 0; i < other.basis_.rows(); ++i)
    if (!contains(dense_from_sparse(other.basis_.row(i), ambient_))) return false;
  return true;
}

std::optional<std::vector<Rat>> Subspace::coordinates(const std::vector<Rat>& v) const {
  check_dims(static_cast<int>(v.size()) == ambient_, "Subspace::coordinates");
  std::vector<Rat> buf = v;
  std::vector<Rat> coords(basis_.rows(), Rat(0));
  for (int i = 0; i < basis_.rows(); ++i) {
    const int p = basis_.row(i).front().first;
    const Rat c = buf[p];
    if (c != 0) {
      coords[i] = c;
      axpy_into(buf, -c, basis_.row(i));
    }
  }
  if (!vec_is_zero(buf)) return std::nullopt;
  return coords;
}

Subspace Subspace::sum(const Subspace& other) const {
  check_dims(ambient_ == other.ambient_, "Subspace::sum");
  Mat m = basis_;
  for (int i = 0; i < other.basis_.rows(); ++i) m.append_row(other.basis_.row(i));
  return span_rows(m);
}

Mat Subspace::constraint_rows() const {
  // W = row space of basis_; W = ker(C) with C = basis of the orthogonal
  // complement under the standard dot product (anisotropic over Q).
  return kernel(basis_).basis();
}

Subspace Subspace::intersect(const Subspace& other) const {
  check_dims(ambient_ == other.ambient_, "Subspace::intersect");
  Mat c1 = constraint_rows();
  Mat c2 = other.constraint_rows();
  for (int i = 0; i < c2.rows(); ++i) c1.append_row(c2.row(i));
  return kernel(c1);
}

bool operator==(const Subspace& a, const Subspace& b) {
  return a.ambient_ == b.ambient_ && a.basis_ == b.basis_;
}

Subspace kernel(const Mat& m) {
  RrefResult r = rref(m);
  const int n = m.cols();
  std::vector<bool> is_pivot(n, false);
  for (int p : r.pivots) is_pivot[p] = true;
  Mat basis(0, n);
  for (int j = 0; j < n; ++j) {
    if (is_pivot[j]) continue;
    std::vector<Rat> v(n, Rat(0));
    v[j] = 1;
    for (int i = 0; i < r.rank; ++i) v[r.pivots[i]] = -r.mat.at(i, j);
    basis.append_row(sparse_from_dense(v));
  }
  return Subspace::span_rows(basis);
}

Subspace largest_invariant_subspace(const Subspace& ambient,
                                    const std::vector<Mat>& generators) {
  const int n = ambient.ambient();
  for (const auto& g : generators)
    check_dims(g.rows() == n && g.cols() == n, "largest_invariant_subspace");
  // Constraint representation: W = ker(R). One round replaces R by the rref
  // of R stacked with R*g for all generators; the kernel shrinks until stable.
  Mat r = ambient.constraint_rows();
  int cur_rank = r.rows();
  while (true) {
    Mat stacked = r;
    for (const auto& g : generators) {
      Mat rg = r * g;
      for (int i = 0; i < rg.rows(); ++i) stacked.append_row(rg.row(i));
    }
    RrefResult red = rref(stacked);
    if (red.rank == cur_rank) break;
    r = red.mat;
    cur_rank = red.rank;
  }
  return kernel(r);
}

}  // namespace superloop
