#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <vector>

#include "superloop/linalg.hpp"

using namespace superloop;

namespace {

// Independent rank oracle: fraction-free Bareiss elimination on a dense
// integer copy. Kept deliberately separate from the library's rref path.
int bareiss_rank(std::vector<std::vector<long>> a) {
  const int rows = static_cast<int>(a.size());
  if (rows == 0) return 0;
  const int cols = static_cast<int>(a[0].size());
  std::vector<std::vector<mpz_class>> m(rows, std::vector<mpz_class>(cols));
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m[i][j] = a[i][j];
  mpz_class prev = 1;
  int r = 0;
  for (int c = 0; c < cols && r < rows; ++c) {
    int p = -1;
    for (int i = r; i < rows; ++i)
      if (m[i][c] != 0) {
        p = i;
        break;
      }
    if (p < 0) continue;
    std::swap(m[r], m[p]);
    for (int i = r + 1; i < rows; ++i) {
      for (int j = c + 1; j < cols; ++j)
        m[i][j] = (m[i][j] * m[r][c] - m[i][c] * m[r][j]) / prev;
      m[i][c] = 0;
    }
    prev = m[r][c];
    ++r;
  }
  return r;
}

Mat mat_of(const std::vector<std::vector<long>>& a) {
  std::vector<std::vector<Rat>> rows;
  for (const auto& r : a) {
    std::vector<Rat> row;
    for (long v : r) row.emplace_back(v);
    rows.push_back(row);
  }
  return Mat::from_rows(rows);
}

std::vector<Rat> rvec(std::initializer_list<long> xs) {
  std::vector<Rat> v;
  for (long x : xs) v.emplace_back(x);
  return v;
}

}  // namespace

TEST_CASE("rref: identity is fixed, rank 2") {
  auto r = rref(Mat::identity(2));
  CHECK(r.rank == 2);
  CHECK(r.mat == Mat::identity(2));
}

TEST_CASE("rref: proportional rows collapse") {
  Mat m = mat_of({{1, 2}, {2, 4}});
  auto r = rref(m);
  CHECK(r.rank == 1);
  CHECK(r.mat.at(0, 0) == Rat(1));
  CHECK(r.mat.at(0, 1) == Rat(2));
}

TEST_CASE("rref: rank of random 6x6 integer matrices matches Bareiss oracle") {
  std::mt19937 rng(20240817);
  std::uniform_int_distribution<long> d(-4, 4);
  for (int trial = 0; trial < 40; ++trial) {
    std::vector<std::vector<long>> a(6, std::vector<long>(6));
    for (auto& row : a)
      for (auto& x : row) x = d(rng);
    // occasionally force rank deficiency
    if (trial % 3 == 0) a[5] = a[0];
    CHECK(rank(mat_of(a)) == bareiss_rank(a));
  }
}

TEST_CASE("rref is idempotent (canonical form)") {
  std::mt19937 rng(7);
  std::uniform_int_distribution<long> d(-3, 3);
  for (int trial = 0; trial < 25; ++trial) {
    std::vector<std::vector<long>> a(5, std::vector<long>(7));
    for (auto& row : a)
      for (auto& x : row) x = d(rng);
    auto r1 = rref(mat_of(a));
    auto r2 = rref(r1.mat);
    CHECK(r1.mat == r2.mat);
    CHECK(r1.rank == r2.rank);
  }
}

TEST_CASE("kernel: identity and zero matrix") {
  CHECK(kernel(Mat::identity(3)).dim() == 0);
  CHECK(kernel(Mat(3, 3)).dim() == 3);
  CHECK(kernel(Mat(3, 3)) == Subspace::full(3));
}

TEST_CASE("kernel: explicit null space with brute-force verification") {
  Mat m = mat_of({{1, 1, 0}, {0, 0, 1}});
  Subspace k = kernel(m);
  CHECK(k.dim() == 1);
  CHECK(k.contains(rvec({1, -1, 0})));
  for (int i = 0; i < k.dim(); ++i) {
    auto v = dense_from_sparse(k.basis().row(i), 3);
    CHECK(vec_is_zero(m.apply(v)));
  }
}

TEST_CASE("rank-nullity on random matrices") {
  std::mt19937 rng(99);
  std::uniform_int_distribution<long> d(-2, 2);
  for (int trial = 0; trial < 30; ++trial) {
    int rows = 2 + static_cast<int>(rng() % 6), cols = 2 + static_cast<int>(rng() % 6);
    std::vector<std::vector<long>> a(rows, std::vector<long>(cols));
    for (auto& row : a)
      for (auto& x : row) x = d(rng);
    Mat m = mat_of(a);
    CHECK(rank(m) + kernel(m).dim() == cols);
  }
}

TEST_CASE("contains: zero vector, unit vectors, derived combination") {
  Subspace s = Subspace::span_vectors(3, {{Rat(1), Rat(0), Rat(0)}});
  CHECK(s.contains(rvec({0, 0, 0})));
  CHECK_FALSE(s.contains(rvec({0, 1, 0})));

  // span{e1+e2, e2+e3} contains e1 - e3 = (e1+e2) - (e2+e3)
  Subspace t = Subspace::span_vectors(
      3, {{Rat(1), Rat(1), Rat(0)}, {Rat(0), Rat(1), Rat(1)}});
  CHECK(t.contains(rvec({1, 0, -1})));
  CHECK_FALSE(t.contains(rvec({1, 0, 0})));
  auto coords = t.coordinates(rvec({1, 0, -1}));
  REQUIRE(coords.has_value());
}

TEST_CASE("contains: dimension mismatch rejected") {
  Subspace s = Subspace::full(3);
  CHECK_THROWS_AS((void)s.contains(rvec({1, 0})), std::invalid_argument);
}

TEST_CASE("solve recovers solutions and rejects inconsistent systems") {
  Mat a = mat_of({{1, 2}, {3, 4}});
  auto x = solve(a, rvec({5, 11}));
  REQUIRE(x.has_value());
  CHECK(a.apply(*x) == rvec({5, 11}));

  Mat sing = mat_of({{1, 1}, {2, 2}});
  CHECK_FALSE(solve(sing, rvec({1, 3})).has_value());
  auto y = solve(sing, rvec({1, 2}));
  REQUIRE(y.has_value());
  CHECK(sing.apply(*y) == rvec({1, 2}));
}

TEST_CASE("largest_invariant_subspace: identity keeps the full space") {
  Subspace full = Subspace::full(4);
  auto w = largest_invariant_subspace(full, {Mat::identity(4)});
  CHECK(w == full);
}

TEST_CASE("largest_invariant_subspace: kernel of a projection is invariant") {
  // pi projects onto e1 along e2; ker(pi) = span{e2}
  Mat pi = mat_of({{1, 0}, {0, 0}});
  Subspace kerpi = kernel(pi);
  auto w = largest_invariant_subspace(kerpi, {pi});
  CHECK(w == kerpi);
}

TEST_CASE("largest_invariant_subspace: shift operator forces zero (hand-iterated)") {
  // g: e1 -> e2 -> e3 -> 0; ambient span{e1,e2}.
  // Round 1: W = span{e1,e2} cap g^-1(span{e1,e2}) = span{e1}.
  // Round 2: span{e1} cap g^-1(span{e1}) = span{e1} cap span{e3} = 0.
  Mat g = mat_of({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}});
  Subspace ambient = Subspace::span_vectors(
      3, {{Rat(1), Rat(0), Rat(0)}, {Rat(0), Rat(1), Rat(0)}});
  auto w = largest_invariant_subspace(ambient, {g});
  CHECK(w.dim() == 0);
}

TEST_CASE("largest_invariant_subspace: invariance and maximality properties") {
  std::mt19937 rng(20240818);
  std::uniform_int_distribution<long> d(-2, 2);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 3 + static_cast<int>(rng() % 6);  // dimension <= 8
    std::vector<Mat> gens;
    for (int g = 0; g < 2; ++g) {
      std::vector<std::vector<long>> a(n, std::vector<long>(n));
      for (auto& row : a)
        for (auto& x : row) x = (rng() % 3 == 0) ? d(rng) : 0;
      gens.push_back(mat_of(a));
    }
    // ambient: a random coordinate subspace
    std::vector<std::vector<Rat>> amb;
    for (int j = 0; j < n; ++j)
      if (rng() % 2) {
        std::vector<Rat> e(n, Rat(0));
        e[j] = 1;
        amb.push_back(e);
      }
    Subspace ambient = Subspace::span_vectors(n, amb);
    Subspace w = largest_invariant_subspace(ambient, gens);

    CHECK(ambient.contains(w));
    // invariance: g*w stays inside for every basis vector
    for (const auto& g : gens)
      for (int i = 0; i < w.dim(); ++i)
        CHECK(w.contains(g.apply(dense_from_sparse(w.basis().row(i), n))));
    // maximality: adjoining any ambient basis direction outside w breaks
    // invariance within a bounded number of closure steps
    for (int i = 0; i < ambient.dim(); ++i) {
      auto v = dense_from_sparse(ambient.basis().row(i), n);
      if (w.contains(v)) continue;
      Mat rows = w.basis();
      rows.append_row(ambient.basis().row(i));
      Subspace bigger = Subspace::span_rows(rows);
      bool breaks = false;
      Subspace cur = bigger;
      for (int step = 0; step < n && !breaks; ++step) {
        Subspace next = cur;
        for (const auto& g : gens)
          for (int k = 0; k < cur.dim(); ++k) {
            auto gv = g.apply(dense_from_sparse(cur.basis().row(k), n));
            if (!ambient.contains(gv)) breaks = true;
            Mat ext = next.basis();
            ext.append_row(sparse_from_dense(gv));
            next = Subspace::span_rows(ext);
          }
        cur = next;
      }
      CHECK(breaks);
    }
  }
}

TEST_CASE("subspace intersect and sum") {
  Subspace a = Subspace::span_vectors(
      3, {{Rat(1), Rat(0), Rat(0)}, {Rat(0), Rat(1), Rat(0)}});
  Subspace b = Subspace::span_vectors(
      3, {{Rat(0), Rat(1), Rat(0)}, {Rat(0), Rat(0), Rat(1)}});
  Subspace meet = a.intersect(b);
  CHECK(meet.dim() == 1);
  CHECK(meet.contains(rvec({0, 1, 0})));
  CHECK(a.sum(b) == Subspace::full(3));
}

TEST_CASE("rational parsing round trips") {
  CHECK(rat_from_string("3/2") == Rat(3, 2));
  CHECK(rat_from_string("-4/6") == Rat(-2, 3));
  CHECK(rat_from_string("7") == Rat(7));
  CHECK(rat_from_string("0.25") == Rat(1, 4));
  CHECK(rat_from_string("-1.5") == Rat(-3, 2));
  CHECK(rat_to_string(Rat(-2, 3)) == "-2/3");
  CHECK_THROWS_AS(rat_from_string("a/b"), std::invalid_argument);
  CHECK_THROWS_AS(rat_from_string("1/0"), std::invalid_argument);
  CHECK(rat_pow(Rat(2), -3) == Rat(1, 8));
  CHECK(rat_pow(Rat(-1), 5) == Rat(-1));
}
