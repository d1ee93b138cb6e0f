#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "superloop/hw_module.hpp"
#include "superloop/kac.hpp"
#include "superloop/loop.hpp"

using namespace superloop;

namespace {

std::vector<Rat> rv(std::initializer_list<long> xs) {
  std::vector<Rat> v;
  for (long x : xs) v.emplace_back(x);
  return v;
}

// long-division oracle for t^n mod P (ascending monic coefficients)
std::vector<Rat> longdiv_power(const std::vector<Rat>& p, long n) {
  const long deg = static_cast<long>(p.size()) - 1;
  std::vector<Rat> r(deg, Rat(0));
  std::vector<Rat> cur(deg, Rat(0));
  // iterate t^0, t^1, ..., t^n for n >= 0
  cur[0] = 1;
  for (long step = 0; step < n; ++step) {
    std::vector<Rat> next(deg, Rat(0));
    Rat top = cur[deg - 1];
    for (long i = deg - 1; i > 0; --i) next[i] = cur[i - 1];
    for (long i = 0; i < deg; ++i) next[i] -= top * p[i];
    cur = next;
  }
  r = cur;
  return r;
}

// super-Jacobi on structure constants:
// [x,[y,w]] = [[x,y],w] + (-1)^{|x||y|} [y,[x,w]]
bool acting_jacobi(const ActingAlgebra& A, int x, int y, int w) {
  auto bracket_elem = [&](int i, const SparseRow& v) {
    std::map<int, Rat> out;
    for (const auto& [j, c] : v)
      for (const auto& [k, c2] : A.bracket[i][j]) {
        out[k] += c * c2;
        if (out[k] == 0) out.erase(k);
      }
    return out;
  };
  auto to_map = [](const SparseRow& v) {
    std::map<int, Rat> m;
    for (const auto& [k, c] : v) m[k] = c;
    return m;
  };
  std::map<int, Rat> lhs = bracket_elem(x, A.bracket[y][w]);
  std::map<int, Rat> rhs;
  for (const auto& [k, c] : A.bracket[x][y])
    for (const auto& [k2, c2] : to_map(A.bracket[k][w])) {
      rhs[k2] += c * c2;
      if (rhs[k2] == 0) rhs.erase(k2);
    }
  int sign = (A.parity[x] && A.parity[y]) ? -1 : 1;
  for (const auto& [k, c] : bracket_elem(y, A.bracket[x][w])) {
    rhs[k] += Rat(sign) * c;
    if (rhs[k] == 0) rhs.erase(k);
  }
  return lhs == rhs;
}

}  // namespace

TEST_CASE("quotient by (t-1) reproduces the base algebra") {
  auto g = std::make_shared<SuperAlgebra>(build_sl(2, 1));
  QuotientAlgebra q = quotient_algebra(g, IdealSpec({Rat(1)}, {1}));
  CHECK(q.acting->dim == g->dim());
  for (int i = 0; i < g->dim(); ++i)
    for (int j = 0; j < g->dim(); ++j)
      CHECK(q.acting->bracket[i][j] == g->acting->bracket[i][j]);
  // x (x) t^s maps to x for every s
  SparseRow red = q.reduce_element(3, 7);
  CHECK(red == SparseRow{{3, Rat(1)}});
}

TEST_CASE("quotient by (t-2)(t-3): reduction against a long-division oracle") {
  IdealSpec ideal({Rat(2), Rat(3)}, {1, 1});
  CHECK(ideal.pcoeff() == std::vector<Rat>{Rat(6), Rat(-5), Rat(1)});
  // t^2 = 5t - 6 mod P
  CHECK(ideal.reduce_power(2) == std::vector<Rat>{Rat(-6), Rat(5)});
  for (long n = -6; n <= 8; ++n) {
    if (n >= 0) CHECK(ideal.reduce_power(n) == longdiv_power(ideal.pcoeff(), n));
    // backward consistency: t * red(n-1) == red(n)
    auto a = ideal.reduce_power(n - 1);
    LaurentPoly pa;
    for (std::size_t i = 0; i < a.size(); ++i) pa.set(static_cast<long>(i) + 1, a[i]);
    // reduce the spill term t^theta manually
    Rat top = pa.at(2);
    pa.set(2, Rat(0));
    if (top != 0) {
      pa.set(0, pa.at(0) - top * ideal.pcoeff()[0]);
      pa.set(1, pa.at(1) - top * ideal.pcoeff()[1]);
    }
    CHECK(pa.at(0) == ideal.reduce_power(n)[0]);
    CHECK(pa.at(1) == ideal.reduce_power(n)[1]);
  }

  auto g = std::make_shared<SuperAlgebra>(build_sl(2, 1));
  QuotientAlgebra q = quotient_algebra(g, ideal);
  // [x (x) t, y (x) t] = [x,y] (x) (5t - 6)
  const auto& B = *g->acting;
  for (int i = 0; i < B.dim; ++i)
    for (int j = 0; j < B.dim; ++j) {
      SparseRow expect;
      for (const auto& [k, c] : B.bracket[i][j]) {
        expect.push_back({q.index_of(k, 0), c * Rat(-6)});
        expect.push_back({q.index_of(k, 1), c * Rat(5)});
      }
      std::sort(expect.begin(), expect.end());
      CHECK(q.acting->bracket[q.index_of(i, 1)][q.index_of(j, 1)] == expect);
    }
  // CRT: image of x (x) t is (2x, 3x)
  auto crt = q.crt_coefficients();
  CHECK(crt[1] == std::vector<Rat>{Rat(2), Rat(3)});
  CHECK(crt[0] == std::vector<Rat>{Rat(1), Rat(1)});
}

TEST_CASE("super-Jacobi holds exactly in quotient algebras") {
  auto g = std::make_shared<SuperAlgebra>(build_sl(2, 1));
  QuotientAlgebra q = quotient_algebra(g, IdealSpec({Rat(2), Rat(3)}, {1, 1}));
  const int d = q.acting->dim;  // 16: exhaustive
  for (int x = 0; x < d; ++x)
    for (int y = 0; y < d; ++y)
      for (int w = 0; w < d; ++w) REQUIRE(acting_jacobi(*q.acting, x, y, w));

  // larger instance: randomized triples
  QuotientAlgebra q2 =
      quotient_algebra(g, IdealSpec({Rat(1), Rat(-1), Rat(2)}, {1, 2, 1}));
  std::mt19937 rng(5);
  for (int t = 0; t < 300; ++t) {
    int x = rng() % q2.acting->dim, y = rng() % q2.acting->dim, w = rng() % q2.acting->dim;
    REQUIRE(acting_jacobi(*q2.acting, x, y, w));
  }
}

TEST_CASE("evaluation at a single point 1 reproduces V(lambda)") {
  auto g = std::make_shared<SuperAlgebra>(build_sl(2, 1));
  std::vector<Rat> lam = rv({1, 0, 1});
  WeightModule kac = kac_module(*g, hw_module_even(*g, lam));
  WeightModule v = irreducible_quotient(kac, kac.top);

  EvaluationModule ev = evaluation_module(g, {lam}, {Rat(1)});
  CHECK(ev.module.dim == v.dim);
  for (int i = 0; i < g->dim(); ++i) CHECK(ev.module.action[i] == v.action[i]);
  assert_module_sound(ev.module, true);
  CHECK(is_irreducible(ev.module));
  CHECK(is_integrable(ev.module));
}

TEST_CASE("evaluation module highest weight scalars follow the tensor formula") {
  auto g = std::make_shared<SuperAlgebra>(build_sl(2, 1));
  std::vector<Rat> lam1 = rv({1, 0, 1});
  std::vector<Rat> lam2 = rv({0, 0, 1});
  std::vector<Rat> pts{Rat(2), Rat(-1, 3)};
  EvaluationModule ev = evaluation_module(g, {lam1, lam2}, pts);
  assert_module_sound(ev.module, false);
  CHECK(is_irreducible(ev.module));

  PsiData psi = psi_from(*g, {lam1, lam2}, pts);
  const int top = ev.module.top;
  for (long m = -3; m <= 3; ++m) {
    for (std::size_t k = 0; k < g->cartan_idx.size(); ++k) {
      Mat a = ev.module.act_combination(ev.qa.cartan_at(static_cast<int>(k), m));
      // (h (x) t^m) v_top = psi(h (x) t^m) v_top
      std::vector<Rat> e(ev.module.dim, Rat(0));
      e[top] = 1;
      auto img = a.apply(e);
      for (int i = 0; i < ev.module.dim; ++i)
        CHECK(img[i] == (i == top ? psi.on_cartan(k, m) : Rat(0)));
    }
    // z (x) t^m acts on the top by psi_z
    Mat az = ev.module.act_combination(ev.qa.z_at(m));
    std::vector<Rat> e(ev.module.dim, Rat(0));
    e[top] = 1;
    CHECK(az.apply(e)[top] == psi.on_z(m));
  }
}

TEST_CASE("vanishing at K=2 opposite points: (h (x) t) kills the top vector") {
  auto g = std::make_shared<SuperAlgebra>(build_sl(2, 1));
  std::vector<Rat> lam = rv({1, 0, 1});
  EvaluationModule ev = evaluation_module(g, {lam, lam}, {Rat(1), Rat(-1)});
  PsiData psi = psi_from(*g, {lam, lam}, {Rat(1), Rat(-1)});
  for (std::size_t k = 0; k < g->cartan_idx.size(); ++k) CHECK(psi.on_cartan(k, 1) == 0);
  CHECK(psi.on_z(1) == 0);
  const int top = ev.module.top;
  std::vector<Rat> e(ev.module.dim, Rat(0));
  e[top] = 1;
  for (std::size_t k = 0; k < g->cartan_idx.size(); ++k) {
    Mat a = ev.module.act_combination(ev.qa.cartan_at(static_cast<int>(k), 1));
    CHECK(vec_is_zero(a.apply(e)));
  }
}

TEST_CASE("zeta kernel: x (x) P'(t) t^s acts as zero on evaluation modules") {
  auto g = std::make_shared<SuperAlgebra>(build_sl(2, 1));
  std::vector<Rat> pts{Rat(2), Rat(5, 2)};
  EvaluationModule ev =
      evaluation_module(g, {rv({1, 0, 1}), rv({0, 0, 0})}, pts);
  const auto& pc = ev.qa.ideal.pcoeff();
  for (int i = 0; i < g->dim(); ++i)
    for (long s = 0; s < ev.qa.ideal.theta(); ++s) {
      Mat acc(ev.module.dim, ev.module.dim);
      for (std::size_t u = 0; u < pc.size(); ++u)
        if (pc[u] != 0)
          acc = acc + ev.direct_action(i, static_cast<long>(u) + s).scaled(pc[u]);
      CHECK(acc.is_zero());
    }
}

TEST_CASE("CRT consistency: reduced action equals the direct evaluation formula") {
  auto g = std::make_shared<SuperAlgebra>(build_sl(2, 1));
  EvaluationModule ev =
      evaluation_module(g, {rv({0, 0, 1}), rv({1, 0, 1})}, {Rat(1), Rat(2)});
  for (int i = 0; i < g->dim(); ++i)
    for (long n = -2; n <= 4; ++n)
      CHECK(ev.module.act_combination(ev.qa.reduce_element(i, n)) ==
            ev.direct_action(i, n));
}

TEST_CASE("psi closed form") {
  auto g = std::make_shared<SuperAlgebra>(build_sl(2, 1));
  std::vector<Rat> lam = rv({1, 0, 1});
  // m = 0: sum of the weights
  PsiData p1 = psi_from(*g, {lam, lam}, {Rat(1), Rat(2)});
  auto hv = g->cartan_values_from_epsdelta(lam);
  for (std::size_t k = 0; k < hv.size(); ++k) CHECK(p1.on_cartan(k, 0) == 2 * hv[k]);
  // single point a=2, m=3: 8 lambda(h)
  PsiData p2 = psi_from(*g, {lam}, {Rat(2)});
  for (std::size_t k = 0; k < hv.size(); ++k) CHECK(p2.on_cartan(k, 3) == 8 * hv[k]);
  CHECK(p2.on_z(3) == 8 * g->lambda_z(lam));
}

TEST_CASE("detect_period") {
  auto g = std::make_shared<SuperAlgebra>(build_sl(2, 1));
  std::vector<Rat> zero = rv({0, 0, 0});
  std::vector<Rat> lam = rv({1, 0, 1});
  CHECK(detect_period(*g, {zero, zero}, {Rat(1), Rat(2)}) == 0);
  CHECK(detect_period(*g, {lam}, {Rat(2)}) == 1);
  CHECK(detect_period(*g, {lam, lam}, {Rat(1), Rat(-1)}) == 2);
  // z-only weight still produces r = 2
  std::vector<Rat> zonly = rv({0, 0, 1});
  CHECK(detect_period(*g, {zonly, zonly}, {Rat(1), Rat(-1)}) == 2);
  // invariant: r divides every m with psi_m != 0 and psi_r != 0
  PsiData psi = psi_from(*g, {lam, lam}, {Rat(1), Rat(-1)});
  for (long m = -6; m <= 6; ++m)
    if (m % 2 != 0) CHECK(vec_is_zero(psi.vec(m)));
  CHECK_FALSE(vec_is_zero(psi.vec(2)));
}

TEST_CASE("graded loop module: d eigenvalues and hop action") {
  auto g = std::make_shared<SuperAlgebra>(build_sl(2, 1));
  EvaluationModule ev = evaluation_module(g, {rv({0, 0, 1})}, {Rat(2)});
  auto carrier = std::make_shared<WeightModule>(ev.module);
  auto qa = std::make_shared<QuotientAlgebra>(ev.qa);
  GradedLoopModule glm = loop_module(carrier, qa, Rat(1, 2));
  CHECK(glm.d_eigenvalue(0) == Rat(1, 2));
  CHECK(glm.d_eigenvalue(-3) == Rat(-5, 2));
  // x(2) acts from slice -1 into slice 1 by the reduction of x (x) t^2;
  // with I = (t-2) that is 4x
  for (int i = 0; i < g->dim(); ++i) CHECK(glm.act(i, 2) == ev.module.action[i].scaled(Rat(4)));
}

TEST_CASE("loop decomposition: r=1 gives one component spanning every slice") {
  auto g = std::make_shared<SuperAlgebra>(build_sl(2, 1));
  EvaluationModule ev = evaluation_module(g, {rv({1, 0, 1})}, {Rat(2)});
  auto carrier = std::make_shared<WeightModule>(ev.module);
  auto qa = std::make_shared<QuotientAlgebra>(ev.qa);
  GradedLoopModule glm = loop_module(carrier, qa, Rat(0));
  std::vector<Rat> v(carrier->dim, Rat(0));
  v[carrier->top] = 1;
  auto comps = decompose_loop(glm, v, 1, -3, 3);
  REQUIRE(comps.size() == 1);
  for (long s = -3; s <= 3; ++s) CHECK(comps[0].slices.at(s).dim() == carrier->dim);
}

TEST_CASE("loop decomposition: r=2 with opposite points over sl(2,1)") {
  auto g = std::make_shared<SuperAlgebra>(build_sl(2, 1));
  std::vector<Rat> lam = rv({0, 0, 1});
  REQUIRE(detect_period(*g, {lam, lam}, {Rat(1), Rat(-1)}) == 2);
  EvaluationModule ev = evaluation_module(g, {lam, lam}, {Rat(1), Rat(-1)});
  auto carrier = std::make_shared<WeightModule>(ev.module);
  auto qa = std::make_shared<QuotientAlgebra>(ev.qa);
  GradedLoopModule glm = loop_module(carrier, qa, Rat(0));
  std::vector<Rat> v(carrier->dim, Rat(0));
  v[carrier->top] = 1;
  auto comps = decompose_loop(glm, v, 2, -4, 4);
  REQUIRE(comps.size() == 2);
  const int n = carrier->dim;
  for (long s = -4; s <= 4; ++s) {
    int d0 = comps[0].slices.at(s).dim();
    int d1 = comps[1].slices.at(s).dim();
    CHECK(d0 + d1 == n);
    CHECK(d0 > 0);
    CHECK(d1 > 0);
    CHECK(comps[0].slices.at(s).intersect(comps[1].slices.at(s)).dim() == 0);
  }
  // alternating pattern: component dims swap between adjacent slices
  CHECK(comps[0].slices.at(0).dim() == comps[1].slices.at(1).dim());
  CHECK(comps[0].slices.at(1).dim() == comps[1].slices.at(0).dim());
}
