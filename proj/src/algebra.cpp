#include "superloop/algebra.hpp"

#include <algorithm>
#include <stdexcept>

namespace superloop {

namespace {

std::string pos_label(const char* stem, int a, int b) {
  return std::string(stem) + "(" + std::to_string(a + 1) + "," + std::to_string(b + 1) + ")";
}

std::vector<Rat> rat_vec(const std::vector<long>& v) {
  std::vector<Rat> out;
  out.reserve(v.size());
  for (long x : v) out.emplace_back(x);
  return out;
}

long height_of(const std::vector<Rat>& coeffs) {
  Rat h(0);
  for (const auto& c : coeffs) h += c;
  return rat_to_long(h);
}

}  // namespace

int SuperAlgebra::epsdelta_dim() const {
  return kind == AlgebraKind::SL ? m + n : m;
}

std::string SuperAlgebra::descriptor() const {
  if (kind == AlgebraKind::SL)
    return "sl(" + std::to_string(m) + "," + std::to_string(n) + ")";
  return "C(" + std::to_string(m) + ")";
}

std::vector<int> SuperAlgebra::coordinate_slots() const {
  std::vector<int> slots;
  if (kind == AlgebraKind::SL) {
    for (int a = 0; a < m + n; ++a) slots.push_back(a);
  } else {
    slots.push_back(0);                                  // eps lives on u_1
    for (int k = 0; k < m - 1; ++k) slots.push_back(2 + k);  // delta_k on w_k
  }
  return slots;
}

std::vector<Rat> SuperAlgebra::coords(const SuperMatrix& x) const {
  auto sol = coord_solver_->solve(x.vectorized());
  if (!sol) throw std::invalid_argument("element outside the algebra span");
  return *sol;
}

bool SuperAlgebra::in_span(const SuperMatrix& x) const {
  return coord_solver_->solve(x.vectorized()).has_value();
}

std::vector<Rat> SuperAlgebra::cartan_values_from_epsdelta(
    const std::vector<Rat>& coords) const {
  const auto slots = coordinate_slots();
  if (coords.size() != slots.size())
    throw std::invalid_argument("eps/delta coordinate length mismatch");
  std::vector<Rat> vals;
  vals.reserve(cartan_idx.size());
  for (int ci : cartan_idx) {
    const auto& h = basis[ci].mat;
    Rat v(0);
    for (std::size_t a = 0; a < slots.size(); ++a) v += coords[a] * h.at(slots[a], slots[a]);
    vals.push_back(v);
  }
  return vals;
}

std::vector<Rat> SuperAlgebra::epsdelta_from_cartan_values(
    const std::vector<Rat>& hvals) const {
  if (static_cast<int>(hvals.size()) != cartan_dim())
    throw std::invalid_argument("cartan value length mismatch");
  std::vector<Rat> rhs = hvals;
  if (kind == AlgebraKind::SL) rhs.push_back(Rat(0));  // pin: last coordinate 0
  auto sol = epsdelta_solver_->solve(rhs);
  if (!sol) throw std::invalid_argument("no eps/delta representative");
  return *sol;
}

Rat SuperAlgebra::form(const std::vector<Rat>& x, const std::vector<Rat>& y) const {
  const auto& signs = roots.form_signs;
  if (x.size() != signs.size() || y.size() != signs.size())
    throw std::invalid_argument("form: coordinate length mismatch");
  Rat s(0);
  for (std::size_t a = 0; a < signs.size(); ++a) s += Rat(signs[a]) * x[a] * y[a];
  return s;
}

Rat SuperAlgebra::lambda_z(const std::vector<Rat>& epsdelta) const {
  const auto slots = coordinate_slots();
  if (epsdelta.size() != slots.size())
    throw std::invalid_argument("eps/delta coordinate length mismatch");
  Rat v(0);
  for (std::size_t a = 0; a < slots.size(); ++a)
    v += epsdelta[a] * z.at(slots[a], slots[a]);
  return v;
}

std::optional<std::vector<long>> SuperAlgebra::dominance_certificate(
    const std::vector<Rat>& epsdelta) const {
  std::vector<long> cert;
  for (const auto& s : ss.simple) {
    std::vector<Rat> alpha = rat_vec(s.alpha);
    Rat pairing = Rat(2) * form(epsdelta, alpha) / form(alpha, alpha);
    if (!rat_is_integer(pairing) || pairing < 0) return std::nullopt;
    cert.push_back(rat_to_long(pairing));
  }
  return cert;
}

std::shared_ptr<const ActingAlgebra> acting_from_elements(
    const std::string& name, const std::vector<AlgebraElement>& elems,
    const std::vector<int>& cartan,
    const std::vector<std::pair<int, int>>& even_chevalley, int z_index) {
  auto alg = std::make_shared<ActingAlgebra>();
  alg->name = name;
  alg->dim = static_cast<int>(elems.size());
  alg->cartan = cartan;
  alg->even_chevalley = even_chevalley;
  alg->z_index = z_index;
  for (const auto& e : elems) {
    alg->labels.push_back(e.label);
    alg->parity.push_back(e.parity);
    alg->zgrade.push_back(e.zgrade);
    alg->tri.push_back(e.tri);
    alg->tdeg.push_back(0);
  }

  const int vec_len = elems.empty() ? 0 : elems[0].mat.shape().size() * elems[0].mat.shape().size();
  Mat a(vec_len, alg->dim);
  for (int k = 0; k < alg->dim; ++k) {
    auto v = elems[k].mat.vectorized();
    for (int rc = 0; rc < vec_len; ++rc)
      if (v[rc] != 0) a.add_at(rc, k, v[rc]);
  }
  LinSolver solver(a);

  alg->bracket.assign(alg->dim, std::vector<SparseRow>(alg->dim));
  for (int i = 0; i < alg->dim; ++i)
    for (int j = 0; j < alg->dim; ++j) {
      SuperMatrix br = superbracket(elems[i].mat, elems[j].mat);
      auto sol = solver.solve(br.vectorized());
      if (!sol)
        throw std::runtime_error(name + ": basis not closed under superbracket at (" +
                                 elems[i].label + "," + elems[j].label + ")");
      alg->bracket[i][j] = sparse_from_dense(*sol);
    }

  alg->cartan_eigen.assign(alg->dim, std::vector<Rat>(cartan.size(), Rat(0)));
  for (int i = 0; i < alg->dim; ++i) {
    for (std::size_t k = 0; k < cartan.size(); ++k) {
      const SparseRow& br = alg->bracket[cartan[k]][i];
      if (br.empty()) continue;
      if (br.size() != 1 || br[0].first != i)
        throw std::runtime_error(name + ": basis element " + elems[i].label +
                                 " is not an ad-eigenvector of the Cartan basis");
      alg->cartan_eigen[i][k] = br[0].second;
    }
  }
  return alg;
}

void SuperAlgebra::finalize() {
  const int d = dim();
  const int vec_len = shape.size() * shape.size();

  // coordinate solver over the basis
  {
    Mat a(vec_len, d);
    for (int k = 0; k < d; ++k) {
      auto v = basis[k].mat.vectorized();
      for (int rc = 0; rc < vec_len; ++rc)
        if (v[rc] != 0) a.add_at(rc, k, v[rc]);
    }
    coord_solver_ = std::make_shared<LinSolver>(a);
  }
  z_coords = coords(z);

  // simple roots, literally as in the root system tables
  const int ed = epsdelta_dim();
  auto mkroot = [&](std::initializer_list<std::pair<int, long>> entries) {
    std::vector<long> r(ed, 0);
    for (auto [i, v] : entries) r[i] = v;
    return r;
  };
  roots.simple.clear();
  if (kind == AlgebraKind::SL) {
    for (int a = 0; a + 1 < m + n; ++a) roots.simple.push_back(mkroot({{a, 1}, {a + 1, -1}}));
    roots.form_signs.assign(m + n, 1);
    for (int a = m; a < m + n; ++a) roots.form_signs[a] = -1;
  } else {
    roots.simple.push_back(mkroot({{0, 1}, {1, -1}}));  // eps - delta_1
    for (int k = 1; k + 1 < m; ++k) roots.simple.push_back(mkroot({{k, 1}, {k + 1, -1}}));
    roots.simple.push_back(mkroot({{m - 1, 2}}));  // 2 delta_{m-1}
    roots.form_signs.assign(m, -1);
    roots.form_signs[0] = 1;
  }

  // positivity of each root: expand over Pi
  Mat pimat(ed, static_cast<int>(roots.simple.size()));
  for (std::size_t k = 0; k < roots.simple.size(); ++k)
    for (int a = 0; a < ed; ++a)
      if (roots.simple[k][a] != 0) pimat.add_at(a, static_cast<int>(k), Rat(roots.simple[k][a]));
  LinSolver pisolver(pimat);

  const auto slots = coordinate_slots();
  roots.pos_even.clear();
  roots.pos_odd.clear();
  roots.root_space.clear();
  for (int i = 0; i < d; ++i) {
    auto& el = basis[i];
    if (el.root.empty()) continue;  // Cartan
    auto coeffs = pisolver.solve(rat_vec(el.root));
    if (!coeffs) throw std::runtime_error("root outside the root lattice");
    bool pos = true, neg = true;
    for (const auto& c : *coeffs) {
      if (c < 0) pos = false;
      if (c > 0) neg = false;
    }
    if (pos == neg) throw std::runtime_error("root not comparable to zero");
    el.tri = pos ? 1 : -1;
    el.zgrade = el.parity == 0 ? 0 : el.tri;
    if (pos) {
      if (el.parity == 0)
        roots.pos_even.push_back(el.root);
      else
        roots.pos_odd.push_back(el.root);
    }
    roots.root_space[el.root] = i;

    // verify [h, x] = root(h) x for every Cartan basis element
    for (int ci : cartan_idx) {
      const auto& h = basis[ci].mat;
      Rat val(0);
      for (std::size_t a = 0; a < slots.size(); ++a)
        val += Rat(el.root[a]) * h.at(slots[a], slots[a]);
      if (!(superbracket(h, el.mat) == el.mat.scaled(val)))
        throw std::runtime_error("stored root vector fails [h,x] = root(h) x");
    }
  }
  auto root_sort = [](std::vector<std::vector<long>>& v) { std::sort(v.begin(), v.end()); };
  root_sort(roots.pos_even);
  root_sort(roots.pos_odd);

  // eps/delta representative solver: cartan evaluation rows (+ pin for sl)
  {
    const int rows = cartan_dim() + (kind == AlgebraKind::SL ? 1 : 0);
    Mat e(rows, ed);
    for (int k = 0; k < cartan_dim(); ++k) {
      const auto& h = basis[cartan_idx[k]].mat;
      for (int a = 0; a < ed; ++a) {
        Rat v = h.at(slots[a], slots[a]);
        if (v != 0) e.add_at(k, a, v);
      }
    }
    if (kind == AlgebraKind::SL) e.add_at(cartan_dim(), ed - 1, Rat(1));
    epsdelta_solver_ = std::make_shared<LinSolver>(e);
  }

  // full acting algebra
  {
    std::vector<std::pair<int, int>> chev;
    for (const auto& alpha : roots.pos_even) {
      // even simple = member of Pi
      if (std::find(roots.simple.begin(), roots.simple.end(), alpha) == roots.simple.end())
        continue;
      std::vector<long> neg(alpha.size());
      for (std::size_t a = 0; a < alpha.size(); ++a) neg[a] = -alpha[a];
      chev.push_back({roots.root_space.at(alpha), roots.root_space.at(neg)});
    }
    int zi = -1;
    for (int i = 0; i < d; ++i)
      if (basis[i].mat == z) zi = i;
    acting = acting_from_elements(descriptor(), basis, cartan_idx, chev, zi);
  }

  // even part g_0bar
  {
    std::vector<AlgebraElement> ev;
    even_to_full.clear();
    std::vector<int> ev_cartan;
    std::vector<std::pair<int, int>> ev_chev;
    std::map<int, int> to_even;
    for (int i = 0; i < d; ++i)
      if (basis[i].parity == 0) {
        to_even[i] = static_cast<int>(ev.size());
        ev.push_back(basis[i]);
        even_to_full.push_back(i);
      }
    for (int ci : cartan_idx) ev_cartan.push_back(to_even.at(ci));
    for (auto [e, f] : acting->even_chevalley) ev_chev.push_back({to_even.at(e), to_even.at(f)});
    int zi = -1;
    for (std::size_t i = 0; i < ev.size(); ++i)
      if (ev[i].mat == z) zi = static_cast<int>(i);
    acting_even =
        acting_from_elements(descriptor() + "_0", ev, ev_cartan, ev_chev, zi);
  }

  // semisimple part g_ss: negative root vectors, coroots, positive root vectors
  {
    std::vector<SsPosRoot> pos;
    for (const auto& alpha : roots.pos_even) {
      SsPosRoot pr;
      pr.alpha = alpha;
      auto coeffs = pisolver.solve(rat_vec(alpha));
      // height over the *ss* simple roots equals height over Pi for even roots
      pr.height = height_of(*coeffs);
      pos.push_back(pr);
    }
    std::sort(pos.begin(), pos.end(), [](const SsPosRoot& x, const SsPosRoot& y) {
      return std::tie(x.height, x.alpha) < std::tie(y.height, y.alpha);
    });

    std::vector<AlgebraElement> els;
    auto add_root_vector = [&](const std::vector<long>& alpha, int sign) {
      std::vector<long> key(alpha.size());
      for (std::size_t a = 0; a < alpha.size(); ++a) key[a] = sign * alpha[a];
      const auto& src = basis[roots.root_space.at(key)];
      els.push_back(src);
      return static_cast<int>(els.size()) - 1;
    };
    for (auto& pr : pos) pr.f = add_root_vector(pr.alpha, -1);

    ss.simple.clear();
    std::vector<int> ss_cartan;
    for (const auto& alpha : roots.simple) {
      if (std::find(roots.pos_even.begin(), roots.pos_even.end(), alpha) ==
          roots.pos_even.end())
        continue;  // skip the odd simple root
      SsSimple s;
      s.alpha = alpha;
      std::vector<long> neg(alpha.size());
      for (std::size_t a = 0; a < alpha.size(); ++a) neg[a] = -alpha[a];
      const auto& evec = basis[roots.root_space.at(alpha)];
      const auto& fvec = basis[roots.root_space.at(neg)];
      AlgebraElement h;
      h.mat = superbracket(evec.mat, fvec.mat);
      h.label = "h[" + evec.label + "]";
      h.parity = 0;
      h.zgrade = 0;
      h.tri = 0;
      s.h = static_cast<int>(els.size());
      els.push_back(h);
      ss_cartan.push_back(s.h);
      ss.simple.push_back(s);
    }
    for (auto& pr : pos) pr.e = add_root_vector(pr.alpha, 1);

    for (auto& s : ss.simple) {
      for (std::size_t k = 0; k < pos.size(); ++k)
        if (pos[k].alpha == s.alpha) {
          s.e = pos[k].e;
          s.f = pos[k].f;
        }
    }
    ss.pos_roots = pos;
    ss.cartan_mats.clear();
    for (int hi : ss_cartan) ss.cartan_mats.push_back(els[hi].mat);
    std::vector<std::pair<int, int>> ss_chev;
    for (const auto& s : ss.simple) ss_chev.push_back({s.e, s.f});
    ss.acting = acting_from_elements(descriptor() + "_ss", els, ss_cartan, ss_chev, -1);

    // splitter: even element -> (ss coordinates, z coefficient)
    Mat a(vec_len, static_cast<int>(els.size()) + 1);
    for (std::size_t k = 0; k < els.size(); ++k) {
      auto v = els[k].mat.vectorized();
      for (int rc = 0; rc < vec_len; ++rc)
        if (v[rc] != 0) a.add_at(rc, static_cast<int>(k), v[rc]);
    }
    {
      auto v = z.vectorized();
      for (int rc = 0; rc < vec_len; ++rc)
        if (v[rc] != 0) a.add_at(rc, static_cast<int>(els.size()), v[rc]);
    }
    ss.even_split = std::make_shared<LinSolver>(a);
  }
}

SuperAlgebra::EvenSplit SuperAlgebra::split_even(const SuperMatrix& x) const {
  auto sol = ss.even_split->solve(x.vectorized());
  if (!sol) throw std::invalid_argument("element outside g_ss + C z");
  EvenSplit out;
  out.ss_coords.assign(sol->begin(), sol->end() - 1);
  out.z_coeff = sol->back();
  return out;
}

SuperAlgebra build_sl(int m, int n) {
  if (m < 1 || n < 1) throw std::invalid_argument("build_sl: need m >= 1 and n >= 1");
  if (m == n)
    throw std::invalid_argument("build_sl: m = n gives A(n,n), out of scope");
  SuperAlgebra g;
  g.kind = AlgebraKind::SL;
  g.m = m;
  g.n = n;
  g.shape = BlockShape{m, n};
  const int N = m + n;

  for (int a = 0; a < N; ++a)
    for (int b = 0; b < N; ++b) {
      if (a == b) continue;
      AlgebraElement el;
      el.mat = SuperMatrix::unit(g.shape, a, b);
      el.label = pos_label("E", a, b);
      el.parity = (g.shape.index_parity(a) + g.shape.index_parity(b)) % 2;
      el.root.assign(N, 0);
      el.root[a] = 1;
      el.root[b] = -1;
      g.basis.push_back(el);
    }
  for (int a = 0; a + 1 < N; ++a) {
    // supertraceless: E_aa - (-1)^{[a]+[a+1]} E_{a+1,a+1}
    int sign = g.shape.index_parity(a) == g.shape.index_parity(a + 1) ? 1 : -1;
    AlgebraElement el;
    el.mat = SuperMatrix::unit(g.shape, a, a) -
             SuperMatrix::unit(g.shape, a + 1, a + 1).scaled(Rat(sign));
    el.label = "h" + std::to_string(a + 1);
    el.parity = 0;
    g.cartan_idx.push_back(static_cast<int>(g.basis.size()));
    g.basis.push_back(el);
  }

  // z = diag(n,...,n | m,...,m)
  Mat zm(N, N);
  for (int a = 0; a < m; ++a) zm.set(a, a, Rat(n));
  for (int a = m; a < N; ++a) zm.set(a, a, Rat(m));
  g.z = SuperMatrix(g.shape, zm);

  g.finalize();
  return g;
}

SuperAlgebra build_c(int m) {
  if (m < 3) throw std::invalid_argument("build_c: need m >= 3");
  SuperAlgebra g;
  g.kind = AlgebraKind::C;
  g.m = m;
  g.n = 0;
  const int M1 = m - 1;
  g.shape = BlockShape{2, 2 * M1};
  const int N = 2 * m;

  // the preserved form: B = diag(G, J)
  Mat bform(N, N);
  bform.set(0, 1, Rat(1));
  bform.set(1, 0, Rat(1));
  for (int k = 0; k < M1; ++k) {
    bform.set(2 + k, 2 + M1 + k, Rat(1));
    bform.set(2 + M1 + k, 2 + k, Rat(-1));
  }
  const SuperMatrix b(g.shape, bform);

  // weight of each matrix slot in eps/delta coordinates
  std::vector<std::vector<long>> slotw(N, std::vector<long>(m, 0));
  slotw[0][0] = 1;
  slotw[1][0] = -1;
  for (int k = 0; k < M1; ++k) {
    slotw[2 + k][1 + k] = 1;
    slotw[2 + M1 + k][1 + k] = -1;
  }

  // group positions by weight; the constraint is block-diagonal across groups
  std::map<std::vector<long>, std::vector<std::pair<int, int>>> groups;
  for (int a = 0; a < N; ++a)
    for (int bcol = 0; bcol < N; ++bcol) {
      std::vector<long> w(m, 0);
      for (int c = 0; c < m; ++c) w[c] = slotw[a][c] - slotw[bcol][c];
      groups[w].push_back({a, bcol});
    }

  auto constraint_kernel = [&](const std::vector<std::pair<int, int>>& positions) {
    // kernel of X -> X^st B + B X restricted to the given support
    Mat cmat(N * N, static_cast<int>(positions.size()));
    for (std::size_t col = 0; col < positions.size(); ++col) {
      auto [a, bcol] = positions[col];
      SuperMatrix x = SuperMatrix::unit(g.shape, a, bcol);
      SuperMatrix out = x.supertranspose() * b + b * x;
      auto v = out.vectorized();
      for (int rc = 0; rc < N * N; ++rc)
        if (v[rc] != 0) cmat.add_at(rc, static_cast<int>(col), v[rc]);
    }
    return kernel(cmat);
  };

  for (const auto& [w, positions] : groups) {
    Subspace ker = constraint_kernel(positions);
    for (int i = 0; i < ker.dim(); ++i) {
      auto coeffs = dense_from_sparse(ker.basis().row(i), static_cast<int>(positions.size()));
      Mat entries(N, N);
      for (std::size_t c = 0; c < positions.size(); ++c)
        if (coeffs[c] != 0) entries.set(positions[c].first, positions[c].second, coeffs[c]);
      AlgebraElement el;
      el.mat = SuperMatrix(g.shape, entries);
      el.parity = el.mat.parity_bit();
      bool is_cartan = std::all_of(w.begin(), w.end(), [](long x) { return x == 0; });
      if (is_cartan) {
        el.label = "h" + std::to_string(g.cartan_idx.size() + 1);
        g.cartan_idx.push_back(static_cast<int>(g.basis.size()));
      } else {
        el.root = w;
        el.label = "x[";
        for (std::size_t c = 0; c < w.size(); ++c)
          el.label += (c ? "," : "") + std::to_string(w[c]);
        el.label += "]";
      }
      g.basis.push_back(el);
    }
  }

  // z spans the so(2) block; ad(z) acts by +1 on g_{+1}
  Mat zm(N, N);
  zm.set(0, 0, Rat(1));
  zm.set(1, 1, Rat(-1));
  g.z = SuperMatrix(g.shape, zm);

  g.finalize();
  return g;
}

const RootDatum& root_datum(const SuperAlgebra& a) { return a.roots; }

SuperMatrix z_center(const SuperAlgebra& a) { return a.z; }

Triangular triangular(const SuperAlgebra& a) {
  const int d = a.dim();
  auto coordinate_subspace = [&](auto pred) {
    std::vector<std::vector<Rat>> vs;
    for (int i = 0; i < d; ++i)
      if (pred(a.basis[i])) {
        std::vector<Rat> e(d, Rat(0));
        e[i] = 1;
        vs.push_back(e);
      }
    return Subspace::span_vectors(d, vs);
  };
  Triangular t{
      coordinate_subspace([](const AlgebraElement& e) { return e.tri < 0; }),
      coordinate_subspace([](const AlgebraElement& e) { return e.tri == 0; }),
      coordinate_subspace([](const AlgebraElement& e) { return e.tri > 0; }),
      coordinate_subspace([](const AlgebraElement& e) { return e.zgrade < 0; }),
      coordinate_subspace([](const AlgebraElement& e) { return e.zgrade == 0; }),
      coordinate_subspace([](const AlgebraElement& e) { return e.zgrade > 0; })};
  return t;
}

}  // namespace superloop
