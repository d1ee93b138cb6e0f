#include "superloop/weight_module.hpp"

#include <algorithm>
#include <stdexcept>

namespace superloop {

Mat WeightModule::act_combination(const std::vector<Rat>& coeffs) const {
  if (static_cast<int>(coeffs.size()) != alg->dim)
    throw std::invalid_argument("act_combination: coefficient length mismatch");
  Mat out(dim, dim);
  for (int i = 0; i < alg->dim; ++i)
    if (coeffs[i] != 0) out = out + action[i].scaled(coeffs[i]);
  return out;
}

Mat WeightModule::act_combination(const SparseRow& coeffs) const {
  Mat out(dim, dim);
  for (const auto& [i, c] : coeffs) out = out + action[i].scaled(c);
  return out;
}

Mat super_commutator(const Mat& a, const Mat& b, int pa, int pb) {
  Mat ab = a * b;
  Mat ba = b * a;
  return (pa && pb) ? ab + ba : ab - ba;
}

void assert_module_sound(const WeightModule& m, bool all_pairs) {
  const auto& A = *m.alg;
  for (std::size_t k = 0; k < A.cartan.size(); ++k) {
    const Mat& h = m.action[A.cartan[k]];
    for (int i = 0; i < m.dim; ++i) {
      for (const auto& [j, v] : h.row(i)) {
        (void)v;
        if (i != j) throw std::runtime_error("Cartan action not diagonal");
      }
      if (m.weights[i].hvals[k] != h.at(i, i))
        throw std::runtime_error("Cartan eigenvalue disagrees with weight label");
    }
  }
  for (int x = 0; x < A.dim; ++x)
    for (int i = 0; i < m.dim; ++i)
      for (const auto& [j, v] : m.action[x].row(i)) {
        (void)v;
        if ((m.parity[j] + A.parity[x]) % 2 != m.parity[i])
          throw std::runtime_error("action violates the Z2 grading");
      }

  std::vector<std::pair<int, int>> pairs;
  if (all_pairs) {
    for (int i = 0; i < A.dim; ++i)
      for (int j = 0; j < A.dim; ++j) pairs.push_back({i, j});
  } else {
    std::vector<int> gens = A.cartan;
    for (auto [e, f] : A.even_chevalley) {
      gens.push_back(e);
      gens.push_back(f);
    }
    for (int i : gens)
      for (int j : gens) pairs.push_back({i, j});
  }
  for (auto [i, j] : pairs) {
    Mat expect = m.act_combination(A.bracket[i][j]);
    Mat got = super_commutator(m.action[i], m.action[j], A.parity[i], A.parity[j]);
    if (!(expect == got))
      throw std::runtime_error("action of [" + A.labels[i] + "," + A.labels[j] +
                               "] differs from the supercommutator of actions");
  }
}

Subspace submodule_closure(const WeightModule& m,
                           const std::vector<std::vector<Rat>>& seeds) {
  Subspace w = Subspace::span_vectors(m.dim, seeds);
  while (true) {
    Mat rows = w.basis();
    const int before = w.dim();
    for (const auto& a : m.action) {
      for (int i = 0; i < w.dim(); ++i) {
        auto img = a.apply(dense_from_sparse(w.basis().row(i), m.dim));
        if (!vec_is_zero(img)) rows.append_row(sparse_from_dense(img));
      }
    }
    Subspace next = Subspace::span_rows(rows);
    if (next.dim() == before) return next;
    w = next;
  }
}

Subspace submodule_closure(const WeightModule& m, int basis_index) {
  std::vector<Rat> e(m.dim, Rat(0));
  e[basis_index] = 1;
  return submodule_closure(m, {e});
}

std::map<Weight, long> weight_multiplicities(const WeightModule& m) {
  std::map<Weight, long> mult;
  for (const auto& w : m.weights) ++mult[w];
  return mult;
}

namespace {

bool nilpotent(const Mat& a) {
  // image chain Im(a) >= Im(a^2) >= ...; stabilizing nonzero means not nilpotent
  Mat p = a;
  int prev = -1;
  while (true) {
    if (p.is_zero()) return true;
    int r = rank(p);
    if (r == prev) return false;
    prev = r;
    p = a * p;
  }
}

}  // namespace

bool is_integrable(const WeightModule& m) {
  for (auto [e, f] : m.alg->even_chevalley) {
    if (!nilpotent(m.action[e])) return false;
    if (!nilpotent(m.action[f])) return false;
  }
  return true;
}

bool is_irreducible(const WeightModule& m) {
  if (m.dim == 0) throw std::invalid_argument("is_irreducible on the zero module");
  if (m.dim == 1) return true;

  auto mult = weight_multiplicities(m);
  // definitive path: cyclicity certificate through a multiplicity-one line
  for (int i = 0; i < m.dim; ++i) {
    if (mult[m.weights[i]] != 1) continue;
    if (submodule_closure(m, i).dim() != m.dim) return false;
    std::vector<Rat> e(m.dim, Rat(0));
    e[i] = 1;
    Subspace ambient = kernel(Mat::from_rows({e}));
    return largest_invariant_subspace(ambient, m.action).dim() == 0;
  }
  // no multiplicity-one weight: the closure scan still certifies reducibility
  for (int i = 0; i < m.dim; ++i)
    if (submodule_closure(m, i).dim() != m.dim) return false;
  throw std::runtime_error(
      "is_irreducible: undecided (no multiplicity-one weight and every basis "
      "closure is full)");
}

QuotientResult quotient_by(const WeightModule& m, const Subspace& n) {
  if (n.ambient() != m.dim) throw std::invalid_argument("quotient_by: wrong ambient");
  for (const auto& a : m.action)
    for (int i = 0; i < n.dim(); ++i)
      if (!n.contains(a.apply(dense_from_sparse(n.basis().row(i), m.dim))))
        throw std::invalid_argument("quotient_by: subspace is not action-invariant");

  std::vector<int> pivots;
  for (int i = 0; i < n.dim(); ++i) pivots.push_back(n.basis().row(i).front().first);
  std::vector<bool> is_piv(m.dim, false);
  for (int p : pivots) is_piv[p] = true;
  std::vector<int> kept;
  for (int j = 0; j < m.dim; ++j)
    if (!is_piv[j]) kept.push_back(j);
  const int q = static_cast<int>(kept.size());
  std::vector<int> kept_pos(m.dim, -1);
  for (int k = 0; k < q; ++k) kept_pos[kept[k]] = k;

  // projection: reduce mod N, then read the kept coordinates
  Mat proj(q, m.dim);
  for (int k = 0; k < q; ++k) proj.set(k, kept[k], Rat(1));
  for (int i = 0; i < n.dim(); ++i) {
    const auto& row = n.basis().row(i);
    for (const auto& [j, v] : row) {
      if (j == pivots[i]) continue;
      // e_{pivot} == -(non-pivot part of the row) mod N
      proj.add_at(kept_pos[j], pivots[i], -v);
    }
  }

  QuotientResult out;
  out.projection = proj;
  WeightModule& w = out.module;
  w.alg = m.alg;
  w.dim = q;
  for (int k = 0; k < q; ++k) {
    w.weights.push_back(m.weights[kept[k]]);
    w.parity.push_back(m.parity[kept[k]]);
    if (!m.labels.empty()) w.labels.push_back(m.labels[kept[k]]);
  }
  Mat lift(m.dim, q);
  for (int k = 0; k < q; ++k) lift.set(kept[k], k, Rat(1));
  for (const auto& a : m.action) w.action.push_back(proj * a * lift);
  if (m.top >= 0 && kept_pos[m.top] >= 0) w.top = kept_pos[m.top];
  return out;
}

WeightModule irreducible_quotient(const WeightModule& m, int v) {
  if (v < 0 || v >= m.dim) throw std::invalid_argument("irreducible_quotient: bad index");
  auto mult = weight_multiplicities(m);
  if (mult[m.weights[v]] != 1)
    throw std::invalid_argument(
        "irreducible_quotient: generator weight has multiplicity > 1");

  Subspace closure = submodule_closure(m, v);
  if (closure.dim() != m.dim) {
    std::string msg = "irreducible_quotient: v is not cyclic; deficient weight spaces:";
    for (const auto& [wt, cnt] : mult) {
      std::vector<std::vector<Rat>> vs;
      for (int i = 0; i < closure.dim(); ++i) {
        auto row = dense_from_sparse(closure.basis().row(i), m.dim);
        std::vector<Rat> p(m.dim, Rat(0));
        bool nz = false;
        for (int j = 0; j < m.dim; ++j)
          if (m.weights[j] == wt && row[j] != 0) {
            p[j] = row[j];
            nz = true;
          }
        if (nz) vs.push_back(p);
      }
      long got = Subspace::span_vectors(m.dim, vs).dim();
      if (got < cnt)
        msg += " " + wt.str() + " (" + std::to_string(got) + "/" + std::to_string(cnt) + ")";
    }
    throw std::runtime_error(msg);
  }

  std::vector<Rat> e(m.dim, Rat(0));
  e[v] = 1;
  Subspace ambient = kernel(Mat::from_rows({e}));
  Subspace n = largest_invariant_subspace(ambient, m.action);
  QuotientResult q = quotient_by(m, n);
  {
    std::vector<Rat> img = q.projection.apply(e);
    for (int k = 0; k < q.module.dim; ++k)
      if (img[k] != 0) {
        q.module.top = k;
        break;
      }
  }
  if (!is_irreducible(q.module))
    throw std::runtime_error("irreducible_quotient: certification failed");
  return q.module;
}

int TensorShape::total() const {
  int t = 1;
  for (int d : dims) t *= d;
  return t;
}

int TensorShape::compose(const std::vector<int>& tuple) const {
  int idx = 0;
  for (std::size_t s = 0; s < dims.size(); ++s) idx = idx * dims[s] + tuple[s];
  return idx;
}

std::vector<int> TensorShape::decompose(int index) const {
  std::vector<int> tuple(dims.size());
  for (int s = static_cast<int>(dims.size()) - 1; s >= 0; --s) {
    tuple[s] = index % dims[s];
    index /= dims[s];
  }
  return tuple;
}

int TensorShape::sign_exponent(const std::vector<int>& tuple, int slot) const {
  int e = 0;
  for (int s = 0; s < slot; ++s) e += parities[s][tuple[s]];
  return e;
}

Mat TensorShape::embed(const Mat& op, int slot, int op_parity) const {
  const int n = total();
  std::vector<std::vector<std::pair<int, Rat>>> bycol(op.cols());
  for (int r = 0; r < op.rows(); ++r)
    for (const auto& [c, v] : op.row(r)) bycol[c].push_back({r, v});
  Mat out(n, n);
  for (int col = 0; col < n; ++col) {
    std::vector<int> tuple = decompose(col);
    const int sgn = op_parity ? (sign_exponent(tuple, slot) % 2) : 0;
    for (const auto& [w, c] : bycol[tuple[slot]]) {
      std::vector<int> t2 = tuple;
      t2[slot] = w;
      out.add_at(compose(t2), col, sgn ? -c : c);
    }
  }
  return out;
}

WeightModule tensor(const std::vector<const WeightModule*>& factors) {
  if (factors.empty()) throw std::invalid_argument("tensor: no factors");
  auto alg = factors[0]->alg;
  for (const auto* f : factors)
    if (f->alg != alg) throw std::invalid_argument("tensor: mismatched acting algebras");

  TensorShape shape;
  for (const auto* f : factors) {
    shape.dims.push_back(f->dim);
    shape.parities.push_back(f->parity);
  }
  const int n = shape.total();

  WeightModule out;
  out.alg = alg;
  out.dim = n;
  out.weights.resize(n);
  out.parity.resize(n);
  for (int i = 0; i < n; ++i) {
    auto tuple = shape.decompose(i);
    Weight w;
    w.hvals.assign(alg->cartan.size(), Rat(0));
    int par = 0;
    for (std::size_t s = 0; s < factors.size(); ++s) {
      const auto& ws = factors[s]->weights[tuple[s]].hvals;
      for (std::size_t k = 0; k < w.hvals.size(); ++k) w.hvals[k] += ws[k];
      par += factors[s]->parity[tuple[s]];
    }
    out.weights[i] = w;
    out.parity[i] = par % 2;
  }
  for (int x = 0; x < alg->dim; ++x) {
    Mat a(n, n);
    for (std::size_t s = 0; s < factors.size(); ++s)
      a = a + shape.embed(factors[s]->action[x], static_cast<int>(s), alg->parity[x]);
    out.action.push_back(a);
  }
  bool tops = true;
  for (const auto* f : factors) tops = tops && f->top >= 0;
  if (tops) {
    std::vector<int> tuple;
    for (const auto* f : factors) tuple.push_back(f->top);
    out.top = shape.compose(tuple);
  }
  return out;
}

}  // namespace superloop
