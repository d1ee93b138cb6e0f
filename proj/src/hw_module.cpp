#include "superloop/hw_module.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace superloop {

namespace {

using Monomial = std::vector<int>;            // exponents over the positive roots
using Element = std::map<Monomial, Rat>;      // PBW combination

void accumulate(Element& dst, const Monomial& m, const Rat& c) {
  if (c == 0) return;
  auto [it, inserted] = dst.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) dst.erase(it);
  }
}

// Straightening context for one truncated Verma module.
struct Verma {
  const SuperAlgebra& g;
  const ActingAlgebra& A;
  std::vector<Rat> lamvals;        // lambda on the ss Cartan basis
  long depth_cap;
  std::vector<long> heights;       // per positive root slot
  std::vector<int> f_of_slot;      // slot -> ss basis index of f_beta
  std::vector<int> slot_of_f;      // ss basis index -> slot or -1
  std::vector<int> cartan_pos;     // ss basis index -> cartan position or -1

  explicit Verma(const SuperAlgebra& g_, std::vector<Rat> lam, long cap)
      : g(g_), A(*g_.ss.acting), lamvals(std::move(lam)), depth_cap(cap) {
    const auto& pos = g.ss.pos_roots;
    slot_of_f.assign(A.dim, -1);
    cartan_pos.assign(A.dim, -1);
    for (std::size_t r = 0; r < pos.size(); ++r) {
      heights.push_back(pos[r].height);
      f_of_slot.push_back(pos[r].f);
      slot_of_f[pos[r].f] = static_cast<int>(r);
    }
    for (std::size_t k = 0; k < A.cartan.size(); ++k) cartan_pos[A.cartan[k]] = static_cast<int>(k);
  }

  long depth(const Monomial& m) const {
    long d = 0;
    for (std::size_t r = 0; r < m.size(); ++r) d += m[r] * heights[r];
    return d;
  }

  int first_slot(const Monomial& m) const {
    for (std::size_t r = 0; r < m.size(); ++r)
      if (m[r] > 0) return static_cast<int>(r);
    return -1;
  }

  Rat weight_value(const Monomial& m, int k) const {
    Rat v = lamvals[k];
    for (std::size_t r = 0; r < m.size(); ++r)
      if (m[r]) v += Rat(m[r]) * A.cartan_eigen[f_of_slot[r]][k];
    return v;
  }

  // f_r * m, straightened into PBW order; drops monomials past the cap.
  Element insert_f(int r, const Monomial& m) {
    Element out;
    const int first = first_slot(m);
    if (first < 0 || r <= first) {
      Monomial m2 = m;
      m2[r] += 1;
      if (depth(m2) <= depth_cap) accumulate(out, m2, Rat(1));
      return out;
    }
    Monomial rest = m;
    rest[first] -= 1;
    // f_r f_first = f_first f_r + [f_r, f_first]
    Element sub = insert_f(r, rest);
    for (const auto& [m2, c] : sub) {
      Monomial m3 = m2;
      m3[first] += 1;
      if (depth(m3) <= depth_cap) accumulate(out, m3, c);
    }
    for (const auto& [k, c] : A.bracket[f_of_slot[r]][f_of_slot[first]]) {
      const int rk = slot_of_f[k];
      if (rk < 0) throw std::runtime_error("verma: [f,f] escaped the lowering part");
      Element sub2 = insert_f(rk, rest);
      for (const auto& [m2, c2] : sub2) accumulate(out, m2, c * c2);
    }
    return out;
  }

  // x * m for any ss basis element x.
  Element apply(int x, const Monomial& m) {
    Element out;
    if (cartan_pos[x] >= 0) {
      accumulate(out, m, weight_value(m, cartan_pos[x]));
      return out;
    }
    if (A.tri[x] < 0) return insert_f(slot_of_f[x], m);

    // raising vector
    const int first = first_slot(m);
    if (first < 0) return out;  // e . v_lambda = 0
    Monomial rest = m;
    rest[first] -= 1;
    // x f_first = f_first x + [x, f_first]
    Element sub = apply(x, rest);
    for (const auto& [m2, c] : sub) {
      Element lifted = insert_f(first, m2);
      for (const auto& [m3, c3] : lifted) accumulate(out, m3, c * c3);
    }
    for (const auto& [k, c] : A.bracket[x][f_of_slot[first]]) {
      Element sub2 = apply(k, rest);
      for (const auto& [m2, c2] : sub2) accumulate(out, m2, c * c2);
    }
    return out;
  }
};

void enumerate_monomials(const std::vector<long>& heights, long cap, Monomial& cur,
                         std::size_t slot, std::map<Monomial, int>& out) {
  if (slot == heights.size()) {
    out.emplace(cur, 0);
    return;
  }
  long used = 0;
  for (std::size_t r = 0; r < slot; ++r) used += cur[r] * heights[r];
  for (int k = 0; used + k * heights[slot] <= cap; ++k) {
    cur[slot] = k;
    enumerate_monomials(heights, cap, cur, slot + 1, out);
  }
  cur[slot] = 0;
}

}  // namespace

std::vector<Rat> ss_cartan_values(const SuperAlgebra& g,
                                  const std::vector<Rat>& lam_epsdelta) {
  const auto slots = g.coordinate_slots();
  if (lam_epsdelta.size() != slots.size())
    throw std::invalid_argument("weight coordinate length mismatch");
  std::vector<Rat> vals;
  for (const auto& h : g.ss.cartan_mats) {
    Rat v(0);
    for (std::size_t a = 0; a < slots.size(); ++a)
      v += lam_epsdelta[a] * h.at(slots[a], slots[a]);
    vals.push_back(v);
  }
  return vals;
}

long verma_depth_bound(const SuperAlgebra& g, const std::vector<Rat>& lam_epsdelta) {
  // antidominant representative of the Weyl orbit
  std::vector<Rat> mu = lam_epsdelta;
  while (true) {
    bool moved = false;
    for (const auto& s : g.ss.simple) {
      std::vector<Rat> alpha(s.alpha.begin(), s.alpha.end());
      Rat pairing = Rat(2) * g.form(mu, alpha) / g.form(alpha, alpha);
      if (pairing > 0) {
        for (std::size_t a = 0; a < mu.size(); ++a) mu[a] -= pairing * alpha[a];
        moved = true;
      }
    }
    if (!moved) break;
  }
  // expand lam - mu over the ss simple roots and sum the coefficients
  const int ed = g.epsdelta_dim();
  Mat cols(ed, static_cast<int>(g.ss.simple.size()));
  for (std::size_t k = 0; k < g.ss.simple.size(); ++k)
    for (int a = 0; a < ed; ++a)
      if (g.ss.simple[k].alpha[a] != 0)
        cols.add_at(a, static_cast<int>(k), Rat(g.ss.simple[k].alpha[a]));
  std::vector<Rat> rhs(ed);
  for (int a = 0; a < ed; ++a) rhs[a] = lam_epsdelta[a] - mu[a];
  auto coeffs = solve(cols, rhs);
  if (!coeffs) throw std::runtime_error("lam - w0(lam) not in the ss root lattice");
  Rat h(0);
  for (const auto& c : *coeffs) h += c;
  return rat_to_long(h);
}

WeightModule truncated_verma(const SuperAlgebra& g,
                             const std::vector<Rat>& lam_epsdelta, long depth) {
  Verma ctx(g, ss_cartan_values(g, lam_epsdelta), depth);

  std::map<Monomial, int> index;
  {
    Monomial cur(g.ss.pos_roots.size(), 0);
    enumerate_monomials(ctx.heights, depth, cur, 0, index);
  }
  int next = 0;
  for (auto& [m, idx] : index) idx = next++;

  WeightModule out;
  out.alg = g.ss.acting;
  out.dim = next;
  out.weights.resize(next);
  out.parity.assign(next, 0);
  out.labels.resize(next);
  for (const auto& [m, idx] : index) {
    Weight w;
    for (std::size_t k = 0; k < ctx.A.cartan.size(); ++k)
      w.hvals.push_back(ctx.weight_value(m, static_cast<int>(k)));
    out.weights[idx] = w;
    std::string lbl = "v";
    for (std::size_t r = 0; r < m.size(); ++r)
      if (m[r]) lbl += " f" + std::to_string(r) + "^" + std::to_string(m[r]);
    out.labels[idx] = lbl;
    if (ctx.first_slot(m) < 0) out.top = idx;
  }
  for (int x = 0; x < ctx.A.dim; ++x) {
    Mat a(next, next);
    for (const auto& [m, col] : index) {
      Element e = ctx.apply(x, m);
      for (const auto& [m2, c] : e) {
        auto it = index.find(m2);
        if (it == index.end()) continue;  // beyond the truncation depth
        a.add_at(it->second, col, c);
      }
    }
    out.action.push_back(a);
  }
  return out;
}

WeightModule hw_module_ss(const SuperAlgebra& g, const std::vector<Rat>& lam_epsdelta) {
  if (!g.dominance_certificate(lam_epsdelta))
    throw std::invalid_argument("hw_module_ss: weight is not dominant integral");
  const long cap = verma_depth_bound(g, lam_epsdelta) + 1;
  WeightModule verma = truncated_verma(g, lam_epsdelta, cap);
  return irreducible_quotient(verma, verma.top);
}

WeightModule hw_module_even(const SuperAlgebra& g, const std::vector<Rat>& lam_epsdelta) {
  WeightModule ss = hw_module_ss(g, lam_epsdelta);
  const Rat zval = g.lambda_z(lam_epsdelta);

  WeightModule out;
  out.alg = g.acting_even;
  out.dim = ss.dim;
  out.parity = ss.parity;
  out.labels = ss.labels;
  out.top = ss.top;
  for (int i = 0; i < g.acting_even->dim; ++i) {
    const auto& el = g.basis[g.even_to_full[i]];
    auto split = g.split_even(el.mat);
    Mat a(ss.dim, ss.dim);
    for (std::size_t k = 0; k < split.ss_coords.size(); ++k)
      if (split.ss_coords[k] != 0) a = a + ss.action[k].scaled(split.ss_coords[k]);
    if (split.z_coeff != 0) a = a + Mat::identity(ss.dim).scaled(split.z_coeff * zval);
    out.action.push_back(a);
  }
  // weight labels along the full Cartan basis, read off the diagonal actions
  out.weights.assign(ss.dim, Weight{});
  for (int v = 0; v < ss.dim; ++v)
    out.weights[v].hvals.assign(g.acting_even->cartan.size(), Rat(0));
  for (std::size_t k = 0; k < g.acting_even->cartan.size(); ++k) {
    const Mat& h = out.action[g.acting_even->cartan[k]];
    for (int v = 0; v < ss.dim; ++v) out.weights[v].hvals[k] = h.at(v, v);
  }
  return out;
}

}  // namespace superloop
