#include "superloop/loop.hpp"

#include <algorithm>
#include <stdexcept>

#include "superloop/hw_module.hpp"

namespace superloop {

SparseRow QuotientAlgebra::reduce_element(int base_idx, long n) const {
  SparseRow out;
  std::vector<Rat> red = ideal.reduce_power(n);
  for (long s = 0; s < ideal.theta(); ++s)
    if (red[s] != 0) out.push_back({index_of(base_idx, s), red[s]});
  return out;
}

SparseRow QuotientAlgebra::z_at(long n) const {
  std::vector<Rat> red = ideal.reduce_power(n);
  SparseRow out;
  for (int i = 0; i < base->dim(); ++i) {
    if (base->z_coords[i] == 0) continue;
    for (long s = 0; s < ideal.theta(); ++s)
      if (red[s] != 0) out.push_back({index_of(i, s), base->z_coords[i] * red[s]});
  }
  std::sort(out.begin(), out.end());
  return out;
}

SparseRow QuotientAlgebra::cartan_at(int k, long n) const {
  return reduce_element(base->cartan_idx[k], n);
}

std::vector<std::vector<Rat>> QuotientAlgebra::crt_coefficients() const {
  if (!ideal.is_radical())
    throw std::invalid_argument("crt_coefficients: ideal is not radical");
  std::vector<std::vector<Rat>> crt;
  for (long s = 0; s < ideal.theta(); ++s) {
    std::vector<Rat> row;
    for (const auto& a : ideal.points()) row.push_back(rat_pow(a, s));
    crt.push_back(row);
  }
  return crt;
}

QuotientAlgebra quotient_algebra(std::shared_ptr<const SuperAlgebra> base, IdealSpec ideal) {
  QuotientAlgebra q{base, std::move(ideal), nullptr};
  const auto& B = *base->acting;
  const int th = static_cast<int>(q.ideal.theta());
  auto alg = std::make_shared<ActingAlgebra>();
  alg->name = base->descriptor() + " (x) L/" + q.ideal.str();
  alg->dim = B.dim * th;
  for (int i = 0; i < B.dim; ++i)
    for (int s = 0; s < th; ++s) {
      alg->labels.push_back(B.labels[i] + (s ? "*t^" + std::to_string(s) : ""));
      alg->parity.push_back(B.parity[i]);
      alg->zgrade.push_back(B.zgrade[i]);
      alg->tri.push_back(B.tri[i]);
      alg->tdeg.push_back(s);
    }

  // brackets: [x_i t^a, x_j t^b] = [x_i, x_j] (x) (t^{a+b} mod P)
  std::vector<std::vector<Rat>> red;
  for (int n = 0; n <= 2 * (th - 1); ++n) red.push_back(q.ideal.reduce_power(n));
  alg->bracket.assign(alg->dim, std::vector<SparseRow>(alg->dim));
  for (int i = 0; i < B.dim; ++i)
    for (int a = 0; a < th; ++a)
      for (int j = 0; j < B.dim; ++j)
        for (int b = 0; b < th; ++b) {
          SparseRow row;
          for (const auto& [k, c] : B.bracket[i][j])
            for (int s = 0; s < th; ++s)
              if (red[a + b][s] != 0) row.push_back({q.index_of(k, s), c * red[a + b][s]});
          std::sort(row.begin(), row.end());
          alg->bracket[q.index_of(i, a)][q.index_of(j, b)] = row;
        }

  for (std::size_t k = 0; k < B.cartan.size(); ++k) alg->cartan.push_back(q.index_of(B.cartan[k], 0));
  alg->cartan_eigen.assign(alg->dim, {});
  for (int i = 0; i < B.dim; ++i)
    for (int s = 0; s < th; ++s) alg->cartan_eigen[q.index_of(i, s)] = B.cartan_eigen[i];
  for (auto [e, f] : B.even_chevalley)
    for (int s = 0; s < th; ++s)
      alg->even_chevalley.push_back({q.index_of(e, s), q.index_of(f, s)});
  alg->z_index = B.z_index >= 0 ? q.index_of(B.z_index, 0) : -1;

  q.acting = alg;
  return q;
}

Rat PsiData::on_cartan(std::size_t k, long m) const {
  Rat s(0);
  for (std::size_t j = 0; j < points.size(); ++j)
    s += rat_pow(points[j], m) * lam_hvals[j][k];
  return s;
}

Rat PsiData::on_z(long m) const {
  Rat s(0);
  for (std::size_t j = 0; j < points.size(); ++j) s += rat_pow(points[j], m) * lam_z[j];
  return s;
}

std::vector<Rat> PsiData::vec(long m) const {
  std::vector<Rat> out;
  if (!lam_hvals.empty())
    for (std::size_t k = 0; k < lam_hvals[0].size(); ++k) out.push_back(on_cartan(k, m));
  out.push_back(on_z(m));
  return out;
}

PsiData psi_from(const SuperAlgebra& g,
                 const std::vector<std::vector<Rat>>& lam_epsdelta,
                 const std::vector<Rat>& points) {
  if (lam_epsdelta.size() != points.size())
    throw std::invalid_argument("psi_from: weight/point count mismatch");
  PsiData psi;
  psi.points = points;
  for (const auto& lam : lam_epsdelta) {
    psi.lam_hvals.push_back(g.cartan_values_from_epsdelta(lam));
    psi.lam_z.push_back(g.lambda_z(lam));
  }
  return psi;
}

int detect_period_sequences(const std::vector<std::function<Rat(long)>>& seqs,
                            long order) {
  auto zero_on = [&](long start, long step, long count) {
    for (long i = 0; i < count; ++i)
      for (const auto& s : seqs)
        if (s(start + i * step) != 0) return false;
    return true;
  };
  // all-zero: vanishing on `order` consecutive values forces the zero solution
  if (zero_on(0, 1, order)) return 0;
  // period 2: the odd subsequence obeys an order-`order` recurrence too
  if (zero_on(1, 2, order)) return 2;
  return 1;
}

int detect_period(const SuperAlgebra& g,
                  const std::vector<std::vector<Rat>>& lam_epsdelta,
                  const std::vector<Rat>& points) {
  PsiData psi = psi_from(g, lam_epsdelta, points);
  std::vector<std::function<Rat(long)>> seqs;
  const std::size_t nk = g.cartan_idx.size();
  for (std::size_t k = 0; k < nk; ++k)
    seqs.push_back([psi, k](long m) { return psi.on_cartan(k, m); });
  seqs.push_back([psi](long m) { return psi.on_z(m); });
  return detect_period_sequences(seqs, static_cast<long>(points.size()));
}

EvaluationModule evaluation_module(std::shared_ptr<const SuperAlgebra> base,
                                   const std::vector<std::vector<Rat>>& lam_epsdelta,
                                   const std::vector<Rat>& points) {
  if (lam_epsdelta.size() != points.size() || points.empty())
    throw std::invalid_argument("evaluation_module: weight/point count mismatch");
  IdealSpec radical(points, std::vector<long>(points.size(), 1));  // validates points

  std::vector<WeightModule> factors;
  for (const auto& lam : lam_epsdelta) {
    if (!base->dominance_certificate(lam))
      throw std::invalid_argument("evaluation_module: weight not dominant integral");
    WeightModule kac = kac_module(*base, hw_module_even(*base, lam));
    factors.push_back(irreducible_quotient(kac, kac.top));
  }

  QuotientAlgebra qa = quotient_algebra(base, radical);
  const int K = static_cast<int>(points.size());
  const long th = qa.ideal.theta();

  TensorShape shape;
  for (const auto& f : factors) {
    shape.dims.push_back(f.dim);
    shape.parities.push_back(f.parity);
  }
  const int n = shape.total();

  EvaluationModule out{std::move(qa), {}, {}};
  for (const auto& f : factors) out.factor_dims.push_back(f.dim);
  WeightModule& m = out.module;
  m.alg = out.qa.acting;
  m.dim = n;
  for (int i = 0; i < n; ++i) {
    auto tuple = shape.decompose(i);
    Weight w;
    w.hvals.assign(m.alg->cartan.size(), Rat(0));
    int par = 0;
    std::string lbl;
    for (int j = 0; j < K; ++j) {
      const auto& ws = factors[j].weights[tuple[j]].hvals;
      for (std::size_t k = 0; k < w.hvals.size(); ++k) w.hvals[k] += ws[k];
      par += factors[j].parity[tuple[j]];
      lbl += (j ? "|" : "") + std::to_string(tuple[j]);
    }
    m.weights.push_back(w);
    m.parity.push_back(par % 2);
    m.labels.push_back(lbl);
  }
  // x_i (x) t^s acts as sum_j a_j^s rho_j(x_i) with Koszul signs
  const auto& B = *base->acting;
  for (int i = 0; i < B.dim; ++i) {
    std::vector<Mat> embedded;
    for (int j = 0; j < K; ++j)
      embedded.push_back(shape.embed(factors[j].action[i], j, B.parity[i]));
    for (long s = 0; s < th; ++s) {
      Mat a(n, n);
      for (int j = 0; j < K; ++j) a = a + embedded[j].scaled(rat_pow(points[j], s));
      m.action.push_back(a);
    }
    out.slot_action.push_back(std::move(embedded));
  }
  std::vector<int> tops;
  for (const auto& f : factors) tops.push_back(f.top);
  m.top = shape.compose(tops);
  return out;
}

Mat EvaluationModule::direct_action(int base_idx, long n) const {
  Mat a(module.dim, module.dim);
  for (std::size_t j = 0; j < qa.ideal.points().size(); ++j)
    a = a + slot_action[base_idx][j].scaled(rat_pow(qa.ideal.points()[j], n));
  return a;
}

Mat GradedLoopModule::act(int base_idx, long m) const {
  return carrier->act_combination(qa->reduce_element(base_idx, m));
}

GradedLoopModule loop_module(std::shared_ptr<const WeightModule> carrier,
                             std::shared_ptr<const QuotientAlgebra> qa, Rat b_offset) {
  if (carrier->alg != qa->acting)
    throw std::invalid_argument("loop_module: carrier not a module for the quotient");
  return GradedLoopModule{carrier, qa, std::move(b_offset)};
}

std::map<long, Subspace> graded_closure(const GradedLoopModule& glm, long seed_slice,
                                        const std::vector<Rat>& seed, long lo, long hi) {
  if (seed_slice < lo || seed_slice > hi)
    throw std::invalid_argument("graded_closure: seed slice outside the window");
  const int n = glm.carrier->dim;
  const int db = glm.qa->base->dim();
  std::map<long, std::vector<Mat>> hop;
  for (long m = lo - hi; m <= hi - lo; ++m) {
    std::vector<Mat> mats;
    for (int i = 0; i < db; ++i) mats.push_back(glm.act(i, m));
    hop.emplace(m, std::move(mats));
  }
  std::map<long, Subspace> slices;
  for (long s = lo; s <= hi; ++s) slices[s] = Subspace::zero(n);
  slices[seed_slice] = Subspace::span_vectors(n, {seed});
  bool changed = true;
  while (changed) {
    changed = false;
    for (long s = lo; s <= hi; ++s) {
      const Subspace& src = slices[s];
      if (src.dim() == 0) continue;
      for (long m = lo - s; m <= hi - s; ++m) {
        Subspace& dst = slices[s + m];
        if (dst.dim() == n) continue;
        Mat rows = dst.basis();
        for (const Mat& a : hop[m])
          for (int k = 0; k < src.dim(); ++k) {
            auto img = a.apply(dense_from_sparse(src.basis().row(k), n));
            if (!vec_is_zero(img)) rows.append_row(sparse_from_dense(img));
          }
        Subspace next = Subspace::span_rows(rows);
        if (next.dim() != dst.dim()) {
          dst = next;
          changed = true;
        }
      }
    }
  }
  return slices;
}

std::vector<LoopComponent> decompose_loop(const GradedLoopModule& glm,
                                          const std::vector<Rat>& v, int r,
                                          long lo, long hi) {
  if (r < 1) throw std::invalid_argument("decompose_loop: need r >= 1");
  if (lo > 0 || hi < r - 1)
    throw std::invalid_argument("decompose_loop: window must contain [0, r-1]");
  const auto& carrier = *glm.carrier;
  const int n = carrier.dim;

  std::vector<LoopComponent> comps(r);
  for (int i = 0; i < r; ++i) {
    comps[i].seed_slice = i;
    comps[i].slices = graded_closure(glm, i, v, lo, hi);
  }

  // certify slice-wise direct sum exhaustion
  for (long s = lo; s <= hi; ++s) {
    int total = 0;
    for (const auto& comp : comps) total += comp.slices.at(s).dim();
    if (total != n)
      throw WindowTooSmallError("decompose_loop: slice " + std::to_string(s) +
                                " reaches " + std::to_string(total) + " of " +
                                std::to_string(n) + " dimensions");
    for (int i = 0; i < r; ++i)
      for (int j = i + 1; j < r; ++j)
        if (comps[i].slices.at(s).intersect(comps[j].slices.at(s)).dim() != 0)
          throw std::runtime_error("decompose_loop: components overlap in slice " +
                                   std::to_string(s));
  }
  return comps;
}

}  // namespace superloop
