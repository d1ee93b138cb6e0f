#include "superloop/tau.hpp"

#include <algorithm>

#include "superloop/hw_module.hpp"

namespace superloop {

TauSeq::TauSeq(IdealSpec ideal, std::vector<Rat> window)
    : ideal_(std::move(ideal)), window_(std::move(window)) {
  if (static_cast<long>(window_.size()) != ideal_.theta())
    throw std::invalid_argument("TauSeq: window length must equal theta");
}

TauSeq& TauSeq::operator=(const TauSeq& o) {
  if (this != &o) {
    ideal_ = o.ideal_;
    window_ = o.window_;
    std::lock_guard<std::mutex> lock(mu_);
    memo_.clear();
  }
  return *this;
}

Rat TauSeq::at(long s) const {
  const long th = ideal_.theta();
  if (s >= 0 && s < th) return window_[s];
  std::lock_guard<std::mutex> lock(mu_);
  const auto& c = ideal_.pcoeff();
  auto known = [&](long i) -> Rat {
    if (i >= 0 && i < th) return window_[i];
    return memo_.at(i);
  };
  if (s >= th) {
    long hi = th - 1;
    while (memo_.count(hi + 1)) ++hi;
    for (long t = hi + 1; t <= s; ++t) {
      // c_theta = 1: tau_t = -sum_{i < theta} c_i tau_{t - theta + i}
      Rat acc(0);
      for (long i = 0; i < th; ++i) acc += c[i] * known(t - th + i);
      memo_[t] = -acc;
    }
  } else {
    long lo = 0;
    while (memo_.count(lo - 1)) --lo;
    for (long t = lo - 1; t >= s; --t) {
      // c_0 tau_t = -sum_{i >= 1} c_i tau_{t + i}
      Rat acc(0);
      for (long i = 1; i <= th; ++i) acc += c[i] * known(t + i);
      memo_[t] = -acc / c[0];
    }
  }
  return memo_.at(s);
}

bool TauSeq::is_zero_sequence() const {
  return std::all_of(window_.begin(), window_.end(), [](const Rat& x) { return x == 0; });
}

TauSeq tau_from_eval(const std::vector<Rat>& points, const std::vector<Rat>& zeta) {
  if (points.size() != zeta.size())
    throw std::invalid_argument("tau_from_eval: length mismatch");
  IdealSpec radical(points, std::vector<long>(points.size(), 1));
  std::vector<Rat> window;
  for (long s = 0; s < radical.theta(); ++s) {
    Rat v(0);
    for (std::size_t j = 0; j < points.size(); ++j) v += zeta[j] * rat_pow(points[j], s);
    window.push_back(v);
  }
  return TauSeq(std::move(radical), std::move(window));
}

bool is_evaluation(const TauSeq& tau) {
  const IdealSpec radical = tau.ideal().radical();
  const auto& c = radical.pcoeff();
  // the residual u_m = sum_i c'_i tau_{i+m} obeys the full recurrence, so
  // vanishing on theta consecutive values settles it everywhere
  for (long m = 0; m < tau.ideal().theta(); ++m) {
    Rat acc(0);
    for (long i = 0; i <= radical.theta(); ++i) acc += c[i] * tau.at(i + m);
    if (acc != 0) return false;
  }
  return true;
}

void TauModuleSpec::validate() const {
  if (!algebra) throw std::invalid_argument("spec: missing algebra");
  if (lambda.size() != a.size() || a.size() != mults.size() || a.empty())
    throw std::invalid_argument("spec: lambda, a, mults must have equal positive length");
  IdealSpec I(a, mults);  // validates distinct nonzero points
  if (static_cast<long>(tau_window.size()) != I.theta())
    throw std::invalid_argument("spec: tau window length must equal theta = " +
                                std::to_string(I.theta()));
  for (const auto& lam : lambda)
    if (!algebra->dominance_certificate(lam))
      throw std::invalid_argument("spec: weight " + vec_to_string(lam) +
                                  " is not dominant integral");
}

ParabolicModule build_v0(const TauModuleSpec& spec, const QuotientAlgebra& qa) {
  const SuperAlgebra& g = *spec.algebra;
  const TauSeq tau = spec.tau();
  const long th = qa.ideal.theta();
  const int K = static_cast<int>(spec.a.size());

  // semisimple tensor factors
  std::vector<WeightModule> factors;
  for (const auto& lam : spec.lambda) factors.push_back(hw_module_ss(g, lam));

  TensorShape shape;
  for (const auto& f : factors) {
    shape.dims.push_back(f.dim);
    shape.parities.push_back(f.parity);
  }
  const int n = shape.total();

  // the parabolic subalgebra: zgrade >= 0 part of the quotient
  ParabolicModule out;
  {
    const auto& Q = *qa.acting;
    std::vector<int> to_par(Q.dim, -1);
    for (int i = 0; i < Q.dim; ++i)
      if (Q.zgrade[i] >= 0) {
        to_par[i] = static_cast<int>(out.to_quotient.size());
        out.to_quotient.push_back(i);
      }
    auto par = std::make_shared<ActingAlgebra>();
    par->name = Q.name + " parabolic";
    par->dim = static_cast<int>(out.to_quotient.size());
    for (int i : out.to_quotient) {
      par->labels.push_back(Q.labels[i]);
      par->parity.push_back(Q.parity[i]);
      par->zgrade.push_back(Q.zgrade[i]);
      par->tri.push_back(Q.tri[i]);
      par->tdeg.push_back(Q.tdeg[i]);
      par->cartan_eigen.push_back(Q.cartan_eigen[i]);
    }
    par->bracket.assign(par->dim, std::vector<SparseRow>(par->dim));
    for (int i = 0; i < par->dim; ++i)
      for (int j = 0; j < par->dim; ++j) {
        SparseRow row;
        for (const auto& [k, c] : Q.bracket[out.to_quotient[i]][out.to_quotient[j]]) {
          if (to_par[k] < 0)
            throw std::logic_error("parabolic part not closed under bracket");
          row.push_back({to_par[k], c});
        }
        std::sort(row.begin(), row.end());
        par->bracket[i][j] = row;
      }
    for (int h : Q.cartan) par->cartan.push_back(to_par[h]);
    for (auto [e, f] : Q.even_chevalley)
      if (to_par[e] >= 0 && to_par[f] >= 0)
        par->even_chevalley.push_back({to_par[e], to_par[f]});
    par->z_index = Q.z_index >= 0 ? to_par[Q.z_index] : -1;
    out.acting = par;
  }

  WeightModule& m = out.module;
  m.alg = out.acting;
  m.dim = n;
  m.parity.assign(n, 0);
  for (int i = 0; i < n; ++i) {
    auto tuple = shape.decompose(i);
    std::string lbl;
    for (int j = 0; j < K; ++j) lbl += (j ? "|" : "") + std::to_string(tuple[j]);
    m.labels.push_back(lbl);
  }
  // actions: g_ss (x) t^s by evaluation, z (x) t^s by tau_s, n1+ (x) L by zero
  for (std::size_t p = 0; p < out.to_quotient.size(); ++p) {
    const int qidx = out.to_quotient[p];
    const int base_idx = qa.base_of(qidx);
    const long s = qa.tdeg_of(qidx);
    const auto& el = g.basis[base_idx];
    if (el.zgrade == 1) {
      m.action.push_back(Mat(n, n));
      continue;
    }
    auto split = g.split_even(el.mat);
    Mat a(n, n);
    for (std::size_t i = 0; i < split.ss_coords.size(); ++i) {
      if (split.ss_coords[i] == 0) continue;
      for (int j = 0; j < K; ++j) {
        Rat coeff = split.ss_coords[i] * rat_pow(spec.a[j], s);
        if (coeff != 0)
          a = a + shape.embed(factors[j].action[i], j, 0).scaled(coeff);
      }
    }
    if (split.z_coeff != 0)
      a = a + Mat::identity(n).scaled(split.z_coeff * tau.at(s));
    m.action.push_back(a);
  }
  // weight labels read from the Cartan action diagonals
  m.weights.assign(n, Weight{});
  for (int v = 0; v < n; ++v) m.weights[v].hvals.assign(out.acting->cartan.size(), Rat(0));
  for (std::size_t k = 0; k < out.acting->cartan.size(); ++k) {
    const Mat& h = m.action[out.acting->cartan[k]];
    for (int v = 0; v < n; ++v) m.weights[v].hvals[k] = h.at(v, v);
  }
  std::vector<int> tops;
  for (const auto& f : factors) tops.push_back(f.top);
  m.top = shape.compose(tops);
  return out;
}

VhatModule induce_and_reduce(const TauModuleSpec& spec) {
  spec.validate();
  auto qa = std::make_shared<QuotientAlgebra>(
      quotient_algebra(spec.algebra, spec.ideal()));
  return induce_and_reduce(spec, qa);
}

VhatModule induce_and_reduce(const TauModuleSpec& spec,
                             std::shared_ptr<const QuotientAlgebra> qa) {
  spec.validate();
  if (!(qa->ideal == spec.ideal()))
    throw std::invalid_argument("induce_and_reduce: quotient ideal mismatch");
  ParabolicModule v0 = build_v0(spec, *qa);

  std::vector<int> par_of(qa->acting->dim, -1);
  for (std::size_t p = 0; p < v0.to_quotient.size(); ++p)
    par_of[v0.to_quotient[p]] = static_cast<int>(p);

  InductionInput in;
  in.alg = qa->acting;
  in.v0_dim = v0.module.dim;
  in.v0_weights = v0.module.weights;
  in.v0_parity = v0.module.parity;
  in.v0_labels = v0.module.labels;
  in.v0_top = v0.module.top;
  in.action_of = [&](int idx) { return v0.module.action[par_of[idx]]; };
  WeightModule induced = induce_type_i(in);
  const int mdim = induced.dim;

  WeightModule head = irreducible_quotient(induced, induced.top);

  // the top vector is killed by the image of n+ (x) L
  for (int i = 0; i < qa->acting->dim; ++i) {
    if (qa->acting->tri[i] != 1) continue;
    std::vector<Rat> e(head.dim, Rat(0));
    e[head.top] = 1;
    if (!vec_is_zero(head.action[i].apply(e)))
      throw std::logic_error("induce_and_reduce: top vector not a highest weight vector");
  }

  auto carrier = std::make_shared<WeightModule>(std::move(head));
  VhatModule out{spec, qa, carrier, mdim, loop_module(carrier, qa, spec.b_offset)};
  return out;
}

int combined_period(const TauModuleSpec& spec) {
  const SuperAlgebra& g = *spec.algebra;
  const TauSeq tau = spec.tau();
  std::vector<std::vector<Rat>> lam_ss;
  for (const auto& lam : spec.lambda) lam_ss.push_back(ss_cartan_values(g, lam));
  const std::size_t rank = g.ss.simple.size();
  std::vector<std::function<Rat(long)>> seqs;
  for (std::size_t k = 0; k < rank; ++k)
    seqs.push_back([&, k](long m) {
      Rat s(0);
      for (std::size_t j = 0; j < spec.a.size(); ++j)
        s += rat_pow(spec.a[j], m) * lam_ss[j][k];
      return s;
    });
  seqs.push_back([&](long m) { return tau.at(m); });
  return detect_period_sequences(seqs, spec.ideal().theta());
}

namespace {

bool lambda_matches(const SuperAlgebra& g, const std::vector<Rat>& l1,
                    const std::vector<Rat>& l2) {
  return ss_cartan_values(g, l1) == ss_cartan_values(g, l2);
}

bool tau_sequences_equal(const TauSeq& t1, const TauSeq& t2, const Rat& kappa) {
  // t2_i = kappa^i t1_i; both sides satisfy recurrences of orders theta1,
  // theta2, so agreement on theta1 + theta2 consecutive values is equality.
  const long window = t1.ideal().theta() + t2.ideal().theta();
  for (long i = 0; i < window; ++i)
    if (t2.at(i) != rat_pow(kappa, i) * t1.at(i)) return false;
  return true;
}

std::vector<std::vector<int>> permutations(int k) {
  std::vector<int> p(k);
  for (int i = 0; i < k; ++i) p[i] = i;
  std::vector<std::vector<int>> out;
  do {
    out.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

}  // namespace

bool iso_check_Gprime(const TauModuleSpec& s1, const TauModuleSpec& s2) {
  s1.validate();
  s2.validate();
  if (s1.algebra->descriptor() != s2.algebra->descriptor()) return false;
  if (!tau_sequences_equal(s1.tau(), s2.tau(), Rat(1))) return false;
  if (s1.a.size() != s2.a.size()) return false;
  const int K = static_cast<int>(s1.a.size());
  if (K > 8) throw std::invalid_argument("iso_check: K > 8 unsupported");
  for (const auto& sigma : permutations(K)) {
    bool ok = true;
    for (int j = 0; j < K && ok; ++j)
      ok = s2.a[j] == s1.a[sigma[j]] &&
           lambda_matches(*s1.algebra, s2.lambda[j], s1.lambda[sigma[j]]);
    if (ok) return true;
  }
  return false;
}

std::optional<IsoWitness> iso_check_G(const TauModuleSpec& s1, const TauModuleSpec& s2) {
  s1.validate();
  s2.validate();
  if (s1.algebra->descriptor() != s2.algebra->descriptor()) return std::nullopt;
  const int r1 = combined_period(s1);
  const int r2 = combined_period(s2);
  if (r1 != r2) return std::nullopt;

  if (r1 == 0) {
    // both modules are trivial; only the d-eigenvalue distinguishes them
    if (s1.b_offset == s2.b_offset) return IsoWitness{Rat(1), {}};
    return std::nullopt;
  }

  // (a) b' = b (mod r)
  Rat db = s2.b_offset - s1.b_offset;
  if (!rat_is_integer(db) || rat_to_long(db) % r1 != 0) return std::nullopt;

  if (s1.a.size() != s2.a.size()) return std::nullopt;
  const int K = static_cast<int>(s1.a.size());
  if (K > 8) throw std::invalid_argument("iso_check: K > 8 unsupported");

  const TauSeq t1 = s1.tau(), t2 = s2.tau();
  for (const auto& sigma : permutations(K)) {
    Rat kappa = s2.a[0] / s1.a[sigma[0]];
    if (kappa == 0) continue;
    bool ok = true;
    for (int j = 0; j < K && ok; ++j)
      ok = s2.a[j] == kappa * s1.a[sigma[j]] &&
           lambda_matches(*s1.algebra, s2.lambda[j], s1.lambda[sigma[j]]);
    if (!ok) continue;
    if (!tau_sequences_equal(t1, t2, kappa)) continue;
    return IsoWitness{kappa, sigma};
  }
  return std::nullopt;
}

}  // namespace superloop
