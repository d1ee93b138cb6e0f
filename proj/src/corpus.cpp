#include "superloop/corpus.hpp"

namespace superloop {

std::shared_ptr<const SuperAlgebra> shared_sl21() {
  static auto g = std::make_shared<const SuperAlgebra>(build_sl(2, 1));
  return g;
}

std::shared_ptr<const SuperAlgebra> shared_sl31() {
  static auto g = std::make_shared<const SuperAlgebra>(build_sl(3, 1));
  return g;
}

std::shared_ptr<const SuperAlgebra> shared_c3() {
  static auto g = std::make_shared<const SuperAlgebra>(build_c(3));
  return g;
}

WeightModule direct_sum(const WeightModule& a, const WeightModule& b) {
  if (a.alg != b.alg) throw std::invalid_argument("direct_sum: mismatched algebras");
  WeightModule out;
  out.alg = a.alg;
  out.dim = a.dim + b.dim;
  out.weights = a.weights;
  out.weights.insert(out.weights.end(), b.weights.begin(), b.weights.end());
  out.parity = a.parity;
  out.parity.insert(out.parity.end(), b.parity.begin(), b.parity.end());
  for (int x = 0; x < a.alg->dim; ++x) {
    Mat m(out.dim, out.dim);
    for (int i = 0; i < a.dim; ++i)
      for (const auto& [j, v] : a.action[x].row(i)) m.add_at(i, j, v);
    for (int i = 0; i < b.dim; ++i)
      for (const auto& [j, v] : b.action[x].row(i)) m.add_at(a.dim + i, a.dim + j, v);
    out.action.push_back(m);
  }
  return out;
}

namespace {

std::vector<Rat> rv(std::initializer_list<long> xs) {
  std::vector<Rat> v;
  for (long x : xs) v.emplace_back(x);
  return v;
}

TauModuleSpec spec_of(std::shared_ptr<const SuperAlgebra> g,
                      std::vector<std::vector<Rat>> lambda, std::vector<Rat> a,
                      std::vector<long> mults, std::vector<Rat> window,
                      Rat b = Rat(0)) {
  TauModuleSpec s;
  s.algebra = std::move(g);
  s.lambda = std::move(lambda);
  s.a = std::move(a);
  s.mults = std::move(mults);
  s.tau_window = std::move(window);
  s.b_offset = std::move(b);
  s.validate();
  return s;
}

// window of tau_from_eval restricted to the (possibly non-radical) ideal
std::vector<Rat> eval_window(const std::vector<Rat>& pts, const std::vector<Rat>& zeta,
                             long theta) {
  TauSeq t = tau_from_eval(pts, zeta);
  std::vector<Rat> w;
  for (long s = 0; s < theta; ++s) w.push_back(t.at(s));
  return w;
}

std::vector<CorpusInstance> make_corpus() {
  auto sl = shared_sl21();
  auto c3 = shared_c3();
  std::vector<CorpusInstance> out;

  // -- sl(2,1) ---------------------------------------------------------
  // typical one-point evaluation module
  out.push_back({"sl21-eval-typical",
                 spec_of(sl, {rv({1, 0, 1})}, {Rat(3)}, {1},
                         eval_window({Rat(3)}, {sl->lambda_z(rv({1, 0, 1}))}, 1)),
                 true, 1});
  // two points, mixed weights, one fractional point
  out.push_back(
      {"sl21-eval-two-points",
       spec_of(sl, {rv({1, 0, 1}), rv({0, 0, 1})}, {Rat(2), Rat(1, 2)}, {1, 1},
               eval_window({Rat(2), Rat(1, 2)},
                           {sl->lambda_z(rv({1, 0, 1})), sl->lambda_z(rv({0, 0, 1}))}, 2)),
       true, 1});
  // opposite points with equal weights: the r = 2 loop instance
  out.push_back({"sl21-loop-r2",
                 spec_of(sl, {rv({0, 0, 1}), rv({0, 0, 1})}, {Rat(1), Rat(-1)}, {1, 1},
                         eval_window({Rat(1), Rat(-1)}, {Rat(2), Rat(2)}, 2)),
                 true, 2});
  // the headline non-evaluation instance: tau_s = s over (t-1)^2
  out.push_back({"sl21-tau-nonev-s",
                 spec_of(sl, {rv({0, 0, 0})}, {Rat(1)}, {2}, {Rat(0), Rat(1)}), false,
                 1});
  // non-evaluation with nontrivial ss weight: tau_s = (1 + 2s) 2^s
  out.push_back({"sl21-tau-nonev-mixed",
                 spec_of(sl, {rv({1, 0, 0})}, {Rat(2)}, {2}, {Rat(1), Rat(6)}), false,
                 1});
  // evaluation-type tau declared over a double point
  out.push_back({"sl21-tau-eval-double",
                 spec_of(sl, {rv({0, 0, 1})}, {Rat(3)}, {2},
                         eval_window({Rat(3)}, {sl->lambda_z(rv({0, 0, 1}))}, 2)),
                 true, 1});
  // trivial module (r = 0 degenerate case)
  out.push_back({"sl21-trivial",
                 spec_of(sl, {rv({0, 0, 0})}, {Rat(1)}, {1}, {Rat(0)}), true, 0});
  // nonzero grading offset on the headline instance
  out.push_back({"sl21-tau-nonev-offset",
                 spec_of(sl, {rv({0, 0, 0})}, {Rat(1)}, {2}, {Rat(0), Rat(1)},
                         Rat(1, 2)),
                 false, 1});

  // -- C(3) ------------------------------------------------------------
  // one-point evaluation with pure z weight
  out.push_back({"c3-eval-z",
                 spec_of(c3, {rv({1, 0, 0})}, {Rat(2)}, {1},
                         eval_window({Rat(2)}, {c3->lambda_z(rv({1, 0, 0}))}, 1)),
                 true, 1});
  // sp(4) fundamental weight evaluation
  out.push_back({"c3-eval-fund",
                 spec_of(c3, {rv({0, 1, 0})}, {Rat(2)}, {1},
                         eval_window({Rat(2)}, {c3->lambda_z(rv({0, 1, 0}))}, 1)),
                 true, 1});
  // non-evaluation tau over (t-1)^2
  out.push_back({"c3-tau-nonev-s",
                 spec_of(c3, {rv({0, 0, 0})}, {Rat(1)}, {2}, {Rat(0), Rat(1)}), false,
                 1});
  // r = 2 loop instance over C(3)
  out.push_back({"c3-loop-r2",
                 spec_of(c3, {rv({1, 0, 0}), rv({1, 0, 0})}, {Rat(1), Rat(-1)}, {1, 1},
                         eval_window({Rat(1), Rat(-1)},
                                     {c3->lambda_z(rv({1, 0, 0})),
                                      c3->lambda_z(rv({1, 0, 0}))},
                                     2)),
                 true, 2});
  return out;
}

}  // namespace

const std::vector<CorpusInstance>& builtin_corpus() {
  static const std::vector<CorpusInstance> corpus = make_corpus();
  return corpus;
}

}  // namespace superloop
