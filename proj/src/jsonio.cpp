#include "superloop/jsonio.hpp"

#include "superloop/corpus.hpp"
#include "superloop/hw_module.hpp"

namespace superloop {

Rat rat_from_json(const Json& j) {
  if (j.is_number_integer()) return Rat(j.get<long>());
  if (j.is_string()) return rat_from_string(j.get<std::string>());
  throw std::invalid_argument("scalar must be an integer or a rational string");
}

Json rat_to_json(const Rat& x) { return rat_to_string(x); }

std::shared_ptr<const SuperAlgebra> algebra_from_json(const Json& desc) {
  if (!desc.is_object() || !desc.contains("type"))
    throw std::invalid_argument("algebra descriptor must be an object with \"type\"");
  const std::string type = desc.at("type").get<std::string>();
  if (type == "sl") {
    int m = desc.at("m").get<int>(), n = desc.at("n").get<int>();
    if (m == 2 && n == 1) return shared_sl21();
    if (m == 3 && n == 1) return shared_sl31();
    return std::make_shared<const SuperAlgebra>(build_sl(m, n));
  }
  if (type == "C") {
    int m = desc.at("m").get<int>();
    if (m == 3) return shared_c3();
    return std::make_shared<const SuperAlgebra>(build_c(m));
  }
  throw std::invalid_argument("unknown algebra type \"" + type + "\"");
}

Json algebra_to_json(const SuperAlgebra& g) {
  Json j;
  if (g.kind == AlgebraKind::SL) {
    j["type"] = "sl";
    j["m"] = g.m;
    j["n"] = g.n;
  } else {
    j["type"] = "C";
    j["m"] = g.m;
  }
  return j;
}

std::vector<Rat> weight_from_json(const Json& j, const SuperAlgebra& g) {
  if (!j.is_array() || static_cast<int>(j.size()) != g.epsdelta_dim())
    throw std::invalid_argument("weight must be a list of " +
                                std::to_string(g.epsdelta_dim()) + " rationals");
  std::vector<Rat> w;
  for (const auto& c : j) w.push_back(rat_from_json(c));
  return w;
}

Json weight_to_json(const std::vector<Rat>& epsdelta) {
  Json j = Json::array();
  for (const auto& c : epsdelta) j.push_back(rat_to_json(c));
  return j;
}

IdealSpec ideal_from_json(const Json& j) {
  std::vector<Rat> pts;
  std::vector<long> mults;
  for (const auto& p : j.at("points")) pts.push_back(rat_from_json(p));
  if (j.contains("mults"))
    for (const auto& m : j.at("mults")) mults.push_back(m.get<long>());
  else
    mults.assign(pts.size(), 1);
  return IdealSpec(pts, mults);
}

Json ideal_to_json(const IdealSpec& ideal) {
  Json j;
  j["points"] = Json::array();
  for (const auto& p : ideal.points()) j["points"].push_back(rat_to_json(p));
  j["mults"] = ideal.mults();
  return j;
}

ParsedSpec spec_from_json(const Json& j) {
  if (!j.is_object()) throw std::invalid_argument("spec must be a JSON object");
  if (!j.contains("version") || j.at("version").get<std::string>() != "v1")
    throw std::invalid_argument("spec requires \"version\": \"v1\"");
  ParsedSpec ps;
  ps.kind = j.value("module", "tau");
  if (ps.kind != "evaluation" && ps.kind != "tau" && ps.kind != "loop")
    throw std::invalid_argument("module kind must be evaluation, tau or loop");

  TauModuleSpec& s = ps.spec;
  s.algebra = algebra_from_json(j.at("algebra"));
  for (const auto& lam : j.at("lambda"))
    s.lambda.push_back(weight_from_json(lam, *s.algebra));
  for (const auto& p : j.at("a")) s.a.push_back(rat_from_json(p));
  if (j.contains("mults"))
    for (const auto& m : j.at("mults")) s.mults.push_back(m.get<long>());
  else
    s.mults.assign(s.a.size(), 1);
  if (j.contains("b_offset")) s.b_offset = rat_from_json(j.at("b_offset"));

  if (j.contains("tau_window")) {
    for (const auto& t : j.at("tau_window")) s.tau_window.push_back(rat_from_json(t));
  } else {
    if (ps.kind == "tau")
      throw std::invalid_argument("tau specs require a tau_window");
    // evaluation data: tau from the z-eigenvalues of the weights
    std::vector<Rat> zeta;
    for (const auto& lam : s.lambda) zeta.push_back(s.algebra->lambda_z(lam));
    TauSeq t = tau_from_eval(s.a, zeta);
    IdealSpec ideal(s.a, s.mults);
    for (long deg = 0; deg < ideal.theta(); ++deg) s.tau_window.push_back(t.at(deg));
  }
  s.validate();
  return ps;
}

Json spec_to_json(const TauModuleSpec& spec, const std::string& kind) {
  Json j;
  j["version"] = "v1";
  j["module"] = kind;
  j["algebra"] = algebra_to_json(*spec.algebra);
  j["lambda"] = Json::array();
  for (const auto& lam : spec.lambda) j["lambda"].push_back(weight_to_json(lam));
  j["a"] = Json::array();
  for (const auto& p : spec.a) j["a"].push_back(rat_to_json(p));
  j["mults"] = spec.mults;
  j["tau_window"] = Json::array();
  for (const auto& t : spec.tau_window) j["tau_window"].push_back(rat_to_json(t));
  j["b_offset"] = rat_to_json(spec.b_offset);
  return j;
}

Json algebra_info_json(const SuperAlgebra& g) {
  Json j;
  j["descriptor"] = g.descriptor();
  j["algebra"] = algebra_to_json(g);
  j["dimension"] = g.dim();
  j["cartan_dimension"] = g.cartan_dim();
  const RootDatum& rd = g.roots;
  j["simple_roots"] = Json::array();
  for (const auto& r : rd.simple) j["simple_roots"].push_back(r);
  j["positive_even_roots"] = rd.pos_even.size();
  j["positive_odd_roots"] = rd.pos_odd.size();
  j["form_signs"] = rd.form_signs;
  Json zdiag = Json::array();
  for (int i = 0; i < g.shape.size(); ++i) zdiag.push_back(rat_to_json(g.z.at(i, i)));
  j["z_diagonal"] = zdiag;
  int minus = 0, zero = 0, plus = 0;
  for (const auto& el : g.basis) {
    if (el.zgrade < 0) ++minus;
    if (el.zgrade == 0) ++zero;
    if (el.zgrade > 0) ++plus;
  }
  j["grading"] = {{"minus", minus}, {"zero", zero}, {"plus", plus}};
  return j;
}

Json module_build_json(const ParsedSpec& ps, bool with_weights,
                       std::optional<std::pair<long, long>> window) {
  const TauModuleSpec& spec = ps.spec;
  VhatModule vhat = induce_and_reduce(spec);
  const WeightModule& m = *vhat.carrier;

  Json j;
  j["version"] = "v1";
  j["kind"] = ps.kind;
  j["algebra"] = algebra_to_json(*spec.algebra);
  j["dimension"] = m.dim;
  j["induced_dimension"] = vhat.induced_dim;
  j["irreducible"] = is_irreducible(m);
  j["integrable"] = is_integrable(m);
  j["evaluation"] = is_evaluation(spec.tau());
  j["period_r"] = combined_period(spec);
  j["b_offset"] = rat_to_json(spec.b_offset);
  j["ideal"] = ideal_to_json(spec.ideal());
  j["tau_window"] = Json::array();
  for (const auto& t : spec.tau_window) j["tau_window"].push_back(rat_to_json(t));

  CheckReport ann = check_annihilator(vhat);
  j["annihilator_certified"] = ann.pass;

  // top weight as an eps/delta representative of the base algebra
  j["top_weight"] = weight_to_json(
      spec.algebra->epsdelta_from_cartan_values(m.weights[m.top].hvals));

  if (with_weights) {
    Json w = Json::object();
    for (const auto& [wt, mult] : weight_multiplicities(m)) {
      Json key = weight_to_json(spec.algebra->epsdelta_from_cartan_values(wt.hvals));
      w[key.dump()] = mult;
    }
    j["weights"] = w;
  }
  if (window) {
    Json slices = Json::array();
    for (long s = window->first; s <= window->second; ++s) {
      Json slice;
      slice["degree"] = s;
      slice["d_eigenvalue"] = rat_to_json(vhat.graded.d_eigenvalue(s));
      slice["dimension"] = m.dim;
      slices.push_back(slice);
    }
    j["slices"] = slices;
  }

  Extraction ex = extract_spec(vhat);
  if (ex.failure.empty())
    j["recovered_spec"] = spec_to_json(ex.spec, ps.kind);
  else
    j["recovered_spec_error"] = ex.failure;
  return j;
}

Json iso_json(const TauModuleSpec& a, const TauModuleSpec& b) {
  Json j;
  j["version"] = "v1";
  j["gprime_isomorphic"] = iso_check_Gprime(a, b);
  auto w = iso_check_G(a, b);
  j["isomorphic"] = w.has_value();
  if (w) {
    j["kappa"] = rat_to_json(w->kappa);
    j["sigma"] = w->sigma;
  }
  return j;
}

Json report_to_json(const CheckReport& r) {
  Json j;
  j["check"] = r.check;
  j["instance"] = r.instance;
  j["pass"] = r.pass;
  j["control"] = r.negative_control;
  j["detail"] = r.detail;
  j["seconds"] = r.seconds;
  return j;
}

}  // namespace superloop
