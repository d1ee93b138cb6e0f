#include "superloop/checks.hpp"

#include <atomic>
#include <chrono>
#include <cstdlib>
#include <mutex>
#include <sstream>
#include <thread>

#include "superloop/corpus.hpp"
#include "superloop/hw_module.hpp"

namespace superloop {

namespace {

std::string json_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    if (c == '\n') {
      out += "\\n";
      continue;
    }
    out += c;
  }
  return out;
}

std::vector<Rat> unit_vec(int n, int i) {
  std::vector<Rat> e(n, Rat(0));
  e[i] = 1;
  return e;
}

// scalar by which a combination acts on the module's top line; nullopt when
// the image leaves the line
std::optional<Rat> top_scalar(const WeightModule& m, const SparseRow& comb) {
  auto img = m.act_combination(comb).apply(unit_vec(m.dim, m.top));
  Rat c = img[m.top];
  for (int i = 0; i < m.dim; ++i)
    if (i != m.top && img[i] != 0) return std::nullopt;
  return c;
}

// h_k^{ss} (x) t^n as a combination of quotient acting basis elements
SparseRow ss_cartan_at(const SuperAlgebra& g, const QuotientAlgebra& qa, int k, long n) {
  std::vector<Rat> coords = g.coords(g.ss.cartan_mats[k]);
  std::vector<Rat> red = qa.ideal.reduce_power(n);
  SparseRow out;
  for (int b = 0; b < g.dim(); ++b) {
    if (coords[b] == 0) continue;
    for (long s = 0; s < qa.ideal.theta(); ++s)
      if (red[s] != 0) out.push_back({qa.index_of(b, s), coords[b] * red[s]});
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::string spec_brief(const TauModuleSpec& s) {
  std::string out = s.algebra->descriptor() + " K=" + std::to_string(s.a.size());
  out += " a=[";
  for (std::size_t j = 0; j < s.a.size(); ++j)
    out += (j ? "," : "") + rat_to_string(s.a[j]) + "^" + std::to_string(s.mults[j]);
  out += "] tau=" + vec_to_string(s.tau_window);
  out += " b=" + rat_to_string(s.b_offset);
  return out;
}

}  // namespace

std::string CheckReport::json() const {
  std::ostringstream os;
  os << "{\"check\":\"" << json_escape(check) << "\",\"instance\":\""
     << json_escape(instance) << "\",\"pass\":" << (pass ? "true" : "false")
     << ",\"control\":" << (negative_control ? "true" : "false") << ",\"detail\":\""
     << json_escape(detail) << "\",\"seconds\":" << seconds << "}";
  return os.str();
}

std::vector<Rat> berlekamp_massey(const std::vector<Rat>& s) {
  std::vector<Rat> C{Rat(1)}, B{Rat(1)};
  long L = 0, m = 1;
  Rat b(1);
  for (std::size_t n = 0; n < s.size(); ++n) {
    Rat d = s[n];
    for (long i = 1; i <= L && i <= static_cast<long>(C.size()) - 1; ++i)
      d += C[i] * s[n - i];
    if (d == 0) {
      ++m;
      continue;
    }
    std::vector<Rat> T = C;
    Rat coef = d / b;
    if (C.size() < B.size() + m) C.resize(B.size() + m, Rat(0));
    for (std::size_t i = 0; i < B.size(); ++i) C[i + m] -= coef * B[i];
    if (2 * L <= static_cast<long>(n)) {
      L = static_cast<long>(n) + 1 - L;
      B = T;
      b = d;
      m = 1;
    } else {
      ++m;
    }
  }
  std::vector<Rat> q(L + 1, Rat(0));
  for (long i = 0; i <= L; ++i)
    if (L - i < static_cast<long>(C.size())) q[i] = C[L - i];
  q[L] = 1;
  return q;
}

namespace {

long poly_deg(const std::vector<Rat>& p) {
  for (long i = static_cast<long>(p.size()) - 1; i >= 0; --i)
    if (p[i] != 0) return i;
  return -1;
}

std::vector<Rat> poly_trim(std::vector<Rat> p) {
  p.resize(poly_deg(p) + 1);
  return p;
}

std::vector<Rat> poly_monic(std::vector<Rat> p) {
  p = poly_trim(std::move(p));
  if (p.empty()) return p;
  Rat lead = p.back();
  for (auto& c : p) c /= lead;
  return p;
}

// remainder of a mod b (b nonzero)
std::vector<Rat> poly_rem(std::vector<Rat> a, const std::vector<Rat>& b) {
  a = poly_trim(std::move(a));
  long db = poly_deg(b);
  while (poly_deg(a) >= db && db >= 0) {
    long da = poly_deg(a);
    Rat f = a[da] / b[db];
    for (long i = 0; i <= db; ++i) a[da - db + i] -= f * b[i];
    a = poly_trim(std::move(a));
    if (a.empty()) break;
  }
  return a;
}

std::vector<Rat> poly_div_exact(std::vector<Rat> a, const std::vector<Rat>& b) {
  a = poly_trim(std::move(a));
  long db = poly_deg(b);
  std::vector<Rat> q(std::max<long>(poly_deg(a) - db + 1, 0), Rat(0));
  while (poly_deg(a) >= db) {
    long da = poly_deg(a);
    Rat f = a[da] / b[db];
    q[da - db] = f;
    for (long i = 0; i <= db; ++i) a[da - db + i] -= f * b[i];
    a = poly_trim(std::move(a));
    if (a.empty()) break;
  }
  if (!a.empty()) throw std::logic_error("poly_div_exact: nonzero remainder");
  return q;
}

std::vector<Rat> poly_mul(const std::vector<Rat>& a, const std::vector<Rat>& b) {
  if (a.empty() || b.empty()) return {};
  std::vector<Rat> p(a.size() + b.size() - 1, Rat(0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) p[i + j] += a[i] * b[j];
  return p;
}

Rat poly_eval(const std::vector<Rat>& p, const Rat& x) {
  Rat acc(0);
  for (long i = static_cast<long>(p.size()) - 1; i >= 0; --i) acc = acc * x + p[i];
  return acc;
}

std::vector<mpz_class> divisors(const mpz_class& n0) {
  mpz_class n = abs(n0);
  std::vector<mpz_class> out;
  if (n == 0) return out;
  for (mpz_class d = 1; d * d <= n; ++d)
    if (n % d == 0) {
      out.push_back(d);
      if (d * d != n) out.push_back(n / d);
    }
  return out;
}

}  // namespace

std::vector<Rat> poly_gcd(std::vector<Rat> a, std::vector<Rat> b) {
  a = poly_trim(std::move(a));
  b = poly_trim(std::move(b));
  while (!b.empty()) {
    auto r = poly_rem(a, b);
    a = b;
    b = r;
  }
  return poly_monic(std::move(a));
}

std::vector<Rat> poly_lcm(const std::vector<Rat>& a, const std::vector<Rat>& b) {
  if (poly_deg(a) < 0) return poly_monic(b);
  if (poly_deg(b) < 0) return poly_monic(a);
  auto g = poly_gcd(a, b);
  return poly_monic(poly_mul(poly_div_exact(a, g), b));
}

std::vector<std::pair<Rat, long>> rational_roots(std::vector<Rat> p) {
  p = poly_monic(std::move(p));
  if (poly_deg(p) <= 0) return {};
  // scale to integer coefficients
  mpz_class den_lcm = 1;
  for (const auto& c : p) {
    mpz_class d = c.get_den();
    den_lcm = den_lcm / gcd(den_lcm, d) * d;
  }
  std::vector<mpz_class> ip;
  for (const auto& c : p) ip.push_back(mpz_class(c * Rat(den_lcm)));
  if (!ip.empty() && ip.front() == 0)
    throw std::invalid_argument("rational_roots: zero root present");

  std::vector<std::pair<Rat, long>> roots;
  std::vector<Rat> cur = p;
  auto lead_divs = divisors(ip.back());
  auto const_divs = divisors(ip.front());
  for (const auto& u : const_divs)
    for (const auto& v : lead_divs)
      for (int sign : {1, -1}) {
        Rat cand(sign * u, v);
        cand.canonicalize();
        long mult = 0;
        while (poly_deg(cur) > 0 && poly_eval(cur, cand) == 0) {
          cur = poly_div_exact(cur, {Rat(-cand), Rat(1)});
          ++mult;
        }
        if (mult > 0) roots.push_back({cand, mult});
      }
  if (poly_deg(cur) != 0)
    throw std::runtime_error("rational_roots: irrational factor of degree " +
                             std::to_string(poly_deg(cur)));
  return roots;
}

namespace {

// shared sequence-to-spec pipeline for normalize_spec and extract_spec
struct SeqSource {
  std::function<std::optional<Rat>(int k, long s)> psi;  // k < rank
  std::function<std::optional<Rat>(long s)> tau;
  long theta;  // known annihilator order bound
  int rank;
};

struct FitResult {
  TauModuleSpec spec;
  std::string failure;
};

FitResult fit_spec(const SeqSource& src, std::shared_ptr<const SuperAlgebra> g,
                   const Rat& b_offset) {
  FitResult out;
  const long n_samples = 2 * src.theta + 2;
  std::vector<std::vector<Rat>> psi_samples(src.rank);
  std::vector<Rat> tau_samples;
  for (int k = 0; k < src.rank; ++k)
    for (long s = 0; s < n_samples; ++s) {
      auto v = src.psi(k, s);
      if (!v) {
        out.failure = "psi(" + std::to_string(k) + ") is not scalar on the top line";
        return out;
      }
      psi_samples[k].push_back(*v);
    }
  for (long s = 0; s < n_samples; ++s) {
    auto v = src.tau(s);
    if (!v) {
      out.failure = "tau is not scalar on the top line";
      return out;
    }
    tau_samples.push_back(*v);
  }

  std::vector<Rat> pfit{Rat(1)};
  for (int k = 0; k < src.rank; ++k)
    pfit = poly_lcm(pfit, berlekamp_massey(psi_samples[k]));
  pfit = poly_lcm(pfit, berlekamp_massey(tau_samples));

  TauModuleSpec spec;
  spec.algebra = g;
  spec.b_offset = b_offset;
  if (poly_deg(pfit) == 0) {
    // every sequence vanishes: the canonical trivial spec
    spec.lambda = {std::vector<Rat>(g->epsdelta_dim(), Rat(0))};
    spec.a = {Rat(1)};
    spec.mults = {1};
    spec.tau_window = {Rat(0)};
    out.spec = spec;
    return out;
  }

  std::vector<std::pair<Rat, long>> roots;
  try {
    roots = rational_roots(pfit);
  } catch (const std::exception& e) {
    out.failure = e.what();
    return out;
  }
  std::sort(roots.begin(), roots.end());
  const int K = static_cast<int>(roots.size());
  long theta_fit = 0;
  for (const auto& [pt, mult] : roots) {
    spec.a.push_back(pt);
    spec.mults.push_back(mult);
    theta_fit += mult;
  }

  // Vandermonde solve for the weights on the ss coroots
  Mat vander(K, K);
  for (int s = 0; s < K; ++s)
    for (int j = 0; j < K; ++j) vander.set(s, j, rat_pow(spec.a[j], s));
  LinSolver vsolve(vander);
  std::vector<std::vector<Rat>> lam_ss(K, std::vector<Rat>(src.rank, Rat(0)));
  for (int k = 0; k < src.rank; ++k) {
    std::vector<Rat> rhs(psi_samples[k].begin(), psi_samples[k].begin() + K);
    auto sol = vsolve.solve(rhs);
    if (!sol) {
      out.failure = "Vandermonde solve failed";
      return out;
    }
    for (int j = 0; j < K; ++j) lam_ss[j][k] = (*sol)[j];
  }
  // eps/delta representatives with value lam_ss[j] on the ss coroots
  const auto slots = g->coordinate_slots();
  Mat evalm(src.rank, g->epsdelta_dim());
  for (int k = 0; k < src.rank; ++k)
    for (int a = 0; a < g->epsdelta_dim(); ++a) {
      Rat v = g->ss.cartan_mats[k].at(slots[a], slots[a]);
      if (v != 0) evalm.set(k, a, v);
    }
  LinSolver esolve(evalm);
  for (int j = 0; j < K; ++j) {
    auto rep = esolve.solve(lam_ss[j]);
    if (!rep) {
      out.failure = "no eps/delta representative for a recovered weight";
      return out;
    }
    if (!g->dominance_certificate(*rep)) {
      out.failure = "recovered weight " + vec_to_string(*rep) + " is not dominant";
      return out;
    }
    spec.lambda.push_back(*rep);
  }
  for (long s = 0; s < theta_fit; ++s) spec.tau_window.push_back(tau_samples[s]);
  try {
    spec.validate();
  } catch (const std::exception& e) {
    out.failure = std::string("recovered spec invalid: ") + e.what();
    return out;
  }
  out.spec = spec;
  return out;
}

}  // namespace

TauModuleSpec normalize_spec(const TauModuleSpec& spec) {
  spec.validate();
  const SuperAlgebra& g = *spec.algebra;
  const int rank = static_cast<int>(g.ss.simple.size());
  std::vector<std::vector<Rat>> lam_ss;
  for (const auto& lam : spec.lambda) lam_ss.push_back(ss_cartan_values(g, lam));
  TauSeq tau = spec.tau();
  SeqSource src;
  src.rank = rank;
  src.theta = spec.ideal().theta();
  src.psi = [&](int k, long s) -> std::optional<Rat> {
    Rat acc(0);
    for (std::size_t j = 0; j < spec.a.size(); ++j)
      acc += rat_pow(spec.a[j], s) * lam_ss[j][k];
    return acc;
  };
  src.tau = [&](long s) -> std::optional<Rat> { return tau.at(s); };
  FitResult fit = fit_spec(src, spec.algebra, spec.b_offset);
  if (!fit.failure.empty())
    throw std::runtime_error("normalize_spec: " + fit.failure);
  return fit.spec;
}

Extraction extract_spec(const VhatModule& vhat) {
  const SuperAlgebra& g = *vhat.spec.algebra;
  const QuotientAlgebra& qa = *vhat.qa;
  const WeightModule& m = *vhat.carrier;
  Extraction out;
  SeqSource src;
  src.rank = static_cast<int>(g.ss.simple.size());
  src.theta = qa.ideal.theta();
  src.psi = [&](int k, long s) { return top_scalar(m, ss_cartan_at(g, qa, k, s)); };
  src.tau = [&](long s) { return top_scalar(m, qa.z_at(s)); };
  FitResult fit = fit_spec(src, vhat.spec.algebra, vhat.spec.b_offset);
  out.failure = fit.failure;
  out.spec = fit.spec;
  return out;
}

// ---- instance checks -------------------------------------------------

CheckReport check_odd_nilpotency(const VhatModule& vhat) {
  CheckReport rep;
  rep.check = "odd_nilpotency";
  rep.instance = spec_brief(vhat.spec);
  const SuperAlgebra& g = *vhat.spec.algebra;
  const QuotientAlgebra& qa = *vhat.qa;
  const WeightModule& m = *vhat.carrier;

  // lowering vector of the odd simple root, at every loop degree
  const std::vector<long>* odd_simple = nullptr;
  for (const auto& alpha : g.roots.simple)
    if (std::find(g.roots.pos_odd.begin(), g.roots.pos_odd.end(), alpha) !=
        g.roots.pos_odd.end())
      odd_simple = &alpha;
  if (!odd_simple) {
    rep.detail = "no odd simple root";
    return rep;
  }
  std::vector<long> neg(odd_simple->size());
  for (std::size_t i = 0; i < odd_simple->size(); ++i) neg[i] = -(*odd_simple)[i];
  const int f_idx = g.roots.root_space.at(neg);

  std::vector<Mat> family;
  for (long s = 0; s < qa.ideal.theta(); ++s)
    family.push_back(m.action[qa.index_of(f_idx, s)]);
  // the family pairwise anticommutes and squares to zero
  for (const auto& a : family)
    for (const auto& b : family)
      if (!(a * b + b * a).is_zero()) {
        rep.detail = "family fails to anticommute";
        return rep;
      }

  Subspace w = Subspace::span_vectors(m.dim, {unit_vec(m.dim, m.top)});
  long k = 0;
  while (w.dim() > 0 && k <= m.dim) {
    Mat rows(0, m.dim);
    for (const auto& a : family)
      for (int i = 0; i < w.dim(); ++i) {
        auto img = a.apply(dense_from_sparse(w.basis().row(i), m.dim));
        if (!vec_is_zero(img)) rows.append_row(sparse_from_dense(img));
      }
    w = Subspace::span_rows(rows);
    ++k;
  }
  rep.pass = w.dim() == 0 && k <= m.dim;
  rep.detail = "minimal k = " + std::to_string(k);
  return rep;
}

CheckReport check_hw_exists_module(const WeightModule& m, const std::string& instance) {
  CheckReport rep;
  rep.check = "hw_exists";
  rep.instance = instance;
  Mat stacked(0, m.dim);
  for (int i = 0; i < m.alg->dim; ++i) {
    if (m.alg->tri[i] != 1) continue;
    for (int r = 0; r < m.dim; ++r)
      if (!m.action[i].row(r).empty()) stacked.append_row(m.action[i].row(r));
  }
  Subspace ker = kernel(stacked);
  rep.pass = ker.dim() >= 1;
  std::string top_note;
  if (m.top >= 0)
    top_note = ker.contains(unit_vec(m.dim, m.top)) ? ", contains the top vector"
                                                    : ", top vector outside";
  rep.detail = "joint kernel dim = " + std::to_string(ker.dim()) + top_note;
  if (rep.pass && m.top >= 0 && !ker.contains(unit_vec(m.dim, m.top))) rep.pass = false;
  return rep;
}

CheckReport check_hw_exists(const VhatModule& vhat) {
  return check_hw_exists_module(*vhat.carrier, spec_brief(vhat.spec));
}

CheckReport check_T0_irreducible_module(const WeightModule& m, const QuotientAlgebra& qa,
                                        int v, const std::string& instance) {
  CheckReport rep;
  rep.check = "T0_irreducible";
  rep.instance = instance;
  // T0 image: h_k (x) t^s for all s in [0, theta)
  std::vector<Mat> gens;
  for (std::size_t k = 0; k < qa.base->cartan_idx.size(); ++k)
    for (long s = 0; s < qa.ideal.theta(); ++s)
      gens.push_back(m.act_combination(qa.cartan_at(static_cast<int>(k), s)));

  auto closure = [&](const std::vector<Rat>& seed) {
    Subspace w = Subspace::span_vectors(m.dim, {seed});
    while (true) {
      Mat rows = w.basis();
      int before = w.dim();
      for (const auto& a : gens)
        for (int i = 0; i < w.dim(); ++i) {
          auto img = a.apply(dense_from_sparse(w.basis().row(i), m.dim));
          if (!vec_is_zero(img)) rows.append_row(sparse_from_dense(img));
        }
      w = Subspace::span_rows(rows);
      if (w.dim() == before) return w;
    }
  };
  Subspace orbit = closure(unit_vec(m.dim, v));
  for (int i = 0; i < orbit.dim(); ++i) {
    auto u = dense_from_sparse(orbit.basis().row(i), m.dim);
    Subspace sub = closure(u);
    if (!sub.contains(unit_vec(m.dim, v))) {
      rep.pass = false;
      rep.detail = "orbit vector " + std::to_string(i) + " does not regenerate v";
      return rep;
    }
  }
  rep.pass = true;
  rep.detail = "orbit dim = " + std::to_string(orbit.dim());
  return rep;
}

CheckReport check_T0_irreducible(const VhatModule& vhat, long lo, long hi) {
  CheckReport rep = check_T0_irreducible_module(
      *vhat.carrier, *vhat.qa, vhat.carrier->top, spec_brief(vhat.spec));
  if (!rep.pass) return rep;

  // graded orbit of w(0) across the window
  const WeightModule& m = *vhat.carrier;
  const QuotientAlgebra& qa = *vhat.qa;
  const int n = m.dim;
  std::map<long, std::vector<Mat>> hop;
  for (long mm = lo - hi; mm <= hi - lo; ++mm) {
    std::vector<Mat> mats;
    for (std::size_t k = 0; k < qa.base->cartan_idx.size(); ++k)
      mats.push_back(m.act_combination(qa.cartan_at(static_cast<int>(k), mm)));
    hop.emplace(mm, std::move(mats));
  }
  auto graded_closure = [&](long s0, const std::vector<Rat>& seed) {
    std::map<long, Subspace> orbit;
    for (long s = lo; s <= hi; ++s) orbit[s] = Subspace::zero(n);
    orbit[s0] = Subspace::span_vectors(n, {seed});
    bool changed = true;
    while (changed) {
      changed = false;
      for (long s = lo; s <= hi; ++s) {
        if (orbit[s].dim() == 0) continue;
        for (long mm = lo - s; mm <= hi - s; ++mm) {
          Mat rows = orbit[s + mm].basis();
          for (const auto& a : hop[mm])
            for (int i = 0; i < orbit[s].dim(); ++i) {
              auto img = a.apply(dense_from_sparse(orbit[s].basis().row(i), n));
              if (!vec_is_zero(img)) rows.append_row(sparse_from_dense(img));
            }
          Subspace next = Subspace::span_rows(rows);
          if (next.dim() != orbit[s + mm].dim()) {
            orbit[s + mm] = next;
            changed = true;
          }
        }
      }
    }
    return orbit;
  };
  auto orbit = graded_closure(0, unit_vec(n, m.top));
  long total = 0;
  for (long s = lo; s <= hi; ++s) {
    total += orbit[s].dim();
    for (int i = 0; i < orbit[s].dim(); ++i) {
      auto u = dense_from_sparse(orbit[s].basis().row(i), n);
      auto sub = graded_closure(s, u);
      if (!sub[0].contains(unit_vec(n, m.top))) {
        rep.pass = false;
        rep.detail = "graded orbit vector at slice " + std::to_string(s) +
                     " does not regenerate w(0)";
        return rep;
      }
    }
  }
  rep.detail += ", graded orbit total dim = " + std::to_string(total);
  return rep;
}

CheckReport check_annihilator(const VhatModule& vhat) {
  CheckReport rep;
  rep.check = "annihilator";
  rep.instance = spec_brief(vhat.spec);
  const QuotientAlgebra& qa = *vhat.qa;
  const WeightModule& m = *vhat.carrier;
  const SuperAlgebra& g = *vhat.spec.algebra;
  const TauSeq tau = vhat.spec.tau();
  const auto& pc = qa.ideal.pcoeff();
  const long theta = qa.ideal.theta();

  // module tau/psi scalars equal the declared sequences
  for (long nseq = -theta; nseq <= 2 * theta; ++nseq) {
    auto c = top_scalar(m, qa.z_at(nseq));
    if (!c || *c != tau.at(nseq)) {
      rep.detail = "z (x) t^" + std::to_string(nseq) + " disagrees with tau";
      return rep;
    }
  }
  std::vector<std::vector<Rat>> lam_ss;
  for (const auto& lam : vhat.spec.lambda) lam_ss.push_back(ss_cartan_values(g, lam));
  for (std::size_t k = 0; k < g.ss.simple.size(); ++k)
    for (long nseq = -theta; nseq <= 2 * theta; ++nseq) {
      Rat expect(0);
      for (std::size_t j = 0; j < vhat.spec.a.size(); ++j)
        expect += rat_pow(vhat.spec.a[j], nseq) * lam_ss[j][k];
      auto c = top_scalar(m, ss_cartan_at(g, qa, static_cast<int>(k), nseq));
      if (!c || *c != expect) {
        rep.detail = "psi scalar mismatch at degree " + std::to_string(nseq);
        return rep;
      }
    }
  // recurrence residuals vanish: sum_i c_i tau_{i+s} = 0 and the same for psi
  for (long s = 0; s < theta; ++s) {
    Rat acc(0);
    for (long i = 0; i <= theta; ++i) acc += pc[i] * tau.at(i + s);
    if (acc != 0) {
      rep.detail = "tau recurrence residual nonzero at s=" + std::to_string(s);
      return rep;
    }
  }
  rep.pass = true;
  rep.detail = "scalar sequences and recurrence residuals verified";
  return rep;
}

CheckReport check_evaluation_criterion(const VhatModule& vhat) {
  CheckReport rep;
  rep.check = "evaluation_criterion";
  rep.instance = spec_brief(vhat.spec);
  const QuotientAlgebra& qa = *vhat.qa;
  const WeightModule& m = *vhat.carrier;
  const TauSeq tau = vhat.spec.tau();
  const bool ev = is_evaluation(tau);

  const IdealSpec radical = qa.ideal.radical();
  const auto& rc = radical.pcoeff();
  bool all_zero = true;
  std::string witness;
  for (long s = 0; s < qa.ideal.theta() && witness.empty(); ++s) {
    SparseRow comb;
    for (long i = 0; i <= radical.theta(); ++i)
      for (const auto& [idx, c] : qa.z_at(i + s)) comb.push_back({idx, c * rc[i]});
    Mat act = m.act_combination(comb);
    if (!act.is_zero()) {
      all_zero = false;
      for (int r = 0; r < act.rows() && witness.empty(); ++r)
        if (!act.row(r).empty())
          witness = "z (x) P'(t) t^" + std::to_string(s) + " has entry (" +
                    std::to_string(r) + "," + std::to_string(act.row(r)[0].first) +
                    ") = " + rat_to_string(act.row(r)[0].second);
    }
  }
  rep.pass = (ev == all_zero);
  rep.detail = std::string("is_evaluation = ") + (ev ? "true" : "false") +
               "; z (x) I' action " + (all_zero ? "vanishes" : witness);
  return rep;
}

CheckReport check_loop_decomposition(const TauModuleSpec& spec, long lo, long hi) {
  CheckReport rep;
  rep.check = "loop_decomposition";
  rep.instance = spec_brief(spec);
  const int r = combined_period(spec);
  if (r == 0) {
    rep.pass = true;
    rep.detail = "r = 0 (trivial module); decomposition degenerate";
    return rep;
  }
  VhatModule vhat = induce_and_reduce(spec);
  std::vector<Rat> v = unit_vec(vhat.carrier->dim, vhat.carrier->top);
  std::vector<LoopComponent> comps;
  long wlo = lo, whi = hi;
  for (int attempt = 0;; ++attempt) {
    try {
      comps = decompose_loop(vhat.graded, v, r, wlo, whi);
      break;
    } catch (const WindowTooSmallError& e) {
      if (attempt >= 3) {
        rep.detail = e.what();
        return rep;
      }
      wlo -= 2;
      whi += 2;
    }
  }
  if (static_cast<int>(comps.size()) != r) {
    rep.detail = "component count != r";
    return rep;
  }
  // regeneration spot check: every component is recovered, slice for slice on
  // the inner window, from a single one of its vectors
  const int n = vhat.carrier->dim;
  for (const auto& comp : comps) {
    long s0 = 0;
    const Subspace* seed = nullptr;
    for (const auto& [s, sub] : comp.slices)
      if (sub.dim() > 0 && !seed) {
        s0 = s;
        seed = &sub;
      }
    if (!seed) {
      rep.detail = "empty component";
      return rep;
    }
    std::vector<Rat> u = dense_from_sparse(seed->basis().row(0), n);
    auto regen = graded_closure(vhat.graded, s0, u, wlo, whi);
    for (long s = wlo + 2; s <= whi - 2; ++s) {
      if (!(regen.at(s) == comp.slices.at(s))) {
        rep.detail = "component not regenerated from a slice vector at slice " +
                     std::to_string(s);
        return rep;
      }
    }
  }
  rep.pass = true;
  std::string dims = "slice dims:";
  for (long s = lo; s <= hi; ++s) {
    dims += " " + std::to_string(s) + ":[";
    for (std::size_t i = 0; i < comps.size(); ++i)
      dims += (i ? "+" : "") + std::to_string(comps[i].slices.at(s).dim());
    dims += "]";
  }
  rep.detail = "r = " + std::to_string(r) + ", " + dims;
  return rep;
}

CheckReport check_main_theorem_instance(const VhatModule& vhat) {
  CheckReport rep;
  rep.check = "main_theorem_roundtrip";
  rep.instance = spec_brief(vhat.spec);

  Extraction ex = extract_spec(vhat);
  if (!ex.failure.empty()) {
    rep.detail = "extraction failed: " + ex.failure;
    return rep;
  }
  VhatModule rebuilt = induce_and_reduce(ex.spec);
  if (rebuilt.carrier->dim != vhat.carrier->dim) {
    rep.detail = "dimension mismatch: rebuilt " + std::to_string(rebuilt.carrier->dim) +
                 " vs " + std::to_string(vhat.carrier->dim);
    return rep;
  }
  if (weight_multiplicities(*rebuilt.carrier) != weight_multiplicities(*vhat.carrier)) {
    rep.detail = "weight multiplicity maps differ";
    return rep;
  }
  // top scalar sequences agree on a sufficient window
  const long win = vhat.qa->ideal.theta() + rebuilt.qa->ideal.theta();
  const SuperAlgebra& g = *vhat.spec.algebra;
  for (long s = 0; s < win; ++s) {
    auto t1 = top_scalar(*vhat.carrier, vhat.qa->z_at(s));
    auto t2 = top_scalar(*rebuilt.carrier, rebuilt.qa->z_at(s));
    if (!t1 || !t2 || *t1 != *t2) {
      rep.detail = "tau sequences differ at s=" + std::to_string(s);
      return rep;
    }
    for (std::size_t k = 0; k < g.ss.simple.size(); ++k) {
      auto p1 = top_scalar(*vhat.carrier, ss_cartan_at(g, *vhat.qa, k, s));
      auto p2 = top_scalar(*rebuilt.carrier, ss_cartan_at(g, *rebuilt.qa, k, s));
      if (!p1 || !p2 || *p1 != *p2) {
        rep.detail = "psi sequences differ at s=" + std::to_string(s);
        return rep;
      }
    }
  }
  TauModuleSpec declared = normalize_spec(vhat.spec);
  if (!iso_check_Gprime(declared, ex.spec)) {
    rep.detail = "recovered spec not G'-isomorphic to the declared one";
    return rep;
  }
  if (declared.b_offset != ex.spec.b_offset) {
    rep.detail = "grading offset mismatch";
    return rep;
  }
  rep.pass = true;
  rep.detail = "recovered " + spec_brief(ex.spec);
  return rep;
}

// ---- suites ----------------------------------------------------------

namespace {

std::mutex corpus_mu;

const VhatModule& corpus_module(const std::string& name) {
  static std::map<std::string, std::shared_ptr<VhatModule>> cache;
  std::lock_guard<std::mutex> lock(corpus_mu);
  auto it = cache.find(name);
  if (it == cache.end()) {
    for (const auto& inst : builtin_corpus())
      if (inst.name == name) {
        auto built = std::make_shared<VhatModule>(induce_and_reduce(inst.spec));
        it = cache.emplace(name, built).first;
        break;
      }
    if (it == cache.end()) throw std::invalid_argument("unknown corpus instance " + name);
  }
  return *it->second;
}

// super-Jacobi on structure constants
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
  std::map<int, Rat> lhs = bracket_elem(x, A.bracket[y][w]);
  std::map<int, Rat> rhs;
  for (const auto& [k, c] : A.bracket[x][y])
    for (const auto& [k2, c2] : A.bracket[k][w]) {
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

CheckReport check_structure(const std::string& which) {
  CheckReport rep;
  rep.check = "structure";
  rep.instance = which;
  std::shared_ptr<const SuperAlgebra> g;
  int expect_dim = 0;
  std::size_t expect_pos_even = 0, expect_pos_odd = 0, expect_simple = 0;
  if (which == "sl(2,1)") {
    g = shared_sl21();
    expect_dim = 8;
    expect_pos_even = 1;
    expect_pos_odd = 2;
    expect_simple = 2;
  } else if (which == "sl(3,1)") {
    g = shared_sl31();
    expect_dim = 15;
    expect_pos_even = 3;
    expect_pos_odd = 3;
    expect_simple = 3;
  } else if (which == "C(3)") {
    g = shared_c3();
    expect_dim = 19;
    expect_pos_even = 4;
    expect_pos_odd = 4;
    expect_simple = 3;
  } else {
    rep.detail = "unknown algebra";
    return rep;
  }
  const auto& A = *g->acting;
  for (int x = 0; x < A.dim; ++x)
    for (int y = 0; y < A.dim; ++y)
      for (int w = 0; w < A.dim; ++w)
        if (!acting_jacobi(A, x, y, w)) {
          rep.detail = "Jacobi fails at (" + A.labels[x] + "," + A.labels[y] + "," +
                       A.labels[w] + ")";
          return rep;
        }
  if (g->dim() != expect_dim) {
    rep.detail = "dim " + std::to_string(g->dim());
    return rep;
  }
  const RootDatum& rd = g->roots;
  if (rd.pos_even.size() != expect_pos_even || rd.pos_odd.size() != expect_pos_odd ||
      rd.simple.size() != expect_simple) {
    rep.detail = "root counts off";
    return rep;
  }
  // Gram matrix of the eps/delta form
  std::vector<int> expect_signs;
  if (which == "C(3)")
    expect_signs = {1, -1, -1};
  else if (which == "sl(2,1)")
    expect_signs = {1, 1, -1};
  else
    expect_signs = {1, 1, 1, -1};
  if (rd.form_signs != expect_signs) {
    rep.detail = "form signs off";
    return rep;
  }
  // supertrace of every basis element vanishes; z central in the even part
  for (const auto& el : g->basis)
    if (el.mat.supertrace() != 0) {
      rep.detail = "basis element with nonzero supertrace";
      return rep;
    }
  for (const auto& el : g->basis) {
    if (el.parity == 0 && !superbracket(g->z, el.mat).is_zero()) {
      rep.detail = "z does not commute with the even part";
      return rep;
    }
    if (el.zgrade == 1 || el.zgrade == -1) {
      for (const auto& el2 : g->basis)
        if (el2.zgrade == el.zgrade &&
            !superbracket(el.mat, el2.mat).is_zero()) {
          rep.detail = "[g_{+-1}, g_{+-1}] != 0";
          return rep;
        }
    }
  }
  rep.pass = true;
  rep.detail = "dim " + std::to_string(g->dim()) + ", Jacobi exact on all triples";
  return rep;
}

CheckReport check_c3_kernel_oracle() {
  CheckReport rep;
  rep.check = "structure_kernel_oracle";
  rep.instance = "C(3)";
  // independent route: kernel of the unrestricted constraint X^st B + B X
  const BlockShape shape{2, 4};
  const int N = 6;
  Mat bform(N, N);
  bform.set(0, 1, Rat(1));
  bform.set(1, 0, Rat(1));
  for (int k = 0; k < 2; ++k) {
    bform.set(2 + k, 4 + k, Rat(1));
    bform.set(4 + k, 2 + k, Rat(-1));
  }
  SuperMatrix b(shape, bform);
  Mat cmat(N * N, N * N);
  for (int a = 0; a < N; ++a)
    for (int c = 0; c < N; ++c) {
      SuperMatrix x = SuperMatrix::unit(shape, a, c);
      auto v = (x.supertranspose() * b + b * x).vectorized();
      for (int rc = 0; rc < N * N; ++rc)
        if (v[rc] != 0) cmat.add_at(rc, a * N + c, v[rc]);
    }
  int kdim = kernel(cmat).dim();
  rep.pass = kdim == 19 && shared_c3()->dim() == kdim;
  rep.detail = "constraint kernel dim = " + std::to_string(kdim) +
               " (1 + dim sp(4) + 2*4 = 19)";
  return rep;
}

CheckReport check_eval_kernel_random() {
  CheckReport rep;
  rep.check = "eval_zeta_kernel";
  rep.instance = "sl(2,1), K=3 randomized points";
  auto g = shared_sl21();
  // deterministic 'random' distinct nonzero rational points and small weights
  std::vector<Rat> pts{Rat(2), Rat(-3), Rat(1, 2)};
  std::vector<std::vector<Rat>> lams{
      {Rat(1), Rat(0), Rat(1)}, {Rat(0), Rat(0), Rat(1)}, {Rat(0), Rat(0), Rat(0)}};
  EvaluationModule ev = evaluation_module(g, lams, pts);
  const auto& pc = ev.qa.ideal.pcoeff();
  for (int i = 0; i < g->dim(); ++i)
    for (long s = 0; s < ev.qa.ideal.theta(); ++s) {
      Mat acc(ev.module.dim, ev.module.dim);
      for (std::size_t u = 0; u < pc.size(); ++u)
        if (pc[u] != 0)
          acc = acc + ev.direct_action(i, static_cast<long>(u) + s).scaled(pc[u]);
      if (!acc.is_zero()) {
        rep.detail = "x (x) P'(t) t^s nonzero for basis " + std::to_string(i);
        return rep;
      }
    }
  rep.pass = true;
  rep.detail = "x (x) P'(t) t^s = 0 for all " + std::to_string(g->dim()) +
               " basis elements, dim " + std::to_string(ev.module.dim);
  return rep;
}

CheckReport check_eval_crt() {
  CheckReport rep;
  rep.check = "eval_crt_consistency";
  rep.instance = "sl(2,1), K=2";
  auto g = shared_sl21();
  EvaluationModule ev = evaluation_module(
      g, {{Rat(0), Rat(0), Rat(1)}, {Rat(1), Rat(0), Rat(1)}}, {Rat(1), Rat(2)});
  for (int i = 0; i < g->dim(); ++i)
    for (long n = -2; n <= 4; ++n)
      if (!(ev.module.act_combination(ev.qa.reduce_element(i, n)) ==
            ev.direct_action(i, n))) {
        rep.detail = "reduced action differs from the direct formula";
        return rep;
      }
  rep.pass = true;
  rep.detail = "reduction route equals the evaluation formula on degrees -2..4";
  return rep;
}

CheckReport check_tau_closed_forms() {
  CheckReport rep;
  rep.check = "tau_recurrence_closed_forms";
  rep.instance = "(t-2) geometric; (t-1)^2 polynomial";
  TauSeq geo(IdealSpec({Rat(2)}, {1}), {Rat(1)});
  for (long s = -10; s <= 10; ++s)
    if (geo.at(s) != rat_pow(Rat(2), s)) {
      rep.detail = "geometric tau fails at s=" + std::to_string(s);
      return rep;
    }
  TauSeq lin(IdealSpec({Rat(1)}, {2}), {Rat(0), Rat(1)});
  for (long s = -10; s <= 10; ++s)
    if (lin.at(s) != Rat(s)) {
      rep.detail = "polynomial tau fails at s=" + std::to_string(s);
      return rep;
    }
  rep.pass = true;
  rep.detail = "tau_s = 2^s and tau_s = s verified on [-10, 10]";
  return rep;
}

CheckReport check_integrable_hw(const std::string& name) {
  const VhatModule& vhat = corpus_module(name);
  CheckReport rep;
  rep.check = "integrable_and_hw";
  rep.instance = name;
  if (!is_integrable(*vhat.carrier)) {
    rep.detail = "even Chevalley action not nilpotent";
    return rep;
  }
  CheckReport hw = check_hw_exists(vhat);
  rep.pass = hw.pass;
  rep.detail = "integrable; " + hw.detail;
  return rep;
}

CheckReport check_irreducible(const std::string& name) {
  const VhatModule& vhat = corpus_module(name);
  CheckReport rep;
  rep.check = "irreducible_carrier";
  rep.instance = name;
  rep.pass = is_irreducible(*vhat.carrier);
  rep.detail = "dim " + std::to_string(vhat.carrier->dim) + " (induced from " +
               std::to_string(vhat.induced_dim) + ")";
  return rep;
}

CheckReport check_iso_kappa_twist() {
  CheckReport rep;
  rep.check = "iso_kappa_twist";
  rep.instance = "sl(2,1), kappa = -1";
  auto g = shared_sl21();
  TauModuleSpec s1, s2;
  s1.algebra = s2.algebra = g;
  s1.lambda = s2.lambda = {{Rat(1), Rat(0), Rat(1)}};
  s1.a = {Rat(2)};
  s2.a = {Rat(-2)};
  s1.mults = s2.mults = {2};
  s1.tau_window = {Rat(1), Rat(3)};
  s2.tau_window = {Rat(1), Rat(-3)};
  auto w = iso_check_G(s1, s2);
  if (!w || w->kappa != Rat(-1)) {
    rep.detail = "twisted pair not accepted";
    return rep;
  }
  // tau-vs-2tau rejected
  TauModuleSpec s3 = s1;
  s3.tau_window = {Rat(2), Rat(6)};
  if (iso_check_G(s1, s3)) {
    rep.detail = "tau vs 2 tau wrongly accepted";
    return rep;
  }
  // permutation clause on K = 2 swaps
  TauModuleSpec p1, p2;
  p1.algebra = p2.algebra = g;
  p1.lambda = {{Rat(1), Rat(0), Rat(1)}, {Rat(0), Rat(0), Rat(0)}};
  p2.lambda = {{Rat(0), Rat(0), Rat(0)}, {Rat(1), Rat(0), Rat(1)}};
  p1.a = {Rat(2), Rat(3)};
  p2.a = {Rat(3), Rat(2)};
  p1.mults = p2.mults = {1, 1};
  TauSeq t = tau_from_eval({Rat(2), Rat(3)}, {Rat(1), Rat(0)});
  p1.tau_window = {t.at(0), t.at(1)};
  p2.tau_window = {t.at(0), t.at(1)};
  auto wp = iso_check_G(p1, p2);
  if (!wp || wp->kappa != Rat(1)) {
    rep.detail = "K=2 swap not accepted";
    return rep;
  }
  if (!iso_check_Gprime(p1, p2)) {
    rep.detail = "K=2 swap rejected by the G' criterion";
    return rep;
  }
  rep.pass = true;
  rep.detail = "kappa = -1 accepted with witness; tau scaling rejected; swap accepted";
  return rep;
}

CheckReport check_control_t0_reducible() {
  CheckReport rep;
  rep.check = "T0_irreducible";
  rep.instance = "control: direct sum with twisted tau";
  rep.negative_control = true;
  auto g = shared_sl21();
  TauModuleSpec s1, s2;
  s1.algebra = s2.algebra = g;
  s1.lambda = s2.lambda = {{Rat(0), Rat(0), Rat(1)}};
  s1.a = s2.a = {Rat(3)};
  s1.mults = s2.mults = {1};
  s1.tau_window = {Rat(2)};
  s2.tau_window = {Rat(4)};  // 2 tau: same ideal, different sequence
  VhatModule v1 = induce_and_reduce(s1);
  VhatModule v2 = induce_and_reduce(s2, v1.qa);
  WeightModule sum = direct_sum(*v1.carrier, *v2.carrier);
  // seed: the sum of the two top vectors
  std::vector<Rat> seed(sum.dim, Rat(0));
  seed[v1.carrier->top] = 1;
  seed[v1.carrier->dim + v2.carrier->top] = 1;
  // reuse the module check through a fresh top index: append the seed as a
  // synthetic check by running the closure logic below
  // (the orbit of seed is 2-dimensional; its basis vectors do not regenerate)
  std::vector<Mat> gens;
  for (std::size_t k = 0; k < v1.qa->base->cartan_idx.size(); ++k)
    for (long s = 0; s < v1.qa->ideal.theta(); ++s)
      gens.push_back(sum.act_combination(v1.qa->cartan_at(static_cast<int>(k), s)));
  auto closure = [&](const std::vector<Rat>& u) {
    Subspace w = Subspace::span_vectors(sum.dim, {u});
    while (true) {
      Mat rows = w.basis();
      int before = w.dim();
      for (const auto& a : gens)
        for (int i = 0; i < w.dim(); ++i) {
          auto img = a.apply(dense_from_sparse(w.basis().row(i), sum.dim));
          if (!vec_is_zero(img)) rows.append_row(sparse_from_dense(img));
        }
      w = Subspace::span_rows(rows);
      if (w.dim() == before) return w;
    }
  };
  Subspace orbit = closure(seed);
  bool regenerates_all = true;
  std::string witness;
  for (int i = 0; i < orbit.dim(); ++i) {
    auto u = dense_from_sparse(orbit.basis().row(i), sum.dim);
    if (!closure(u).contains(seed)) {
      regenerates_all = false;
      witness = "orbit basis vector " + std::to_string(i) + " generates a proper T0-submodule";
      break;
    }
  }
  rep.pass = regenerates_all;  // expected false
  rep.detail = regenerates_all ? "unexpectedly irreducible (orbit dim " +
                                     std::to_string(orbit.dim()) + ")"
                               : witness;
  return rep;
}

CheckReport check_control_corrupt_structure() {
  CheckReport rep;
  rep.check = "module_soundness";
  rep.instance = "control: corrupted structure constant";
  rep.negative_control = true;
  auto g = shared_sl21();
  WeightModule kac = kac_module(*g, hw_module_even(*g, {Rat(1), Rat(0), Rat(1)}));
  // corrupt one bracket entry of a copied acting algebra
  auto bad = std::make_shared<ActingAlgebra>(*g->acting);
  bool corrupted = false;
  for (int i = 0; i < bad->dim && !corrupted; ++i)
    for (int j = 0; j < bad->dim && !corrupted; ++j)
      if (!bad->bracket[i][j].empty()) {
        bad->bracket[i][j][0].second += 1;
        corrupted = true;
      }
  WeightModule tampered = kac;
  tampered.alg = bad;
  try {
    assert_module_sound(tampered, true);
    rep.pass = true;  // corruption NOT detected: the control failed to fail
    rep.detail = "corrupted table passed the soundness check";
  } catch (const std::exception& e) {
    rep.pass = false;  // expected: detection
    rep.detail = std::string("detected: ") + e.what();
  }
  return rep;
}

CheckReport check_control_nonev_annihilator() {
  CheckReport rep;
  rep.check = "annihilator_radical";
  rep.instance = "control: z (x) P'(t) on the non-evaluation instance";
  rep.negative_control = true;
  const VhatModule& vhat = corpus_module("sl21-tau-nonev-s");
  const QuotientAlgebra& qa = *vhat.qa;
  const IdealSpec radical = qa.ideal.radical();
  const auto& rc = radical.pcoeff();
  SparseRow comb;
  for (long i = 0; i <= radical.theta(); ++i)
    for (const auto& [idx, c] : qa.z_at(i)) comb.push_back({idx, c * rc[i]});
  Mat act = vhat.carrier->act_combination(comb);
  rep.pass = act.is_zero();  // expected false
  std::string entry;
  for (int r = 0; r < act.rows() && entry.empty(); ++r)
    if (!act.row(r).empty())
      entry = "(" + std::to_string(r) + "," + std::to_string(act.row(r)[0].first) +
              ") = " + rat_to_string(act.row(r)[0].second);
  rep.detail = rep.pass ? "z (x) P' vanished unexpectedly" : "nonzero entry " + entry;
  return rep;
}

struct Task {
  std::string name;
  std::function<CheckReport()> fn;
};

std::vector<Task> suite_tasks(const std::string& suite) {
  std::vector<Task> tasks;
  auto add = [&](std::function<CheckReport()> fn) { tasks.push_back({suite, std::move(fn)}); };

  if (suite == "structure") {
    add([] { return check_structure("sl(2,1)"); });
    add([] { return check_structure("sl(3,1)"); });
    add([] { return check_structure("C(3)"); });
    add([] { return check_c3_kernel_oracle(); });
  } else if (suite == "evaluation") {
    add([] { return check_eval_kernel_random(); });
    add([] { return check_eval_crt(); });
  } else if (suite == "loop") {
    add([] {
      return check_loop_decomposition(corpus_module("sl21-loop-r2").spec, -4, 4);
    });
    add([] {
      return check_loop_decomposition(corpus_module("c3-loop-r2").spec, -2, 2);
    });
    add([] {
      return check_loop_decomposition(corpus_module("sl21-eval-typical").spec, -2, 2);
    });
  } else if (suite == "tau") {
    add([] { return check_tau_closed_forms(); });
    for (const auto& inst : builtin_corpus()) {
      const std::string name = inst.name;
      add([name] { return check_annihilator(corpus_module(name)); });
      add([name] {
        CheckReport rep = check_evaluation_criterion(corpus_module(name));
        return rep;
      });
      add([name] { return check_integrable_hw(name); });
      add([name] { return check_irreducible(name); });
      add([name] { return check_odd_nilpotency(corpus_module(name)); });
      add([name] {
        const VhatModule& v = corpus_module(name);
        return check_T0_irreducible(v, -2, 2);
      });
    }
  } else if (suite == "iso") {
    add([] { return check_iso_kappa_twist(); });
  } else if (suite == "classification") {
    for (const auto& inst : builtin_corpus()) {
      const std::string name = inst.name;
      add([name] { return check_main_theorem_instance(corpus_module(name)); });
    }
  } else if (suite == "negative-controls") {
    add([] { return check_control_t0_reducible(); });
    add([] { return check_control_corrupt_structure(); });
    add([] { return check_control_nonev_annihilator(); });
  } else if (suite == "selftest-corrupt") {
    add([] {
      CheckReport rep = check_control_corrupt_structure();
      rep.negative_control = false;  // deliberately surfaced as a failure
      return rep;
    });
  } else {
    throw std::invalid_argument("unknown suite: " + suite);
  }
  return tasks;
}

}  // namespace

std::vector<std::string> suite_names() {
  return {"structure", "evaluation", "loop", "tau", "iso", "classification",
          "negative-controls"};
}

std::vector<CheckReport> run_suite(const std::string& name) {
  std::vector<Task> tasks;
  if (name == "all") {
    for (const auto& s : suite_names()) {
      auto t = suite_tasks(s);
      tasks.insert(tasks.end(), t.begin(), t.end());
    }
  } else {
    tasks = suite_tasks(name);
  }

  unsigned nthreads = std::thread::hardware_concurrency();
  if (nthreads == 0) nthreads = 2;
  if (const char* cap = std::getenv("SUPERLOOP_THREADS")) {
    long v = std::atol(cap);
    if (v >= 1 && v < static_cast<long>(nthreads)) nthreads = static_cast<unsigned>(v);
  }
  nthreads = std::min<unsigned>(nthreads, static_cast<unsigned>(tasks.size()) + 1);

  std::vector<CheckReport> reports(tasks.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    while (true) {
      std::size_t i = next.fetch_add(1);
      if (i >= tasks.size()) break;
      auto start = std::chrono::steady_clock::now();
      CheckReport rep;
      try {
        rep = tasks[i].fn();
      } catch (const std::exception& e) {
        rep.check = tasks[i].name;
        rep.instance = "exception";
        rep.pass = false;
        rep.detail = e.what();
      }
      rep.seconds =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      reports[i] = std::move(rep);
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 0; t + 1 < nthreads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  return reports;
}

int exit_code_for(const std::vector<CheckReport>& reports) {
  for (const auto& r : reports) {
    if (!r.negative_control && !r.pass) return 1;
    if (r.negative_control && r.pass) return 1;  // vacuous control
  }
  return 0;
}

}  // namespace superloop
