#pragma once

#include <mutex>
#include <optional>

#include "superloop/loop.hpp"

namespace superloop {

/// Bi-infinite solution of the order-theta recurrence
/// sum_{i=0}^{theta} c_i tau_{i+m} = 0, pinned by the window
/// tau_0, ..., tau_{theta-1}. Backward extension uses c_0 != 0.
class TauSeq {
 public:
  TauSeq(IdealSpec ideal, std::vector<Rat> window);
  TauSeq(const TauSeq& o) : ideal_(o.ideal_), window_(o.window_) {}
  TauSeq& operator=(const TauSeq& o);

  const IdealSpec& ideal() const { return ideal_; }
  const std::vector<Rat>& window() const { return window_; }
  Rat at(long s) const;
  bool is_zero_sequence() const;

 private:
  IdealSpec ideal_;
  std::vector<Rat> window_;
  mutable std::map<long, Rat> memo_;
  mutable std::mutex mu_;
};

/// tau_s = sum_j zeta_j a_j^s over the radical ideal at the points.
TauSeq tau_from_eval(const std::vector<Rat>& points, const std::vector<Rat>& zeta);

/// Evaluation criterion: tau kills z (x) I' iff it satisfies the radical
/// recurrence, decided on theta consecutive residuals.
bool is_evaluation(const TauSeq& tau);

/// Assembled data of one V-hat(phi, tau) instance.
struct TauModuleSpec {
  std::shared_ptr<const SuperAlgebra> algebra;
  std::vector<std::vector<Rat>> lambda;  // eps/delta; only the ss part acts
  std::vector<Rat> a;
  std::vector<long> mults;
  std::vector<Rat> tau_window;  // length theta
  Rat b_offset = Rat(0);

  IdealSpec ideal() const { return IdealSpec(a, mults); }
  TauSeq tau() const { return TauSeq(ideal(), tau_window); }
  void validate() const;  // throws on malformed data
};

/// V0(psi, tau): simple module for the parabolic zgrade >= 0 part of
/// g (x) L/I, with n1+ (x) L acting by zero, g_ss (x) L by evaluation and
/// z (x) t^s by tau_s.
struct ParabolicModule {
  std::shared_ptr<const ActingAlgebra> acting;  // the parabolic subalgebra
  std::vector<int> to_quotient;                 // parabolic idx -> quotient idx
  WeightModule module;
};
ParabolicModule build_v0(const TauModuleSpec& spec, const QuotientAlgebra& qa);

/// The finite realization of V-hat(phi, tau): the irreducible carrier
/// V(psi, tau) together with its graded wrapper at offset b.
struct VhatModule {
  TauModuleSpec spec;
  std::shared_ptr<const QuotientAlgebra> qa;
  std::shared_ptr<const WeightModule> carrier;  // irreducible V(psi, tau)
  int induced_dim = 0;                          // dim M(psi, tau)
  GradedLoopModule graded;
};

/// Builds M(psi, tau) on Lambda(n1- (x) L/I) (x) V0 and passes to the
/// irreducible quotient at the top vector.
VhatModule induce_and_reduce(const TauModuleSpec& spec);

/// Same, over a caller-supplied quotient algebra (the spec's ideal must
/// match); lets several instances share one acting algebra.
VhatModule induce_and_reduce(const TauModuleSpec& spec,
                             std::shared_ptr<const QuotientAlgebra> qa);

/// Period r of the combined graded character (psi on h_ss and tau on z).
int combined_period(const TauModuleSpec& spec);

/// G'-isomorphism (Prop.-level criterion): tau sequences equal and the
/// (lambda_j, a_j) pairs match up to a permutation.
bool iso_check_Gprime(const TauModuleSpec& s1, const TauModuleSpec& s2);

struct IsoWitness {
  Rat kappa;
  std::vector<int> sigma;  // s2 data j corresponds to s1 data sigma[j]
};

/// G-isomorphism: b' = b (mod r) and a witnessing (kappa, sigma) with
/// lambda' = sigma(lambda), a' = kappa sigma(a), tau'_i = kappa^i tau_i.
std::optional<IsoWitness> iso_check_G(const TauModuleSpec& s1, const TauModuleSpec& s2);

}  // namespace superloop
