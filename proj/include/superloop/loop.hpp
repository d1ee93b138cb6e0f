#pragma once

#include "superloop/kac.hpp"
#include "superloop/laurent.hpp"
#include "superloop/weight_module.hpp"

namespace superloop {

/// The finite-dimensional Lie superalgebra g (x) L/I on the basis
/// { x_i (x) t^s : 0 <= s < theta }, with brackets reduced mod P(t).
struct QuotientAlgebra {
  std::shared_ptr<const SuperAlgebra> base;
  IdealSpec ideal;
  std::shared_ptr<const ActingAlgebra> acting;

  int index_of(int base_idx, long s) const {
    return base_idx * static_cast<int>(ideal.theta()) + static_cast<int>(s);
  }
  int base_of(int idx) const { return idx / static_cast<int>(ideal.theta()); }
  int tdeg_of(int idx) const { return idx % static_cast<int>(ideal.theta()); }

  /// x_i (x) t^n for arbitrary n, as a combination of acting basis elements.
  SparseRow reduce_element(int base_idx, long n) const;
  /// z (x) t^n (z is a combination of Cartan elements of the base).
  SparseRow z_at(long n) const;
  /// h (x) t^n for the k-th Cartan element of the base.
  SparseRow cartan_at(int k, long n) const;

  /// Evaluation coefficients a_j^s of the Chinese-remainder isomorphism
  /// g (x) L/I' ~ g^{(+)K}; only for radical ideals.
  std::vector<std::vector<Rat>> crt_coefficients() const;
};

QuotientAlgebra quotient_algebra(std::shared_ptr<const SuperAlgebra> base, IdealSpec ideal);

/// The scalars psi(h (x) t^m) = sum_j a_j^m lam_j(h) attached to an
/// evaluation datum, on the full Cartan basis and on z.
struct PsiData {
  std::vector<std::vector<Rat>> lam_hvals;  // per point, on the full Cartan basis
  std::vector<Rat> lam_z;                   // lam_j(z)
  std::vector<Rat> points;

  Rat on_cartan(std::size_t k, long m) const;
  Rat on_z(long m) const;
  /// stacked value vector (Cartan values then z) at degree m
  std::vector<Rat> vec(long m) const;
};

PsiData psi_from(const SuperAlgebra& g,
                 const std::vector<std::vector<Rat>>& lam_epsdelta,
                 const std::vector<Rat>& points);

/// Largest r with psi vanishing off r Z, decided by theta-length windows per
/// residue class; 0 iff every lam_j is 0. Over Q only r in {0,1,2} can occur.
int detect_period(const SuperAlgebra& g,
                  const std::vector<std::vector<Rat>>& lam_epsdelta,
                  const std::vector<Rat>& points);

/// Window-certified period of a family of sequences that all satisfy one
/// order-`order` linear recurrence with invertible end coefficients.
int detect_period_sequences(
    const std::vector<std::function<Rat(long)>>& seqs, long order);

/// V(lam_1) (x) ... (x) V(lam_K) with x (x) t^m acting by sum_j a_j^m rho_j(x),
/// a module for g (x) L/I' at the radical ideal of the points.
struct EvaluationModule {
  QuotientAlgebra qa;
  WeightModule module;
  std::vector<int> factor_dims;
  /// Per base element and tensor slot, the embedded factor operator; the
  /// direct route below bypasses polynomial reduction entirely.
  std::vector<std::vector<Mat>> slot_action;

  /// Action of x (x) t^n straight from the evaluation formula
  /// sum_j a_j^n rho_j(x), for any integer n.
  Mat direct_action(int base_idx, long n) const;
};
EvaluationModule evaluation_module(std::shared_ptr<const SuperAlgebra> base,
                                   const std::vector<std::vector<Rat>>& lam_epsdelta,
                                   const std::vector<Rat>& points);

/// Z-graded module V (x) L on a degree window: slice s is a copy of V,
/// x(m) maps slice s to slice s+m through the reduction of x (x) t^m, and d
/// acts on slice s by s + b.
struct GradedLoopModule {
  std::shared_ptr<const WeightModule> carrier;
  std::shared_ptr<const QuotientAlgebra> qa;
  Rat b_offset;

  Mat act(int base_idx, long m) const;
  Rat d_eigenvalue(long s) const { return Rat(s) + b_offset; }
};

GradedLoopModule loop_module(std::shared_ptr<const WeightModule> carrier,
                             std::shared_ptr<const QuotientAlgebra> qa, Rat b_offset);

struct WindowTooSmallError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct LoopComponent {
  long seed_slice = 0;
  std::map<long, Subspace> slices;  // window slice -> content
};

/// Fixpoint closure of a seeded slice vector under every hop x(m) that keeps
/// the window; the building block of the decomposition and its checks.
std::map<long, Subspace> graded_closure(const GradedLoopModule& glm, long seed_slice,
                                        const std::vector<Rat>& seed, long lo, long hi);

/// The cyclic components U(G) v(i), i = 0..r-1, materialized on the window.
/// Certifies slice-wise direct-sum exhaustion; throws WindowTooSmallError if
/// closure fails to exhaust some slice within the window.
std::vector<LoopComponent> decompose_loop(const GradedLoopModule& glm,
                                          const std::vector<Rat>& v, int r,
                                          long lo, long hi);

}  // namespace superloop
