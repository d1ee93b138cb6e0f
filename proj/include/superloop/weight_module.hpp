#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "superloop/algebra.hpp"

namespace superloop {

/// A weight as its value list along the acting algebra's Cartan basis.
struct Weight {
  std::vector<Rat> hvals;

  friend bool operator==(const Weight& a, const Weight& b) { return a.hvals == b.hvals; }
  friend bool operator<(const Weight& a, const Weight& b) { return a.hvals < b.hvals; }
  std::string str() const { return vec_to_string(hvals); }
};

/// A finite-dimensional weight module: weight-labeled basis plus exact action
/// matrices for every basis element of the acting algebra. Immutable once built.
struct WeightModule {
  std::shared_ptr<const ActingAlgebra> alg;
  int dim = 0;
  std::vector<Weight> weights;  // per basis vector
  std::vector<int> parity;      // per basis vector, 0/1
  std::vector<std::string> labels;
  std::vector<Mat> action;      // aligned with alg basis indices
  int top = -1;                 // distinguished cyclic weight vector, when known

  const Mat& act(int alg_idx) const { return action[alg_idx]; }
  /// Action matrix of a linear combination of algebra basis elements.
  Mat act_combination(const std::vector<Rat>& coeffs) const;
  Mat act_combination(const SparseRow& coeffs) const;
};

/// a b - (-1)^{pa pb} b a.
Mat super_commutator(const Mat& a, const Mat& b, int pa, int pb);

/// Exact structural validation: Cartan actions are diagonal and match the
/// weight labels, operators respect parity, and action([x,y]) equals the
/// supercommutator of actions for basis pairs (all pairs, or only Chevalley
/// and Cartan generators when `all_pairs` is false).
void assert_module_sound(const WeightModule& m, bool all_pairs = false);

/// Smallest action-invariant subspace containing the seeds.
Subspace submodule_closure(const WeightModule& m,
                           const std::vector<std::vector<Rat>>& seeds);
Subspace submodule_closure(const WeightModule& m, int basis_index);

std::map<Weight, long> weight_multiplicities(const WeightModule& m);

/// Even Chevalley pairs act nilpotently (exact image-chain test).
bool is_integrable(const WeightModule& m);

/// Exact irreducibility. Uses the cyclicity certificate through a
/// multiplicity-one weight when one exists; otherwise falls back to the
/// basis-vector closure scan, which can only certify reducibility. A module
/// that defeats both paths raises.
bool is_irreducible(const WeightModule& m);

struct QuotientResult {
  WeightModule module;
  Mat projection;  // quotient coordinates of each old coordinate, q x dim
};

/// Quotient by an action-invariant proper subspace (invariance is rechecked).
QuotientResult quotient_by(const WeightModule& m, const Subspace& n);

/// Head of a cyclic module: quotient by the largest invariant subspace
/// avoiding the generator line. Requires the generator's weight to have
/// multiplicity one; throws a descriptive error when v is not cyclic.
WeightModule irreducible_quotient(const WeightModule& m, int v);

/// Tensor product over a common acting algebra with the Koszul sign rule.
WeightModule tensor(const std::vector<const WeightModule*>& factors);

/// Mixed-radix helper shared by tensor-style constructions: embeds a factor
/// operator into the product with the Koszul sign of the operator's parity.
struct TensorShape {
  std::vector<int> dims;                    // per slot
  std::vector<std::vector<int>> parities;   // per slot, per basis vector
  int total() const;
  int compose(const std::vector<int>& tuple) const;
  std::vector<int> decompose(int index) const;
  /// sum of parities of slots before `slot` in the given tuple
  int sign_exponent(const std::vector<int>& tuple, int slot) const;
  Mat embed(const Mat& op, int slot, int op_parity) const;
};

}  // namespace superloop
