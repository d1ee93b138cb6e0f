#pragma once

#include <functional>

#include "superloop/weight_module.hpp"

namespace superloop {

/// Input of a type-I parabolic induction: a module for the zgrade-{0,+1}
/// part of `alg` with the +1 part acting by zero. `action_of` is consulted
/// for zgrade-0 basis elements only.
struct InductionInput {
  std::shared_ptr<const ActingAlgebra> alg;
  int v0_dim = 0;
  std::vector<Weight> v0_weights;  // on alg's Cartan basis
  std::vector<int> v0_parity;
  std::vector<std::string> v0_labels;
  int v0_top = 0;
  std::function<Mat(int alg_idx)> action_of;
};

/// Induced module on Lambda(minus part) (x) V0. Requires the minus part to
/// supercommute with itself (type I); the unique extension acts by wedge,
/// derivation, and bracket contraction.
WeightModule induce_type_i(const InductionInput& in);

/// Kac module of the full superalgebra from a g_0bar-module.
WeightModule kac_module(const SuperAlgebra& g, const WeightModule& v0);

}  // namespace superloop
