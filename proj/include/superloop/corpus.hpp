#pragma once

#include "superloop/tau.hpp"

namespace superloop {

/// One built-in regression instance: a spec with its expected invariants.
struct CorpusInstance {
  std::string name;
  TauModuleSpec spec;
  bool expect_evaluation = false;
  int expect_r = 1;
};

/// The desk-scale regression corpus: evaluation, r=2 loop, and
/// non-evaluation tau instances over sl(2,1) and C(3).
const std::vector<CorpusInstance>& builtin_corpus();

std::shared_ptr<const SuperAlgebra> shared_sl21();
std::shared_ptr<const SuperAlgebra> shared_sl31();
std::shared_ptr<const SuperAlgebra> shared_c3();

/// Direct sum over a common acting algebra (negative-control fixtures).
WeightModule direct_sum(const WeightModule& a, const WeightModule& b);

}  // namespace superloop
