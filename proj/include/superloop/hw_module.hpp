#pragma once

#include "superloop/weight_module.hpp"

namespace superloop {

/// Weight value list of an eps/delta coordinate vector on the ss Cartan
/// basis (the coroots of the even simple roots).
std::vector<Rat> ss_cartan_values(const SuperAlgebra& g,
                                  const std::vector<Rat>& lam_epsdelta);

/// Height of lam - w0(lam) over the ss simple roots: the depth of the lowest
/// weight of V(lam). The truncation bound is this plus one.
long verma_depth_bound(const SuperAlgebra& g, const std::vector<Rat>& lam_epsdelta);

/// Truncated Verma module for g_ss on the PBW monomial basis of depth <=
/// `depth`. Raising and toral actions are exact; the lowering action is cut
/// at the depth boundary, which the irreducible quotient never sees.
WeightModule truncated_verma(const SuperAlgebra& g,
                             const std::vector<Rat>& lam_epsdelta, long depth);

/// The finite-dimensional irreducible g_ss-module V(lam) for a dominant
/// integral lam (given in eps/delta coordinates; non-dominant input throws).
WeightModule hw_module_ss(const SuperAlgebra& g, const std::vector<Rat>& lam_epsdelta);

/// V(lam) as a g_0bar-module: z acts by the scalar lam(z).
WeightModule hw_module_even(const SuperAlgebra& g, const std::vector<Rat>& lam_epsdelta);

}  // namespace superloop
