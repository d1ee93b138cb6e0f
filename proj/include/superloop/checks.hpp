#pragma once

#include <functional>
#include <optional>

#include "superloop/tau.hpp"

namespace superloop {

/// Outcome of one executable instance check. Failing reports carry a witness
/// description; negative controls are expected to fail.
struct CheckReport {
  std::string check;
  std::string instance;
  bool pass = false;
  bool negative_control = false;
  std::string detail;
  double seconds = 0;

  std::string json() const;  // one JSON-lines record
};

/// Minimal monic annihilating polynomial (ascending coefficients, q_L = 1)
/// of a sequence sampled on a window; {1} for the zero sequence. The window
/// must hold at least twice the true order.
std::vector<Rat> berlekamp_massey(const std::vector<Rat>& samples);

/// Monic gcd / lcm over Q[t] (ascending coefficients).
std::vector<Rat> poly_gcd(std::vector<Rat> a, std::vector<Rat> b);
std::vector<Rat> poly_lcm(const std::vector<Rat>& a, const std::vector<Rat>& b);

/// Roots with multiplicity of a monic rational polynomial; throws when an
/// irrational factor survives deflation.
std::vector<std::pair<Rat, long>> rational_roots(std::vector<Rat> ascending);

/// Recomputes a spec's support from its own psi/tau data: drops invisible
/// points, trims multiplicities to the minimal annihilator, and rereads the
/// tau window. The result generates an isomorphic V(psi,tau).
TauModuleSpec normalize_spec(const TauModuleSpec& spec);

/// Reads (lambda, a, mults, tau window, b) back off a constructed module:
/// scalar sequences on the highest weight line, minimal recurrences, root
/// support, and a Vandermonde solve for the weights.
struct Extraction {
  TauModuleSpec spec;
  std::string failure;  // nonempty when extraction could not complete
};
Extraction extract_spec(const VhatModule& vhat);

// ---- instance checks -------------------------------------------------

/// Minimal k such that every length-k product of the odd lowering family
/// (lowest odd root vector at all loop degrees) kills v.
CheckReport check_odd_nilpotency(const VhatModule& vhat);

/// Joint kernel of the raising part is nonzero (and contains the top).
CheckReport check_hw_exists(const VhatModule& vhat);
CheckReport check_hw_exists_module(const WeightModule& m, const std::string& instance);

/// U(T0) w(0) is T0-irreducible: every vector of the finite orbit
/// regenerates the w(0) line. The graded variant walks slices in a window.
CheckReport check_T0_irreducible(const VhatModule& vhat, long lo, long hi);
CheckReport check_T0_irreducible_module(const WeightModule& m, const QuotientAlgebra& qa,
                                        int v, const std::string& instance);

/// (g (x) I) V = 0 along non-vacuous routes: the top-line recurrence residual
/// for z, and the direct evaluation formula when an evaluation route exists.
CheckReport check_annihilator(const VhatModule& vhat);

/// Lemma-level criterion, both directions: is_evaluation(tau) iff
/// z (x) P'(t) acts by zero.
CheckReport check_evaluation_criterion(const VhatModule& vhat);

/// Loop decomposition at the combined period r: component count, slice-wise
/// exhaustion and zero pairwise intersection on the window, and a
/// regeneration spot check per component.
CheckReport check_loop_decomposition(const TauModuleSpec& spec, long lo, long hi);

/// Classification round trip: extract, rebuild, and certify the rebuilt
/// module against the original (dimensions, weights, sequences, iso class).
CheckReport check_main_theorem_instance(const VhatModule& vhat);

// ---- suites ----------------------------------------------------------

std::vector<std::string> suite_names();

/// Runs one named suite ("all" for everything) over the built-in corpus.
/// Checks run concurrently on a small pool capped by SUPERLOOP_THREADS.
std::vector<CheckReport> run_suite(const std::string& name);

/// 0 when every non-control check passed and every control failed; 1 else.
int exit_code_for(const std::vector<CheckReport>& reports);

}  // namespace superloop
