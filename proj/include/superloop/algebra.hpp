#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "superloop/supermatrix.hpp"

namespace superloop {

/// Structure-constant view of a finite-dimensional Lie superalgebra, the
/// common currency of every module builder. Instances are immutable.
struct ActingAlgebra {
  std::string name;
  int dim = 0;
  std::vector<std::string> labels;
  std::vector<int> parity;  // 0/1 per basis element
  /// Z-grading class used by type-I induction: -1, 0, +1.
  std::vector<int> zgrade;
  /// Triangular class: -1 negative root vector, 0 toral, +1 positive.
  std::vector<int> tri;
  /// Loop degree of each basis element (0 for plain algebras).
  std::vector<int> tdeg;
  /// bracket[i][j] = [b_i, b_j] expanded over the basis.
  std::vector<std::vector<SparseRow>> bracket;
  /// Indices of the Cartan basis; module weights are value lists along it.
  std::vector<int> cartan;
  /// ad-eigenvalue row per basis element: eigen[i][k] under ad(cartan[k]).
  /// Cartan members get the zero row.
  std::vector<std::vector<Rat>> cartan_eigen;
  /// (e, f) index pairs attached to even simple roots; the integrability test
  /// checks exactly these for nilpotency.
  std::vector<std::pair<int, int>> even_chevalley;
  int z_index = -1;  // basis index of z (z (x) t^0 for quotients), -1 if untracked

  SparseRow bracket_of(int i, int j) const { return bracket[i][j]; }
};

struct AlgebraElement {
  SuperMatrix mat;
  std::string label;
  int parity = 0;
  int zgrade = 0;
  int tri = 0;
  std::vector<long> root;  // eps/delta coordinates; empty for Cartan elements
};

enum class AlgebraKind { SL, C };

struct RootDatum {
  std::vector<std::vector<long>> simple;    // Pi, paper order
  std::vector<std::vector<long>> pos_even;  // Delta_0^+
  std::vector<std::vector<long>> pos_odd;   // Delta_1^+
  std::vector<int> form_signs;              // diagonal Gram of (.,.) on eps/delta
  /// root (eps/delta coords) -> basis index of its 1-dim root space
  std::map<std::vector<long>, int> root_space;
};

struct Triangular {
  Subspace n_minus, h, n_plus;   // coordinate subspaces of the basis span
  Subspace g_minus1, g_zero, g_plus1;  // the Z-grading
};

/// Chevalley data for one simple root of the semisimple even part.
struct SsSimple {
  std::vector<long> alpha;  // eps/delta coordinates
  int e = -1, f = -1, h = -1;  // ss-acting basis indices
};

/// One positive root of g_ss with its height and root-vector indices.
struct SsPosRoot {
  std::vector<long> alpha;
  long height = 0;             // sum of simple-root coefficients
  int e = -1, f = -1;          // ss-acting basis indices of g_alpha, g_-alpha
};

/// The semisimple part g_ss of the even subalgebra, packaged for the
/// highest-weight machinery.
struct SsData {
  std::shared_ptr<const ActingAlgebra> acting;
  std::vector<SsSimple> simple;
  std::vector<SsPosRoot> pos_roots;   // sorted by (height, coords)
  std::vector<SuperMatrix> cartan_mats;   // coroot matrices, ss Cartan order
  std::shared_ptr<LinSolver> even_split;  // factors g_0bar as g_ss (+) C z
};

class SuperAlgebra {
 public:
  AlgebraKind kind;
  int m = 0, n = 0;  // sl(m,n); for C(m) only m is meaningful
  BlockShape shape;
  std::vector<AlgebraElement> basis;
  std::vector<int> cartan_idx;  // positions of the Cartan elements in `basis`
  SuperMatrix z;                // canonical central element of g_0bar
  std::vector<Rat> z_coords;    // z expanded over `basis`

  RootDatum roots;
  SsData ss;
  std::shared_ptr<const ActingAlgebra> acting;       // the full superalgebra
  std::shared_ptr<const ActingAlgebra> acting_even;  // g_0bar
  std::vector<int> even_to_full;

  SuperAlgebra() : z(SuperMatrix::zero({0, 0})) {}

  int dim() const { return static_cast<int>(basis.size()); }
  int cartan_dim() const { return static_cast<int>(cartan_idx.size()); }
  int epsdelta_dim() const;
  std::string descriptor() const;  // "sl(2,1)" or "C(3)"

  /// Coordinates of x over `basis`; throws when x is outside the span.
  std::vector<Rat> coords(const SuperMatrix& x) const;
  bool in_span(const SuperMatrix& x) const;

  /// Value lists on the Cartan basis <-> eps/delta coordinate vectors.
  std::vector<Rat> cartan_values_from_epsdelta(const std::vector<Rat>& coords) const;
  std::vector<Rat> epsdelta_from_cartan_values(const std::vector<Rat>& hvals) const;
  /// Bilinear form on eps/delta coordinate vectors.
  Rat form(const std::vector<Rat>& x, const std::vector<Rat>& y) const;
  /// Weight value on z of an eps/delta coordinate vector.
  Rat lambda_z(const std::vector<Rat>& epsdelta) const;
  /// Splits an even element as (g_ss coordinates, z coefficient).
  struct EvenSplit {
    std::vector<Rat> ss_coords;  // over the ss acting basis
    Rat z_coeff;
  };
  EvenSplit split_even(const SuperMatrix& x) const;

  /// Dominance pairings 2(lam,alpha)/(alpha,alpha) against the ss simple
  /// roots; nonempty exactly when all are nonnegative integers.
  std::optional<std::vector<long>> dominance_certificate(
      const std::vector<Rat>& epsdelta) const;

  /// Diagonal matrix positions carrying the eps/delta coordinates.
  std::vector<int> coordinate_slots() const;

 private:
  friend SuperAlgebra build_sl(int m, int n);
  friend SuperAlgebra build_c(int m);
  std::shared_ptr<LinSolver> coord_solver_;
  std::shared_ptr<LinSolver> epsdelta_solver_;  // cartan values -> representative
  void finalize();  // fills roots/ss/acting/solvers; called by builders
};

/// sl(m,n), m != n (the m = n family is out of scope and rejected).
SuperAlgebra build_sl(int m, int n);

/// C(m) = osp(2|2m-2) for m >= 3, cut out of gl(2,2m-2) by X^st B + B X = 0.
SuperAlgebra build_c(int m);

const RootDatum& root_datum(const SuperAlgebra& a);
SuperMatrix z_center(const SuperAlgebra& a);
Triangular triangular(const SuperAlgebra& a);

/// Builds the structure-constant view of a matrix-realized (sub)algebra.
/// Throws when the given elements are not closed under the superbracket.
std::shared_ptr<const ActingAlgebra> acting_from_elements(
    const std::string& name, const std::vector<AlgebraElement>& elems,
    const std::vector<int>& cartan,
    const std::vector<std::pair<int, int>>& even_chevalley, int z_index);

}  // namespace superloop
