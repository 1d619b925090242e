#pragma once

#include <span>
#include <vector>

#include "cveacc/phase_space.hpp"

namespace cveacc {

struct HyperbolicPair {
  PhaseVector u;
  PhaseVector v;  // u . v = 1
};

// Rowspace split into c hyperbolic pairs and an l-dimensional isotropic part.
struct SymplecticDecomposition {
  int n = 0;
  std::vector<HyperbolicPair> pairs;
  std::vector<PhaseVector> isotropic;

  // Indices of input rows discarded as linearly dependent.
  std::vector<int> dropped_rows;
  // For every stored vector, the input row it was seeded from, in the order
  // u_1..u_c, isotropic_1..isotropic_l, v_1..v_c.
  std::vector<int> sources;

  int c() const { return static_cast<int>(pairs.size()); }
  int l() const { return static_cast<int>(isotropic.size()); }
  int rank() const { return 2 * c() + l(); }

  // u_1..u_c, isotropic_1..isotropic_l, v_1..v_c
  std::vector<PhaseVector> ordered_vectors() const;
};

struct CodeParameters {
  int n = 0;
  int k = 0;
  int l = 0;
  int c = 0;

  bool operator==(const CodeParameters&) const = default;
};

// Full symplectic basis (u_1..u_n, v_1..v_n) with u_i . v_j = delta_ij.
struct SymplecticBasis {
  int n = 0;
  std::vector<PhaseVector> u;
  std::vector<PhaseVector> v;

  // Columns u_1..u_n, v_1..v_n. Symplectic by construction.
  Matrix matrix() const;
};

// Pairwise symplectic products G_ij = w_i . w_j.
Matrix gram_matrix(const std::vector<PhaseVector>& vectors);

// Canonical Gram form for the ordered_vectors() layout: +1 at (i, c+l+i),
// -1 at (c+l+i, i), zero elsewhere.
Matrix canonical_gram_form(int c, int l);

// Max deviation of the decomposition's Gram matrix from the canonical form.
double gram_defect(const SymplecticDecomposition& dec);

// Drops dependent rows (greedy, in input order) and then splits the span into
// hyperbolic pairs and isotropic vectors. For each remaining vector w (taken
// in order) the partner z with the largest |w . z| is chosen, ties going to
// the lowest index; |w . z| <= tol * max(1, |w| |z|) counts as zero. Pairs are
// projected out of every remaining vector so residuals stay orthogonal.
SymplecticDecomposition symplectic_gram_schmidt(
    std::span<const PhaseVector> rows, double tol = kDefaultTolerance);

// Extends a decomposition to a full symplectic basis of R^2n. The first c
// pairs and the isotropic vectors (as u_{c+1}..u_{c+l}) are kept verbatim.
SymplecticBasis complete_symplectic_basis(const SymplecticDecomposition& dec,
                                          double tol = kDefaultTolerance);

CodeParameters code_parameters(const SymplecticDecomposition& dec);

}  // namespace cveacc
