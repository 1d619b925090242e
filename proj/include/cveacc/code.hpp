#pragma once

#include <span>
#include <vector>

#include "cveacc/decomposition.hpp"
#include "cveacc/phase_space.hpp"

namespace cveacc {

struct ParityCheck {
  int n = 0;
  std::vector<PhaseVector> rows;

  int size() const { return static_cast<int>(rows.size()); }
  Matrix matrix() const;
};

// Parity check extended by Bob's c entangled modes. Rows are PhaseVectors on
// n + c modes, so the coordinate layout is (p-half | p-aug | x-half | x-aug)
// and the ordinary symplectic product applies.
struct AugmentedParityCheck {
  int n_alice = 0;
  int c = 0;
  std::vector<PhaseVector> rows;

  Matrix matrix() const;
  // Largest |h_i . h_j| over row pairs; zero for a commuting check set.
  double commutation_defect() const;
};

struct CodeSpec {
  CodeParameters params;
  // Rows as supplied by the caller.
  ParityCheck input;
  // Normalised rows u_1..u_c, u_{c+1}..u_{c+l}, v_1..v_c.
  ParityCheck H;
  SymplecticDecomposition decomposition;
  AugmentedParityCheck H_aug;
  ParityCheck F;
  AugmentedParityCheck F_aug;
  // Maps u_i -> e_i and v_i -> e_{n+i}; H upsilon^T = F.
  SympMatrix upsilon;
};

// Mode roles of the canonical encoder. Entangled modes come first so that the
// hyperbolic pairs land on (e_i, e_{n+i}), then ancillas, then data:
//   Alice 1..c entangled halves, c+1..c+l ancillas, c+l+1..n data,
//   Bob n+1..n+c partner halves.
enum class ModeRole { Entangled, Ancilla, Data, Bob };

struct ModeLayout {
  CodeParameters params;
  std::vector<ModeRole> roles;  // n + c entries, index = mode - 1

  // 1-based mode numbers.
  std::vector<int> modes_with(ModeRole role) const;
};

ModeLayout canonical_encode_layout(const CodeParameters& params);

// Rows: x-checks on the entangled modes, x-checks on the ancillas, p-checks on
// the entangled modes (pair-u rows, isotropic rows, pair-v rows).
ParityCheck canonical_parity_check(const CodeParameters& params);

// The decomposition whose ordered_vectors() are the rows of
// canonical_parity_check(params).
SymplecticDecomposition canonical_decomposition(const CodeParameters& params);

// Row u_j gains -1 in p-aug column j, row v_j gains +1 in x-aug column j,
// isotropic rows gain zeros. H's rows must equal dec.ordered_vectors().
AugmentedParityCheck augment(const ParityCheck& H,
                             const SymplecticDecomposition& dec,
                             double tol = kDefaultTolerance);

// Decomposes, completes the basis, inverts it and verifies the result. Throws
// VerificationError if H upsilon^T != F (1e-8) or upsilon is not symplectic.
CodeSpec build_code(std::span<const PhaseVector> rows,
                    double tol = kDefaultTolerance);

// Tolerances used by build_code's self-check.
inline constexpr double kParityMapTolerance = 1e-8;
inline constexpr double kSymplecticTolerance = 1e-9;

// max |H upsilon^T - F| (row-wise).
double parity_map_defect(const CodeSpec& code);

}  // namespace cveacc
