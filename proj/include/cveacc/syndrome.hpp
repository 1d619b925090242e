#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "cveacc/code.hpp"

namespace cveacc {

// Shift of each check observable M(h) under the displacement D(u), in units
// where the sqrt(pi) of D is divided out. One entry per row of code.H.
struct Syndrome {
  Vector values;

  int size() const { return static_cast<int>(values.size()); }
};

struct Correction {
  PhaseVector u_prime;
  std::optional<int> mode;  // 1-based, set by the single-mode decoder
  double residual = 0.0;
};

// s = Sigma u with row h of Sigma equal to (h_x | h_p): s_h = h_p . u_x + h_x . u_p.
Matrix syndrome_matrix(const ParityCheck& H);

Syndrome syndrome(const ParityCheck& H, const PhaseVector& u);
Syndrome syndrome(const CodeSpec& code, const PhaseVector& u);

// Least-squares fit of one mode hypothesis.
struct ModeHypothesis {
  int mode = 0;
  double p = 0.0;
  double x = 0.0;
  double residual = 0.0;
};

enum class DecodeStatus { Ok, Ambiguous, Uncorrectable };

struct SingleModeDecode {
  DecodeStatus status = DecodeStatus::Ok;
  Correction correction;
  // Sorted by residual, best first; empty for a zero syndrome.
  std::vector<ModeHypothesis> hypotheses;
};

// Ranks every single-mode hypothesis without throwing. A syndrome with norm
// <= tol decodes to the identity correction. The best hypothesis is accepted
// when its residual is <= tol * max(1, |s|); it is ambiguous when the runner-up
// is within tol * (1 + best residual).
SingleModeDecode rank_single_mode(const CodeSpec& code, const Syndrome& s,
                                  double tol = kDefaultTolerance);

// As rank_single_mode, but throws DecodeError unless the status is Ok.
Correction decode_single_mode(const CodeSpec& code, const Syndrome& s,
                              double tol = kDefaultTolerance);

// Minimum-norm u' with syndrome(u') = s (pseudoinverse solve).
Correction decode_min_norm(const CodeSpec& code, const Syndrome& s);

// Block functions of the canonical correctable set: R^l x R^c x R^c -> R^k.
using CanonicalBlockFn =
    std::function<Vector(const Vector& a, const Vector& a1, const Vector& a2)>;

// Canonical reversal vector u' with the b-block zeroed, laid out on the
// canonical modes (entangled, ancilla, data):
//   p = (a2, 0, alpha),  x = (a1, a, beta).
PhaseVector canonical_reverse(const CodeParameters& params, const Vector& a,
                              const Vector& a1, const Vector& a2,
                              const CanonicalBlockFn& alpha,
                              const CanonicalBlockFn& beta);

// Splits a canonical-code syndrome (rows: pair-u, isotropic, pair-v) into the
// reduced syndrome blocks (a, a1, a2).
struct ReducedSyndrome {
  Vector a;
  Vector a1;
  Vector a2;
};
ReducedSyndrome reduce(const CodeParameters& params, const Syndrome& s);

// True when u - u2 has a non-zero syndrome or lies in the span of the
// isotropic part of the decomposition.
bool is_correctable_pair(const CodeSpec& code, const PhaseVector& u,
                         const PhaseVector& u2, double tol = kDefaultTolerance);

}  // namespace cveacc
