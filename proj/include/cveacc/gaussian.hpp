#pragma once

// Gaussian states over n modes in (x|p) quadrature ordering, hbar = 1, vacuum
// variance 1/2.
//
// A state is stored as its mean and a factor S with cov = S S^T / 2. Large
// squeezing (r = 20 puts e^{2r} ~ 1e17 on the anti-squeezed diagonal) makes the
// plain covariance useless after a few gates: homodyne conditioning subtracts
// two numbers of that size. Working on S keeps every entry at e^{r} and the
// conditioning becomes a projection, which is exact up to rounding of S itself.
// Arithmetic is done in long double for the same reason.

#include <cstdint>
#include <random>

#include "cveacc/optics.hpp"
#include "cveacc/phase_space.hpp"

namespace cveacc {

using Real = long double;
using RVector = Eigen::Matrix<Real, Eigen::Dynamic, 1>;
using RMatrix = Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic>;
using Rng = std::mt19937_64;

class GaussianState {
 public:
  GaussianState() = default;
  // factor has 2n rows and any number of columns.
  GaussianState(RVector mean, RMatrix factor);

  static GaussianState vacuum(int n = 1);
  static GaussianState coherent(double x, double p);
  // cov = diag(e^{-2r}, e^{2r}) / 2
  static GaussianState position_squeezed(double r);
  // Two-mode squeezed vacuum: var(x_A - x_B) = var(p_A + p_B) = e^{-2r}.
  static GaussianState epr(double r);

  int modes() const { return n_; }
  Vector mean() const { return mean_.cast<double>(); }
  Matrix cov() const;

  const RVector& mean_exact() const { return mean_; }
  const RMatrix& factor() const { return factor_; }
  RMatrix cov_exact() const { return factor_ * factor_.transpose() / Real(2); }

 private:
  int n_ = 0;
  RVector mean_;
  RMatrix factor_;
};

enum class StateKind { Vacuum, PositionSqueezed, Epr };
enum class Quadrature { X, P };

// Throws DimensionError on negative r.
GaussianState prepare(StateKind kind, double r = 0.0);

// Modes of a followed by modes of b.
GaussianState tensor(const GaussianState& a, const GaussianState& b);

// mean -> A mean, cov -> A cov A^T with A = circuit_action(circuit).
GaussianState apply_circuit(const GaussianState& state, const Circuit& circuit);
// Applies the exact inverse of `circuit` (see apply_inverse_gate_rows).
GaussianState apply_inverse_circuit(const GaussianState& state, const Circuit& circuit);
GaussianState apply_action(const GaussianState& state, const QuadAction& action);

// mean += d (2n entries, (x|p) order).
GaussianState displace(const GaussianState& state, const Vector& d);

// Posterior after observing `value` for the given quadrature; the measured mode
// is traced out. Throws Error if the quadrature has non-positive variance.
GaussianState condition_on(const GaussianState& state, int mode,
                           Quadrature quadrature, double value);

struct HomodyneRecord {
  int mode = 0;
  Quadrature quadrature = Quadrature::X;
  double outcome = 0.0;
  GaussianState posterior;
};

HomodyneRecord homodyne(const GaussianState& state, int mode,
                        Quadrature quadrature, Rng& rng);

// Measurement-based position phase gate on `mode`: appends a position-squeezed
// ancilla, runs QND_X(mode, anc, g1), FOURIER(anc), QND_P(anc, mode, g2),
// homodynes the ancilla's position (result v) and kicks the data momentum by
// -g1 v. Net effect: p -> p + 2 g1 g2 x plus noise g2 x_anc.
GaussianState phase_gate_protocol(const GaussianState& state, int mode, double g1,
                                  double g2, double r, Rng& rng);

struct Moments {
  double mean = 0.0;
  double variance = 0.0;
};

// Moments of the observable coeffs . R (coeffs in (x|p) order, so a PhaseVector
// u gives M(u)).
Moments observable_moments(const GaussianState& state, const Vector& coeffs);

// Smallest eigenvalue of the real form of cov + (i/2) Omega; non-negative for a
// physical state.
double uncertainty_min_eigenvalue(const GaussianState& state);

}  // namespace cveacc
