#include "cveacc/gaussian.hpp"

#include <cmath>
#include <string>

namespace cveacc {

namespace {

void require_mode(const GaussianState& s, int mode, const char* what) {
  if (mode < 1 || mode > s.modes()) {
    throw DimensionError(std::string(what) + ": mode " + std::to_string(mode) +
                         " out of range for " + std::to_string(s.modes()) +
                         " modes");
  }
}

void require_squeezing(double r) {
  if (!(r >= 0.0) || !std::isfinite(r)) {
    throw DimensionError("squeezing parameter must be finite and >= 0");
  }
}

int quadrature_row(int n, int mode, Quadrature q) {
  return (q == Quadrature::X ? 0 : n) + mode - 1;
}

}  // namespace

GaussianState::GaussianState(RVector mean, RMatrix factor)
    : n_(static_cast<int>(mean.size() / 2)),
      mean_(std::move(mean)),
      factor_(std::move(factor)) {
  if (mean_.size() % 2 != 0 || factor_.rows() != mean_.size()) {
    throw DimensionError("GaussianState: mean has " +
                         std::to_string(mean_.size()) + " entries, factor has " +
                         std::to_string(factor_.rows()) + " rows");
  }
}

GaussianState GaussianState::vacuum(int n) {
  if (n < 0) throw DimensionError("vacuum: negative mode count");
  return {RVector::Zero(2 * n), RMatrix::Identity(2 * n, 2 * n)};
}

GaussianState GaussianState::coherent(double x, double p) {
  RVector mean(2);
  mean << x, p;
  return {std::move(mean), RMatrix::Identity(2, 2)};
}

GaussianState GaussianState::position_squeezed(double r) {
  require_squeezing(r);
  RMatrix f = RMatrix::Zero(2, 2);
  f(0, 0) = std::exp(-Real(r));
  f(1, 1) = std::exp(Real(r));
  return {RVector::Zero(2), std::move(f)};
}

GaussianState GaussianState::epr(double r) {
  require_squeezing(r);
  const Real lo = std::exp(-Real(r)) / std::sqrt(Real(2));
  const Real hi = std::exp(Real(r)) / std::sqrt(Real(2));
  // Rows x_A, x_B, p_A, p_B.
  RMatrix f(4, 4);
  f << hi, lo, 0, 0,
       hi, -lo, 0, 0,
       0, 0, lo, hi,
       0, 0, lo, -hi;
  return {RVector::Zero(4), std::move(f)};
}

Matrix GaussianState::cov() const { return cov_exact().cast<double>(); }

GaussianState prepare(StateKind kind, double r) {
  require_squeezing(r);
  switch (kind) {
    case StateKind::Vacuum:
      return GaussianState::vacuum(1);
    case StateKind::PositionSqueezed:
      return GaussianState::position_squeezed(r);
    case StateKind::Epr:
      return GaussianState::epr(r);
  }
  throw Error("prepare: unknown state kind");
}

GaussianState tensor(const GaussianState& a, const GaussianState& b) {
  const int na = a.modes();
  const int nb = b.modes();
  const int n = na + nb;
  const auto ka = a.factor().cols();
  const auto kb = b.factor().cols();

  RVector mean(2 * n);
  mean << a.mean_exact().head(na), b.mean_exact().head(nb),
      a.mean_exact().tail(na), b.mean_exact().tail(nb);

  RMatrix f = RMatrix::Zero(2 * n, ka + kb);
  f.block(0, 0, na, ka) = a.factor().topRows(na);
  f.block(na, ka, nb, kb) = b.factor().topRows(nb);
  f.block(n, 0, na, ka) = a.factor().bottomRows(na);
  f.block(n + na, ka, nb, kb) = b.factor().bottomRows(nb);
  return {std::move(mean), std::move(f)};
}

GaussianState apply_circuit(const GaussianState& state, const Circuit& circuit) {
  if (circuit.n != state.modes()) {
    throw DimensionError("apply_circuit: circuit on " + std::to_string(circuit.n) +
                         " modes, state has " + std::to_string(state.modes()));
  }
  RVector mean = state.mean_exact();
  RMatrix f = state.factor();
  for (const Gate& g : circuit.gates) {
    validate_gate(g, circuit.n);
    apply_gate_rows(g, circuit.n, mean);
    apply_gate_rows(g, circuit.n, f);
  }
  return {std::move(mean), std::move(f)};
}

GaussianState apply_inverse_circuit(const GaussianState& state, const Circuit& circuit) {
  if (circuit.n != state.modes()) {
    throw DimensionError("apply_inverse_circuit: circuit on " + std::to_string(circuit.n) +
                         " modes, state has " + std::to_string(state.modes()));
  }
  RVector mean = state.mean_exact();
  RMatrix f = state.factor();
  for (auto it = circuit.gates.rbegin(); it != circuit.gates.rend(); ++it) {
    validate_gate(*it, circuit.n);
    apply_inverse_gate_rows(*it, circuit.n, mean);
    apply_inverse_gate_rows(*it, circuit.n, f);
  }
  return {std::move(mean), std::move(f)};
}

GaussianState apply_action(const GaussianState& state, const QuadAction& action) {
  if (action.modes() != state.modes()) {
    throw DimensionError("apply_action: mode count mismatch");
  }
  const RMatrix a = action.matrix().cast<Real>();
  return {a * state.mean_exact(), a * state.factor()};
}

GaussianState displace(const GaussianState& state, const Vector& d) {
  if (d.size() != 2 * state.modes()) {
    throw DimensionError("displace: expected " + std::to_string(2 * state.modes()) +
                         " entries, got " + std::to_string(d.size()));
  }
  return {state.mean_exact() + d.cast<Real>(), state.factor()};
}

GaussianState condition_on(const GaussianState& state, int mode,
                           Quadrature quadrature, double value) {
  require_mode(state, mode, "homodyne");
  const int n = state.modes();
  const int q = quadrature_row(n, mode, quadrature);
  const RMatrix& f = state.factor();

  const auto s = f.row(q);
  const Real s_norm2 = s.squaredNorm();
  if (!(s_norm2 > Real(0))) {
    throw Error("homodyne: measured quadrature has non-positive variance");
  }
  // cov(:, q) = f s^T / 2 and var(q) = |s|^2 / 2.
  const RVector fs = f * s.transpose();
  const RVector mean =
      state.mean_exact() + fs * ((Real(value) - state.mean_exact()[q]) / s_norm2);
  const RMatrix projected = f - fs * (s / s_norm2);

  // Drop rows x_mode and p_mode.
  const int keep = n - 1;
  RVector out_mean(2 * keep);
  RMatrix out_f(2 * keep, f.cols());
  int row = 0;
  for (int half = 0; half < 2; ++half) {
    for (int i = 0; i < n; ++i) {
      if (i == mode - 1) continue;
      out_mean[row] = mean[half * n + i];
      out_f.row(row) = projected.row(half * n + i);
      ++row;
    }
  }
  return {std::move(out_mean), std::move(out_f)};
}

HomodyneRecord homodyne(const GaussianState& state, int mode,
                        Quadrature quadrature, Rng& rng) {
  require_mode(state, mode, "homodyne");
  const int q = quadrature_row(state.modes(), mode, quadrature);
  const Real variance = state.factor().row(q).squaredNorm() / Real(2);
  if (!(variance > Real(0))) {
    throw Error("homodyne: measured quadrature has non-positive variance");
  }
  std::normal_distribution<double> normal(0.0, 1.0);
  const double outcome = static_cast<double>(state.mean_exact()[q] +
                                             std::sqrt(variance) * normal(rng));
  return {mode, quadrature, outcome, condition_on(state, mode, quadrature, outcome)};
}

GaussianState phase_gate_protocol(const GaussianState& state, int mode, double g1,
                                  double g2, double r, Rng& rng) {
  require_mode(state, mode, "phase_gate_protocol");
  require_squeezing(r);
  const int n = state.modes();
  const int anc = n + 1;

  GaussianState joint = tensor(state, GaussianState::position_squeezed(r));
  const Circuit coupling{n + 1,
                         {Gate::qnd_x(mode, anc, g1), Gate::fourier(anc),
                          Gate::qnd_p(anc, mode, g2)}};
  joint = apply_circuit(joint, coupling);

  const HomodyneRecord record = homodyne(joint, anc, Quadrature::X, rng);
  Vector kick = Vector::Zero(2 * n);
  kick[n + mode - 1] = -g1 * record.outcome;
  return displace(record.posterior, kick);
}

Moments observable_moments(const GaussianState& state, const Vector& coeffs) {
  if (coeffs.size() != 2 * state.modes()) {
    throw DimensionError("observable_moments: coefficient length mismatch");
  }
  const RVector c = coeffs.cast<Real>();
  const Real mean = c.dot(state.mean_exact());
  const Real variance = (state.factor().transpose() * c).squaredNorm() / Real(2);
  return {static_cast<double>(mean), static_cast<double>(variance)};
}

double uncertainty_min_eigenvalue(const GaussianState& state) {
  const int n = state.modes();
  if (n == 0) return 0.0;
  // cov + (i/2) Omega >= 0  <=>  [[cov, -Omega/2], [Omega/2, cov]] >= 0
  const Matrix cov = state.cov();
  const Matrix half_omega = form_matrix(n) / 2.0;
  Matrix real_form(4 * n, 4 * n);
  real_form << cov, -half_omega, half_omega, cov;
  Eigen::SelfAdjointEigenSolver<Matrix> solver(real_form, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

}  // namespace cveacc
