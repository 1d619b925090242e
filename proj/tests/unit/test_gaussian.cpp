#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "cveacc/experiment.hpp"
#include "cveacc/gaussian.hpp"
#include "cveacc/selftest.hpp"
#include "support/oracles.hpp"

using namespace cveacc;

namespace {

double deviation(const Matrix& a, const Matrix& b) { return (a - b).cwiseAbs().maxCoeff(); }

Vector coeffs(std::initializer_list<double> values) {
  Vector v(static_cast<Eigen::Index>(values.size()));
  Eigen::Index i = 0;
  for (double x : values) v[i++] = x;
  return v;
}

GaussianState random_state(std::mt19937_64& rng, int n) {
  GaussianState s = GaussianState::vacuum(n);
  s = apply_circuit(s, oracle::random_circuit(rng, n, 6 * n));
  return displace(s, oracle::random_vector(rng, n).entries());
}

}  // namespace

TEST(Prepare, Covariances) {
  EXPECT_LE(deviation(prepare(StateKind::Vacuum).cov(), 0.5 * Matrix::Identity(2, 2)), 0.0);

  const double r = 1.3;
  const Matrix sq = prepare(StateKind::PositionSqueezed, r).cov();
  EXPECT_NEAR(sq(0, 0), 0.5 * std::exp(-2 * r), 1e-15);
  EXPECT_NEAR(sq(1, 1), 0.5 * std::exp(2 * r), 1e-12);
  EXPECT_NEAR(sq(0, 1), 0.0, 1e-15);

  const GaussianState epr = prepare(StateKind::Epr, r);
  ASSERT_EQ(epr.modes(), 2);
  EXPECT_NEAR(observable_moments(epr, coeffs({1, -1, 0, 0})).variance, std::exp(-2 * r), 1e-14);
  EXPECT_NEAR(observable_moments(epr, coeffs({0, 0, 1, 1})).variance, std::exp(-2 * r), 1e-14);
  EXPECT_NEAR(epr.cov()(0, 0), 0.5 * std::cosh(2 * r), 1e-12);
  EXPECT_TRUE(epr.mean().isZero(0.0));

  EXPECT_THROW(prepare(StateKind::Epr, -0.1), DimensionError);
  EXPECT_THROW(prepare(StateKind::PositionSqueezed, -1.0), DimensionError);
}

TEST(Prepare, TensorIsBlockDiagonal) {
  const GaussianState s = tensor(GaussianState::coherent(1.0, 2.0), prepare(StateKind::PositionSqueezed, 1.0));
  ASSERT_EQ(s.modes(), 2);
  EXPECT_EQ(s.mean(), coeffs({1, 0, 2, 0}));
  EXPECT_NEAR(s.cov()(1, 1), 0.5 * std::exp(-2.0), 1e-15);
  EXPECT_EQ(s.cov()(0, 1), 0.0);
}

TEST(Evolution, CircuitExamples) {
  const GaussianState fourier = apply_circuit(GaussianState::coherent(1.0, 2.0), {1, {Gate::fourier(1)}});
  EXPECT_EQ(fourier.mean(), coeffs({-2, 1}));

  const GaussianState squeezed = apply_circuit(GaussianState::vacuum(1), {1, {Gate::squeeze(1, 2.0)}});
  EXPECT_NEAR(squeezed.cov()(0, 0), 2.0, 1e-15);
  EXPECT_NEAR(squeezed.cov()(1, 1), 0.125, 1e-15);

  const GaussianState phase =
      apply_circuit(GaussianState::coherent(1.0, 0.5), {1, {Gate::phase_x(1, 2.0)}});
  EXPECT_LE((phase.mean() - coeffs({1, 2.5})).norm(), 1e-15);
  Matrix expected(2, 2);
  expected << 0.5, 1.0, 1.0, 2.5;
  EXPECT_LE(deviation(phase.cov(), expected), 1e-15);
}

TEST(Evolution, MatchesActionConjugation) {
  std::mt19937_64 rng(1);
  for (int i = 0; i < 20; ++i) {
    const int n = 1 + i % 4;
    const GaussianState s = random_state(rng, n);
    const Circuit c = oracle::random_circuit(rng, n, 10);
    const Matrix a = oracle::product_of(c);
    const GaussianState out = apply_circuit(s, c);
    EXPECT_LE((out.mean() - a * s.mean()).norm(), 1e-10);
    EXPECT_LE(deviation(out.cov(), a * s.cov() * a.transpose()), 1e-9 * (1 + s.cov().norm()));
    EXPECT_LE(deviation(apply_action(s, QuadAction(a)).cov(), out.cov()), 1e-9 * (1 + out.cov().norm()));

    const GaussianState back = apply_inverse_circuit(out, c);
    EXPECT_LE((back.mean() - s.mean()).norm(), 1e-9);
    EXPECT_LE(deviation(back.cov(), s.cov()), 1e-9);
  }
}

TEST(Evolution, PurityAndUncertainty) {
  std::mt19937_64 rng(2);
  for (int i = 0; i < 30; ++i) {
    const int n = 1 + i % 4;
    const GaussianState s = random_state(rng, n);
    EXPECT_NEAR(s.cov().determinant(), std::pow(0.25, n), 1e-8 * std::pow(0.25, n) * 1e3);
    EXPECT_GE(uncertainty_min_eigenvalue(s), -1e-9);
  }
  EXPECT_GE(uncertainty_min_eigenvalue(prepare(StateKind::Epr, 3.0)), -1e-9);
}

TEST(Evolution, Displace) {
  const GaussianState s = displace(GaussianState::vacuum(2), coeffs({1, 2, 3, 4}));
  EXPECT_EQ(s.mean(), coeffs({1, 2, 3, 4}));
  EXPECT_THROW(displace(s, coeffs({1, 2})), DimensionError);
}

TEST(Homodyne, OutcomeStatistics) {
  Rng rng(3);
  const GaussianState s = apply_circuit(GaussianState::coherent(0.7, -1.2), {1, {Gate::squeeze(1, 1.5)}});
  const double mean = s.mean()[0], var = s.cov()(0, 0);
  const int samples = 100000;
  double sum = 0.0, sq = 0.0;
  for (int i = 0; i < samples; ++i) {
    const double v = homodyne(s, 1, Quadrature::X, rng).outcome;
    sum += v;
    sq += v * v;
  }
  const double m = sum / samples;
  const double sample_var = sq / samples - m * m;
  EXPECT_NEAR(m, mean, 4.0 * std::sqrt(var / samples));
  EXPECT_NEAR(sample_var, var, 4.0 * var * std::sqrt(2.0 / samples));
}

TEST(Homodyne, ProductStatePosteriorUnchanged) {
  Rng rng(4);
  const GaussianState data = GaussianState::coherent(1.0, 2.0);
  const HomodyneRecord rec =
      homodyne(tensor(data, prepare(StateKind::PositionSqueezed, 2.0)), 2, Quadrature::P, rng);
  EXPECT_EQ(rec.mode, 2);
  ASSERT_EQ(rec.posterior.modes(), 1);
  EXPECT_LE((rec.posterior.mean() - data.mean()).norm(), 1e-15);
  EXPECT_LE(deviation(rec.posterior.cov(), data.cov()), 1e-15);
}

// Posterior of a Gaussian after observing one coordinate: Schur complement.
TEST(Homodyne, ConditioningMatchesSchurComplement) {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 30; ++i) {
    const int n = 2 + i % 3;
    const GaussianState s = i == 0 ? prepare(StateKind::Epr, 1.0) : random_state(rng, n);
    const int nn = s.modes();
    const int mode = 1 + i % nn;
    const Quadrature q = i % 2 ? Quadrature::P : Quadrature::X;
    const int idx = (q == Quadrature::X ? 0 : nn) + mode - 1;
    const double value = 0.37 - 0.1 * i;

    const Matrix cov = s.cov();
    const Vector mu = s.mean();
    std::vector<int> keep;
    for (int j = 0; j < 2 * nn; ++j) {
      if (j != mode - 1 && j != nn + mode - 1) keep.push_back(j);
    }
    Vector mu_post(keep.size());
    Matrix cov_post(keep.size(), keep.size());
    for (std::size_t a = 0; a < keep.size(); ++a) {
      mu_post[a] = mu[keep[a]] + cov(keep[a], idx) / cov(idx, idx) * (value - mu[idx]);
      for (std::size_t b = 0; b < keep.size(); ++b) {
        cov_post(a, b) =
            cov(keep[a], keep[b]) - cov(keep[a], idx) * cov(idx, keep[b]) / cov(idx, idx);
      }
    }
    const GaussianState post = condition_on(s, mode, q, value);
    ASSERT_EQ(post.modes(), nn - 1);
    EXPECT_LE((post.mean() - mu_post).norm(), 1e-9);
    EXPECT_LE(deviation(post.cov(), cov_post), 1e-9);
  }
}

TEST(Homodyne, EprTeleportsPosition) {
  // Measuring x_A = v on a strongly squeezed pair pins x_B near v.
  const GaussianState post = condition_on(prepare(StateKind::Epr, 4.0), 1, Quadrature::X, 0.8);
  EXPECT_NEAR(post.mean()[0], 0.8, 1e-3);
  EXPECT_LT(post.cov()(0, 0), 1e-3);
}

TEST(Homodyne, RejectsBadMode) {
  Rng rng(6);
  EXPECT_THROW(homodyne(GaussianState::vacuum(2), 3, Quadrature::X, rng), DimensionError);
  EXPECT_THROW(condition_on(GaussianState::vacuum(2), 0, Quadrature::X, 0.0), DimensionError);
}

TEST(PhaseProtocol, ZeroSecondCouplingIsIdentity) {
  Rng rng(7);
  const GaussianState in = apply_circuit(GaussianState::coherent(0.4, -0.9), {1, {Gate::squeeze(1, 1.3)}});
  for (double r : {0.5, 5.0}) {
    const GaussianState out = phase_gate_protocol(in, 1, 0.8, 0.0, r, rng);
    EXPECT_LE((out.mean() - in.mean()).norm(), 1e-9);
    EXPECT_LE(deviation(out.cov(), in.cov()), 1e-9);
  }
}

// Linear model over independent (x, p, x_anc, p_anc): after feedforward the
// outputs are x and p + 2 g1 g2 x + g2 x_anc, and the record is
// v = -p_anc - g2 x. Conditioning on v is a Schur complement.
TEST(PhaseProtocol, PosteriorMatchesLinearModel) {
  Rng rng(8);
  const double g1 = 1.0, g2 = 0.5, r = 5.0;
  const double s = std::exp(-2 * r) / 2;
  const Vector d = coeffs({0.5, 0.5, s, 0.25 / s});
  Matrix lin(3, 4);
  lin << 1, 0, 0, 0,
         2 * g1 * g2, 1, g2, 0,
         -g2, 0, 0, -1;
  const Matrix joint = lin * d.asDiagonal() * lin.transpose();
  const Matrix expected = joint.topLeftCorner(2, 2) -
                          joint.topRightCorner(2, 1) * joint.bottomLeftCorner(1, 2) / joint(2, 2);

  const GaussianState out = phase_gate_protocol(GaussianState::coherent(0.3, -0.2), 1, g1, g2, r, rng);
  ASSERT_EQ(out.modes(), 1);
  EXPECT_LE(deviation(out.cov(), expected), 1e-12);
  // Averaged over records the momentum picks up g2^2 e^{-2r} / 2.
  const double marginal = joint(1, 1) - 1.0;
  EXPECT_NEAR(marginal, g2 * g2 * s, 1e-15);
}

TEST(PhaseProtocol, StrongSqueezingMatchesIdealGate) {
  Rng rng(9);
  const GaussianState in = GaussianState::coherent(1.0, 0.5);
  const GaussianState ideal = apply_circuit(in, {1, {Gate::phase_x(1, 2.0)}});
  for (int i = 0; i < 20; ++i) {
    const GaussianState out = phase_gate_protocol(in, 1, 1.0, 1.0, 20.0, rng);
    EXPECT_LE((out.mean() - ideal.mean()).norm(), 1e-6);
    EXPECT_LE(deviation(out.cov(), ideal.cov()), 1e-6);
  }
}

TEST(Stabilizers, EncodedChecksHaveSqueezedVariance) {
  const double r = 5.0;
  const CodeSpec code = build_code(worked_example_fixtures().H.rows);
  std::mt19937_64 rng(10);
  for (const CodeSpec& c : {code, build_code(oracle::random_rows(rng, 3, 2)),
                            build_code(canonical_parity_check({3, 1, 1, 1}).rows)}) {
    const auto& p = c.params;
    Vector data(2 * p.k);
    for (int i = 0; i < 2 * p.k; ++i) data[i] = 0.3 * (i + 1);
    GaussianState s = canonical_input_state(p, r, data);
    s = apply_circuit(s, widen(compile_encoder(c), p.n + p.c));
    for (const PhaseVector& row : c.H_aug.rows) {
      const Moments m = observable_moments(s, row.entries());
      EXPECT_NEAR(m.mean, 0.0, 1e-9 * (1 + row.norm()));
      EXPECT_LE(m.variance, std::exp(-2 * r) * (1 + 1e-6));
    }
  }
}
