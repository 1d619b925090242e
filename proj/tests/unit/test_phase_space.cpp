#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "cveacc/code.hpp"
#include "support/oracles.hpp"

using namespace cveacc;

namespace {

PhaseVector pv(std::initializer_list<double> p, std::initializer_list<double> x) {
  Vector pp(static_cast<Eigen::Index>(p.size())), xx(static_cast<Eigen::Index>(x.size()));
  Eigen::Index i = 0;
  for (double v : p) pp[i++] = v;
  i = 0;
  for (double v : x) xx[i++] = v;
  return PhaseVector::from_blocks(pp, xx);
}

}  // namespace

TEST(PhaseVector, RejectsBadShapes) {
  EXPECT_THROW(PhaseVector(Vector(3)), DimensionError);
  EXPECT_THROW(PhaseVector(Vector(0)), DimensionError);
  Vector v = Vector::Zero(2);
  v[1] = std::nan("");
  EXPECT_THROW(PhaseVector{v}, DimensionError);
  EXPECT_THROW(PhaseVector::single_mode(2, 3, 1.0, 1.0), DimensionError);
}

TEST(PhaseVector, BlockLayoutIsMomentumFirst) {
  const PhaseVector u = PhaseVector::single_mode(3, 2, 0.5, -1.5);
  EXPECT_EQ(u.modes(), 3);
  EXPECT_DOUBLE_EQ(u[1], 0.5);
  EXPECT_DOUBLE_EQ(u[4], -1.5);
  EXPECT_DOUBLE_EQ(u.p(1), 0.5);
  EXPECT_DOUBLE_EQ(u.x(1), -1.5);
}

TEST(SymplecticProduct, HyperbolicPairFromWorkedExample) {
  EXPECT_DOUBLE_EQ(symplectic_product(pv({1, 1, 0, 1}, {0, 0, 0, 0}),
                                      pv({1, 0, 1, 0}, {0, 1, 0, 0})),
                   1.0);
}

TEST(SymplecticProduct, StandardBasisPairs) {
  for (int n = 1; n <= 5; ++n) {
    EXPECT_DOUBLE_EQ(symplectic_product(PhaseVector::basis(n, 0), PhaseVector::basis(n, n)), 1.0);
  }
}

TEST(SymplecticProduct, DimensionMismatchThrows) {
  EXPECT_THROW(symplectic_product(PhaseVector::zeros(1), PhaseVector::zeros(2)), DimensionError);
}

TEST(SymplecticProduct, AntisymmetryAndBilinearity) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> coef(-3.0, 3.0);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 1 + trial % 6;
    const PhaseVector u = oracle::random_vector(rng, n);
    const PhaseVector v = oracle::random_vector(rng, n);
    const PhaseVector w = oracle::random_vector(rng, n);
    EXPECT_DOUBLE_EQ(symplectic_product(u, u), 0.0);
    EXPECT_NEAR(symplectic_product(u, v), -symplectic_product(v, u), 1e-14);
    const double a = coef(rng), b = coef(rng);
    const double lhs = symplectic_product(a * u + b * v, w);
    const double rhs = a * symplectic_product(u, w) + b * symplectic_product(v, w);
    EXPECT_NEAR(lhs, rhs, 1e-12 * std::max(1.0, std::abs(rhs)) * 10);
  }
}

TEST(IsSymplectic, Basics) {
  for (int n = 1; n <= 4; ++n) {
    EXPECT_TRUE(is_symplectic(Matrix::Identity(2 * n, 2 * n), 1e-12));
    EXPECT_TRUE(is_symplectic(form_matrix(n), 1e-12));
    Matrix d = Matrix::Identity(2 * n, 2 * n);
    d(0, 0) = 2.0;
    EXPECT_FALSE(is_symplectic(d));
  }
  EXPECT_THROW(is_symplectic(Matrix::Identity(3, 3)), DimensionError);
  EXPECT_THROW(is_symplectic(Matrix::Identity(2, 4)), DimensionError);
}

TEST(IsSymplectic, PreservesProductUnderRandomSymplectic) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 1 + trial % 5;
    const Matrix a = oracle::product_of(oracle::random_circuit(rng, n, 20));
    const SympMatrix ups = quad_action_to_phase_map(QuadAction(a));
    const PhaseVector u = oracle::random_vector(rng, n);
    const PhaseVector v = oracle::random_vector(rng, n);
    EXPECT_NEAR(symplectic_product(apply(ups, u), apply(ups, v)), symplectic_product(u, v),
                1e-9 * std::max(1.0, u.norm() * v.norm()));
  }
}

TEST(QuadActionToPhaseMap, IdentityAndFourierAgainstSubstitution) {
  EXPECT_TRUE(quad_action_to_phase_map(QuadAction::identity(3)).matrix().isIdentity());

  Matrix fourier(2, 2);
  fourier << 0, -1, 1, 0;
  const Matrix ups = quad_action_to_phase_map(QuadAction(fourier)).matrix();
  EXPECT_TRUE(ups.isApprox(oracle::substitution_phase_map(fourier)));
  // M(e_1) = x -> -p, so e_1 goes to -e_2; M(e_2) = p -> x, so e_2 goes to e_1.
  Matrix expected(2, 2);
  expected << 0, 1, -1, 0;
  EXPECT_TRUE(ups.isApprox(expected));
}

TEST(QuadActionToPhaseMap, QndAgainstSubstitution) {
  const Matrix a = oracle::gate_matrix(Gate::qnd_x(1, 2, 0.8), 2);
  EXPECT_TRUE(quad_action_to_phase_map(QuadAction(a)).matrix().isApprox(
      oracle::substitution_phase_map(a)));
}

TEST(QuadActionToPhaseMap, MatchesSubstitutionOnRandomProducts) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 1 + trial % 4;
    const Matrix a = oracle::product_of(oracle::random_circuit(rng, n, 15));
    EXPECT_LE((quad_action_to_phase_map(QuadAction(a)).matrix() -
               oracle::substitution_phase_map(a))
                  .cwiseAbs()
                  .maxCoeff(),
              1e-12);
  }
}

// Substitutions compose in reverse: applying B's rules and then A's to M(u)
// yields map(B) map(A) u for the product A B.
TEST(QuadActionToPhaseMap, ReversesComposition) {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 1 + trial % 4;
    const QuadAction a(oracle::product_of(oracle::random_circuit(rng, n, 10)));
    const QuadAction b(oracle::product_of(oracle::random_circuit(rng, n, 10)));
    const Matrix lhs = quad_action_to_phase_map(a * b).matrix();
    const Matrix rhs =
        quad_action_to_phase_map(b).matrix() * quad_action_to_phase_map(a).matrix();
    EXPECT_LE((lhs - rhs).cwiseAbs().maxCoeff(), 1e-10 * (1.0 + rhs.cwiseAbs().maxCoeff()));
  }
}

TEST(QuadActionToPhaseMap, RejectsNonSymplectic) {
  Matrix d = Matrix::Identity(2, 2);
  d(0, 0) = 2.0;
  EXPECT_THROW(quad_action_to_phase_map(QuadAction(d)), NotSymplecticError);
}

TEST(QuadActionToPhaseMap, RoundTripsThroughInverse) {
  std::mt19937_64 rng(29);
  const Matrix a = oracle::product_of(oracle::random_circuit(rng, 3, 25));
  const QuadAction back = phase_map_to_quad_action(quad_action_to_phase_map(QuadAction(a)));
  EXPECT_LE((back.matrix() - a).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(Apply, IdentityFormAndWorkedExample) {
  std::mt19937_64 rng(3);
  const PhaseVector u = oracle::random_vector(rng, 3);
  EXPECT_EQ(apply(SympMatrix::identity(3), u), u);

  // J e_1 is +-e_{n+1}; the product with e_1 pins the sign.
  const PhaseVector je = apply(SympMatrix(form_matrix(3)), PhaseVector::basis(3, 0));
  EXPECT_DOUBLE_EQ(std::abs(je[3]), 1.0);
  EXPECT_DOUBLE_EQ(je.norm(), 1.0);
  EXPECT_DOUBLE_EQ(std::abs(symplectic_product(PhaseVector::basis(3, 0), je)), 1.0);

  EXPECT_THROW(apply(SympMatrix::identity(2), u), DimensionError);
}
