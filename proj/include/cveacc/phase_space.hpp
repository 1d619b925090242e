#pragma once

// Phase-space vectors, the symplectic product and the two matrix conventions
// used throughout the library:
//
//   * PhaseVector / SympMatrix live in (p|x) ordering: u = (p_1..p_n | x_1..x_n).
//   * QuadAction lives in (x|p) quadrature ordering and describes a Heisenberg
//     substitution R -> A R on R = (x_1..x_n, p_1..p_n)^T.
//
// The observable map M(u) = u . R pairs coordinate i of a PhaseVector with
// entry i of R, so p_i multiplies x_i-hat and x_i multiplies p_i-hat.

#include <vector>

#include <Eigen/Dense>

#include "cveacc/errors.hpp"

namespace cveacc {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

inline constexpr double kDefaultTolerance = 1e-9;

class PhaseVector {
 public:
  PhaseVector() = default;

  // Takes 2n entries in (p|x) order. Throws DimensionError on odd or zero
  // length and on non-finite entries.
  explicit PhaseVector(Vector entries);

  static PhaseVector zeros(int n);
  // Unit vector e_{index+1}; index is a 0-based coordinate in [0, 2n).
  static PhaseVector basis(int n, int index);
  static PhaseVector from_blocks(const Vector& p, const Vector& x);
  // Displacement of a single mode (1-based) by momentum p and position x.
  static PhaseVector single_mode(int n, int mode, double p, double x);

  int modes() const { return static_cast<int>(entries_.size() / 2); }
  const Vector& entries() const { return entries_; }

  double operator[](int i) const { return entries_[i]; }
  double p(int mode_index) const { return entries_[mode_index]; }
  double x(int mode_index) const { return entries_[modes() + mode_index]; }
  auto p_block() const { return entries_.head(modes()); }
  auto x_block() const { return entries_.tail(modes()); }

  double norm() const { return entries_.norm(); }

  PhaseVector operator+(const PhaseVector& other) const;
  PhaseVector operator-(const PhaseVector& other) const;
  PhaseVector operator-() const;
  PhaseVector operator*(double scale) const;
  friend PhaseVector operator*(double scale, const PhaseVector& v) {
    return v * scale;
  }

  bool operator==(const PhaseVector& other) const {
    return entries_ == other.entries_;
  }

 private:
  Vector entries_;
};

// 2n x 2n matrix acting on PhaseVector coordinates.
class SympMatrix {
 public:
  SympMatrix() = default;
  explicit SympMatrix(Matrix m);

  static SympMatrix identity(int n) {
    return SympMatrix(Matrix::Identity(2 * n, 2 * n));
  }

  int modes() const { return static_cast<int>(m_.rows() / 2); }
  const Matrix& matrix() const { return m_; }

 private:
  Matrix m_;
};

// Heisenberg action on the (x|p) quadrature column.
class QuadAction {
 public:
  QuadAction() = default;
  explicit QuadAction(Matrix m);

  static QuadAction identity(int n) {
    return QuadAction(Matrix::Identity(2 * n, 2 * n));
  }

  int modes() const { return static_cast<int>(m_.rows() / 2); }
  const Matrix& matrix() const { return m_; }

  // Composition: (a * b) applies b's substitution first.
  QuadAction operator*(const QuadAction& other) const;

 private:
  Matrix m_;
};

// u . v = p . x' - x . p'
double symplectic_product(const PhaseVector& u, const PhaseVector& v);

// J = [[0, I], [-I, 0]]. The same matrix is the commutator form of the
// (x|p) quadrature column, so one helper serves both conventions.
Matrix form_matrix(int n);

// max |M^T J M - J|; throws DimensionError for non-square or odd sizes.
double symplectic_defect(const Matrix& m);
bool is_symplectic(const Matrix& m, double tol = kDefaultTolerance);

// Phase-space map induced by substituting A's quadrature rules into M(u):
// M(map(A) u) = M(u)|_{R -> A R}. This is A^T, so the map reverses products:
// map(A B) = map(B) map(A).
SympMatrix quad_action_to_phase_map(const QuadAction& a,
                                    double tol = kDefaultTolerance);
QuadAction phase_map_to_quad_action(const SympMatrix& upsilon,
                                    double tol = kDefaultTolerance);

PhaseVector apply(const SympMatrix& upsilon, const PhaseVector& u);

// Rows of the returned matrix are the given vectors.
Matrix stack_rows(const std::vector<PhaseVector>& rows);

}  // namespace cveacc
