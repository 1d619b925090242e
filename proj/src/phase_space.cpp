#include "cveacc/phase_space.hpp"

#include <string>
#include <vector>

namespace cveacc {

namespace {

void require_square_even(const Matrix& m, const char* what) {
  if (m.rows() != m.cols() || m.rows() == 0 || m.rows() % 2 != 0) {
    throw DimensionError(std::string(what) + ": expected a non-empty 2n x 2n "
                         "matrix, got " + std::to_string(m.rows()) + " x " +
                         std::to_string(m.cols()));
  }
}

void require_same_modes(int a, int b, const char* what) {
  if (a != b) {
    throw DimensionError(std::string(what) + ": mode count mismatch (" +
                         std::to_string(a) + " vs " + std::to_string(b) + ")");
  }
}

}  // namespace

PhaseVector::PhaseVector(Vector entries) : entries_(std::move(entries)) {
  if (entries_.size() == 0 || entries_.size() % 2 != 0) {
    throw DimensionError("PhaseVector needs 2n > 0 entries, got " +
                         std::to_string(entries_.size()));
  }
  if (!entries_.allFinite()) {
    throw DimensionError("PhaseVector entries must be finite");
  }
}

PhaseVector PhaseVector::zeros(int n) {
  if (n < 1) throw DimensionError("mode count must be positive");
  return PhaseVector(Vector::Zero(2 * n));
}

PhaseVector PhaseVector::basis(int n, int index) {
  if (n < 1 || index < 0 || index >= 2 * n) {
    throw DimensionError("basis index " + std::to_string(index) +
                         " out of range for n = " + std::to_string(n));
  }
  Vector e = Vector::Zero(2 * n);
  e[index] = 1.0;
  return PhaseVector(std::move(e));
}

PhaseVector PhaseVector::from_blocks(const Vector& p, const Vector& x) {
  require_same_modes(static_cast<int>(p.size()), static_cast<int>(x.size()),
                     "PhaseVector::from_blocks");
  Vector e(p.size() + x.size());
  e << p, x;
  return PhaseVector(std::move(e));
}

PhaseVector PhaseVector::single_mode(int n, int mode, double p, double x) {
  if (mode < 1 || mode > n) {
    throw DimensionError("mode " + std::to_string(mode) +
                         " out of range for n = " + std::to_string(n));
  }
  Vector e = Vector::Zero(2 * n);
  e[mode - 1] = p;
  e[n + mode - 1] = x;
  return PhaseVector(std::move(e));
}

PhaseVector PhaseVector::operator+(const PhaseVector& other) const {
  require_same_modes(modes(), other.modes(), "PhaseVector +");
  return PhaseVector(entries_ + other.entries_);
}

PhaseVector PhaseVector::operator-(const PhaseVector& other) const {
  require_same_modes(modes(), other.modes(), "PhaseVector -");
  return PhaseVector(entries_ - other.entries_);
}

PhaseVector PhaseVector::operator-() const { return PhaseVector(-entries_); }

PhaseVector PhaseVector::operator*(double scale) const {
  return PhaseVector(entries_ * scale);
}

SympMatrix::SympMatrix(Matrix m) : m_(std::move(m)) {
  require_square_even(m_, "SympMatrix");
}

QuadAction::QuadAction(Matrix m) : m_(std::move(m)) {
  require_square_even(m_, "QuadAction");
}

QuadAction QuadAction::operator*(const QuadAction& other) const {
  require_same_modes(modes(), other.modes(), "QuadAction *");
  return QuadAction(m_ * other.m_);
}

double symplectic_product(const PhaseVector& u, const PhaseVector& v) {
  require_same_modes(u.modes(), v.modes(), "symplectic_product");
  return u.p_block().dot(v.x_block()) - u.x_block().dot(v.p_block());
}

Matrix form_matrix(int n) {
  Matrix j = Matrix::Zero(2 * n, 2 * n);
  j.topRightCorner(n, n).setIdentity();
  j.bottomLeftCorner(n, n) = -Matrix::Identity(n, n);
  return j;
}

double symplectic_defect(const Matrix& m) {
  require_square_even(m, "is_symplectic");
  const Matrix j = form_matrix(static_cast<int>(m.rows() / 2));
  return (m.transpose() * j * m - j).cwiseAbs().maxCoeff();
}

bool is_symplectic(const Matrix& m, double tol) {
  return symplectic_defect(m) <= tol;
}

SympMatrix quad_action_to_phase_map(const QuadAction& a, double tol) {
  const double defect = symplectic_defect(a.matrix());
  if (defect > tol) {
    throw NotSymplecticError("quadrature action is not symplectic (defect " +
                             std::to_string(defect) + ")");
  }
  return SympMatrix(a.matrix().transpose());
}

QuadAction phase_map_to_quad_action(const SympMatrix& upsilon, double tol) {
  const double defect = symplectic_defect(upsilon.matrix());
  if (defect > tol) {
    throw NotSymplecticError("phase-space map is not symplectic (defect " +
                             std::to_string(defect) + ")");
  }
  return QuadAction(upsilon.matrix().transpose());
}

PhaseVector apply(const SympMatrix& upsilon, const PhaseVector& u) {
  require_same_modes(upsilon.modes(), u.modes(), "apply");
  return PhaseVector(upsilon.matrix() * u.entries());
}

Matrix stack_rows(const std::vector<PhaseVector>& rows) {
  if (rows.empty()) return Matrix(0, 0);
  const int dim = 2 * rows.front().modes();
  Matrix m(static_cast<Eigen::Index>(rows.size()), dim);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    require_same_modes(rows.front().modes(), rows[i].modes(), "stack_rows");
    m.row(static_cast<Eigen::Index>(i)) = rows[i].entries().transpose();
  }
  return m;
}

}  // namespace cveacc
