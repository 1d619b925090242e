#include "cveacc/syndrome.hpp"

#include <algorithm>
#include <string>

namespace cveacc {

Matrix syndrome_matrix(const ParityCheck& H) {
  const int n = H.n;
  Matrix sigma(H.size(), 2 * n);
  for (int r = 0; r < H.size(); ++r) {
    const PhaseVector& h = H.rows[static_cast<std::size_t>(r)];
    sigma.row(r).head(n) = h.x_block().transpose();
    sigma.row(r).tail(n) = h.p_block().transpose();
  }
  return sigma;
}

Syndrome syndrome(const ParityCheck& H, const PhaseVector& u) {
  if (u.modes() != H.n) {
    throw DimensionError("syndrome: error acts on " + std::to_string(u.modes()) +
                         " modes, code has " + std::to_string(H.n));
  }
  Vector s(H.size());
  for (int r = 0; r < H.size(); ++r) {
    const PhaseVector& h = H.rows[static_cast<std::size_t>(r)];
    s[r] = h.p_block().dot(u.x_block()) + h.x_block().dot(u.p_block());
  }
  return {std::move(s)};
}

Syndrome syndrome(const CodeSpec& code, const PhaseVector& u) {
  return syndrome(code.H, u);
}

SingleModeDecode rank_single_mode(const CodeSpec& code, const Syndrome& s,
                                  double tol) {
  const int n = code.params.n;
  if (s.size() != code.H.size()) {
    throw DimensionError("decode: syndrome has " + std::to_string(s.size()) +
                         " entries, code has " + std::to_string(code.H.size()) +
                         " checks");
  }

  SingleModeDecode out;
  out.correction.u_prime = PhaseVector::zeros(n);
  const double s_norm = s.values.norm();
  if (s_norm <= tol) {
    out.correction.residual = s_norm;
    return out;
  }

  const Matrix sigma = syndrome_matrix(code.H);
  for (int j = 0; j < n; ++j) {
    Matrix columns(sigma.rows(), 2);
    columns.col(0) = sigma.col(j);      // response to p_j
    columns.col(1) = sigma.col(n + j);  // response to x_j
    const Eigen::Vector2d fit = columns.colPivHouseholderQr().solve(s.values);
    const double residual = (s.values - columns * fit).norm();
    out.hypotheses.push_back({j + 1, fit[0], fit[1], residual});
  }
  std::stable_sort(out.hypotheses.begin(), out.hypotheses.end(),
                   [](const ModeHypothesis& a, const ModeHypothesis& b) {
                     return a.residual < b.residual;
                   });

  const ModeHypothesis& best = out.hypotheses.front();
  out.correction.u_prime = PhaseVector::single_mode(n, best.mode, best.p, best.x);
  out.correction.mode = best.mode;
  out.correction.residual = best.residual;

  if (best.residual > tol * std::max(1.0, s_norm)) {
    out.status = DecodeStatus::Uncorrectable;
  } else if (out.hypotheses.size() > 1 &&
             out.hypotheses[1].residual - best.residual <
                 tol * (1.0 + std::abs(best.residual))) {
    out.status = DecodeStatus::Ambiguous;
  }
  return out;
}

Correction decode_single_mode(const CodeSpec& code, const Syndrome& s,
                              double tol) {
  SingleModeDecode result = rank_single_mode(code, s, tol);
  switch (result.status) {
    case DecodeStatus::Ok:
      return std::move(result.correction);
    case DecodeStatus::Ambiguous:
      throw DecodeError(
          DecodeError::Kind::Ambiguous,
          "ambiguous decode: modes " +
              std::to_string(result.hypotheses[0].mode) + " and " +
              std::to_string(result.hypotheses[1].mode) +
              " fit the syndrome equally well (residuals " +
              std::to_string(result.hypotheses[0].residual) + ", " +
              std::to_string(result.hypotheses[1].residual) + ")");
    case DecodeStatus::Uncorrectable:
      break;
  }
  throw DecodeError(DecodeError::Kind::Uncorrectable,
                    "uncorrectable: best single-mode hypothesis (mode " +
                        std::to_string(result.hypotheses[0].mode) +
                        ") leaves residual " +
                        std::to_string(result.hypotheses[0].residual));
}

Correction decode_min_norm(const CodeSpec& code, const Syndrome& s) {
  if (s.size() != code.H.size()) {
    throw DimensionError("decode_min_norm: syndrome length mismatch");
  }
  const Matrix sigma = syndrome_matrix(code.H);
  Vector u = sigma.completeOrthogonalDecomposition().solve(s.values);
  const double residual = (sigma * u - s.values).norm();
  return {PhaseVector(std::move(u)), std::nullopt, residual};
}

PhaseVector canonical_reverse(const CodeParameters& params, const Vector& a,
                              const Vector& a1, const Vector& a2,
                              const CanonicalBlockFn& alpha,
                              const CanonicalBlockFn& beta) {
  const auto [n, k, l, c] = params;
  if (k + l + c != n || a.size() != l || a1.size() != c || a2.size() != c) {
    throw DimensionError("canonical_reverse: block sizes do not match (n,k,l,c)");
  }
  const Vector alpha_v = alpha(a, a1, a2);
  const Vector beta_v = beta(a, a1, a2);
  if (alpha_v.size() != k || beta_v.size() != k) {
    throw DimensionError("canonical_reverse: alpha and beta must return k entries");
  }
  Vector p(n);
  Vector x(n);
  p << a2, Vector::Zero(l), alpha_v;
  x << a1, a, beta_v;
  return PhaseVector::from_blocks(p, x);
}

ReducedSyndrome reduce(const CodeParameters& params, const Syndrome& s) {
  if (s.size() != 2 * params.c + params.l) {
    throw DimensionError("reduce: syndrome length does not match l + 2c");
  }
  return {s.values.segment(params.c, params.l), s.values.head(params.c),
          s.values.tail(params.c)};
}

bool is_correctable_pair(const CodeSpec& code, const PhaseVector& u,
                         const PhaseVector& u2, double tol) {
  const PhaseVector d = u - u2;
  const double scale = std::max(1.0, d.norm());
  if (syndrome(code, d).values.norm() > tol * scale) return true;

  // Degenerate branch. A displacement d acts on the checks like the phase
  // vector (-d_p | d_x), so that is what must lie in the isotropic span.
  const auto& iso = code.decomposition.isotropic;
  const Vector flipped =
      PhaseVector::from_blocks(-d.p_block(), d.x_block()).entries();
  if (iso.empty()) return flipped.norm() <= tol * scale;
  const Matrix basis = stack_rows(iso).transpose();
  const Vector coeffs = basis.colPivHouseholderQr().solve(flipped);
  return (basis * coeffs - flipped).norm() <= tol * scale;
}

}  // namespace cveacc
