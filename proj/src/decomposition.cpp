#include "cveacc/decomposition.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace cveacc {

namespace {

struct Tracked {
  PhaseVector vec;
  int source;
};

// Greedy rank-revealing pass: keeps a row when its Euclidean residual against
// the rows kept so far exceeds tol times the largest row norm.
std::vector<Tracked> independent_rows(std::span<const PhaseVector> rows,
                                      double tol, std::vector<int>& dropped) {
  double scale = 0.0;
  for (const auto& r : rows) scale = std::max(scale, r.norm());

  std::vector<Tracked> kept;
  std::vector<Vector> orthonormal;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    Vector residual = rows[i].entries();
    // Two passes of modified Gram-Schmidt keep the residual honest.
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& q : orthonormal) residual -= q.dot(residual) * q;
    }
    const double norm = residual.norm();
    if (scale == 0.0 || norm <= tol * scale) {
      dropped.push_back(static_cast<int>(i));
      continue;
    }
    orthonormal.push_back(residual / norm);
    kept.push_back({rows[i], static_cast<int>(i)});
  }
  return kept;
}

// r <- r + (r . w) z - (r . z) w, which leaves r orthogonal to both halves
// of the pair (w, z) with w . z = 1.
PhaseVector project_out(const PhaseVector& r, const PhaseVector& w,
                        const PhaseVector& z) {
  const double rw = symplectic_product(r, w);
  const double rz = symplectic_product(r, z);
  return PhaseVector(r.entries() + rw * z.entries() - rz * w.entries());
}

}  // namespace

std::vector<PhaseVector> SymplecticDecomposition::ordered_vectors() const {
  std::vector<PhaseVector> out;
  out.reserve(static_cast<std::size_t>(rank()));
  for (const auto& pair : pairs) out.push_back(pair.u);
  for (const auto& w : isotropic) out.push_back(w);
  for (const auto& pair : pairs) out.push_back(pair.v);
  return out;
}

Matrix SymplecticBasis::matrix() const {
  Matrix b(2 * n, 2 * n);
  for (int i = 0; i < n; ++i) {
    b.col(i) = u[static_cast<std::size_t>(i)].entries();
    b.col(n + i) = v[static_cast<std::size_t>(i)].entries();
  }
  return b;
}

Matrix gram_matrix(const std::vector<PhaseVector>& vectors) {
  const auto m = static_cast<Eigen::Index>(vectors.size());
  Matrix g(m, m);
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index j = 0; j < m; ++j) {
      g(i, j) = symplectic_product(vectors[static_cast<std::size_t>(i)],
                                   vectors[static_cast<std::size_t>(j)]);
    }
  }
  return g;
}

Matrix canonical_gram_form(int c, int l) {
  const int m = 2 * c + l;
  Matrix g = Matrix::Zero(m, m);
  for (int i = 0; i < c; ++i) {
    g(i, c + l + i) = 1.0;
    g(c + l + i, i) = -1.0;
  }
  return g;
}

double gram_defect(const SymplecticDecomposition& dec) {
  if (dec.rank() == 0) return 0.0;
  const Matrix diff =
      gram_matrix(dec.ordered_vectors()) - canonical_gram_form(dec.c(), dec.l());
  return diff.cwiseAbs().maxCoeff();
}

SymplecticDecomposition symplectic_gram_schmidt(
    std::span<const PhaseVector> rows, double tol) {
  if (rows.empty()) {
    throw DimensionError("symplectic_gram_schmidt: empty row set");
  }
  const int n = rows.front().modes();
  for (const auto& r : rows) {
    if (r.modes() != n || n == 0) {
      throw DimensionError("symplectic_gram_schmidt: rows disagree on mode count");
    }
  }

  SymplecticDecomposition dec;
  dec.n = n;
  std::vector<Tracked> remaining = independent_rows(rows, tol, dec.dropped_rows);

  std::vector<int> u_sources;
  std::vector<int> iso_sources;
  std::vector<int> v_sources;

  while (!remaining.empty()) {
    const Tracked w = remaining.front();
    std::size_t best = 0;
    double best_abs = 0.0;
    for (std::size_t j = 1; j < remaining.size(); ++j) {
      const double prod = symplectic_product(w.vec, remaining[j].vec);
      const double threshold =
          tol * std::max(1.0, w.vec.norm() * remaining[j].vec.norm());
      if (std::abs(prod) > threshold && std::abs(prod) > best_abs) {
        best = j;
        best_abs = std::abs(prod);
      }
    }

    if (best == 0) {
      dec.isotropic.push_back(w.vec);
      iso_sources.push_back(w.source);
      remaining.erase(remaining.begin());
      continue;
    }

    const Tracked z = remaining[best];
    const double prod = symplectic_product(w.vec, z.vec);
    HyperbolicPair pair{w.vec, z.vec * (1.0 / prod)};
    remaining.erase(remaining.begin() + static_cast<std::ptrdiff_t>(best));
    remaining.erase(remaining.begin());
    for (auto& r : remaining) r.vec = project_out(r.vec, pair.u, pair.v);

    dec.pairs.push_back(std::move(pair));
    u_sources.push_back(w.source);
    v_sources.push_back(z.source);
  }

  dec.sources = u_sources;
  dec.sources.insert(dec.sources.end(), iso_sources.begin(), iso_sources.end());
  dec.sources.insert(dec.sources.end(), v_sources.begin(), v_sources.end());
  return dec;
}

SymplecticBasis complete_symplectic_basis(const SymplecticDecomposition& dec,
                                          double tol) {
  const int n = dec.n;
  const int c = dec.c();
  const int l = dec.l();
  if (n < 1) throw DimensionError("complete_symplectic_basis: n must be positive");
  if (c + l > n) {
    throw DimensionError("complete_symplectic_basis: c + l = " +
                         std::to_string(c + l) + " exceeds n = " +
                         std::to_string(n));
  }

  double scale = 1.0;
  for (const auto& w : dec.ordered_vectors()) {
    if (w.modes() != n) {
      throw DimensionError("complete_symplectic_basis: vector has wrong mode count");
    }
    scale = std::max(scale, w.norm() * w.norm());
  }
  const double defect = gram_defect(dec);
  if (defect > std::max(tol, kDefaultTolerance) * scale) {
    throw VerificationError(
        "complete_symplectic_basis: input is not a valid decomposition "
        "(Gram defect " + std::to_string(defect) + ")");
  }

  std::vector<HyperbolicPair> pairs = dec.pairs;

  // Partners for the isotropic vectors come from a min-norm solve of
  // y . w_i = 1 and y orthogonal to every other stored vector.
  const Matrix j = form_matrix(n);
  std::vector<PhaseVector> partners;
  for (int i = 0; i < l; ++i) {
    std::vector<PhaseVector> constraints;
    Vector targets(2 * c + l + i);
    Eigen::Index t = 0;
    for (const auto& pair : dec.pairs) {
      constraints.push_back(pair.u);
      targets[t++] = 0.0;
      constraints.push_back(pair.v);
      targets[t++] = 0.0;
    }
    for (int q = 0; q < l; ++q) {
      constraints.push_back(dec.isotropic[static_cast<std::size_t>(q)]);
      targets[t++] = (q == i) ? 1.0 : 0.0;
    }
    for (const auto& y : partners) {
      constraints.push_back(y);
      targets[t++] = 0.0;
    }
    // c_t . y = c_t^T J y
    const Matrix system = stack_rows(constraints) * j;
    Vector y = system.completeOrthogonalDecomposition().solve(targets);
    partners.emplace_back(std::move(y));
    pairs.push_back({dec.isotropic[static_cast<std::size_t>(i)], partners.back()});
  }

  // The symplectic complement of everything so far is spanned by the
  // standard basis projected against the existing pairs.
  std::vector<PhaseVector> candidates;
  if (c + l < n) {
    for (int idx = 0; idx < 2 * n; ++idx) {
      PhaseVector r = PhaseVector::basis(n, idx);
      for (const auto& pair : pairs) r = project_out(r, pair.u, pair.v);
      candidates.push_back(std::move(r));
    }
  }

  std::vector<HyperbolicPair> complement;
  if (!candidates.empty()) {
    // Candidates have unit-scale norms, so a looser rank threshold than tol
    // separates genuine directions from cancellation noise.
    const SymplecticDecomposition rest =
        symplectic_gram_schmidt(candidates, std::max(tol, 1e-8));
    if (rest.l() != 0 || rest.c() != n - c - l) {
      throw VerificationError("complete_symplectic_basis: complement has c = " +
                              std::to_string(rest.c()) + ", l = " +
                              std::to_string(rest.l()) + ", expected c = " +
                              std::to_string(n - c - l));
    }
    complement = rest.pairs;
  }

  SymplecticBasis basis;
  basis.n = n;
  for (const auto& pair : dec.pairs) {
    basis.u.push_back(pair.u);
    basis.v.push_back(pair.v);
  }
  for (int i = 0; i < l; ++i) {
    basis.u.push_back(dec.isotropic[static_cast<std::size_t>(i)]);
    basis.v.push_back(partners[static_cast<std::size_t>(i)]);
  }
  for (const auto& pair : complement) {
    basis.u.push_back(pair.u);
    basis.v.push_back(pair.v);
  }
  return basis;
}

CodeParameters code_parameters(const SymplecticDecomposition& dec) {
  const int c = dec.c();
  const int l = dec.l();
  if (c + l > dec.n) {
    throw DimensionError("code_parameters: c + l = " + std::to_string(c + l) +
                         " exceeds n = " + std::to_string(dec.n));
  }
  return {dec.n, dec.n - c - l, l, c};
}

}  // namespace cveacc
