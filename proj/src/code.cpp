#include "cveacc/code.hpp"

#include <algorithm>
#include <string>

namespace cveacc {

Matrix ParityCheck::matrix() const {
  if (rows.empty()) return Matrix(0, 2 * n);
  return stack_rows(rows);
}

Matrix AugmentedParityCheck::matrix() const {
  if (rows.empty()) return Matrix(0, 2 * (n_alice + c));
  return stack_rows(rows);
}

double AugmentedParityCheck::commutation_defect() const {
  double worst = 0.0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = i + 1; j < rows.size(); ++j) {
      worst = std::max(worst, std::abs(symplectic_product(rows[i], rows[j])));
    }
  }
  return worst;
}

std::vector<int> ModeLayout::modes_with(ModeRole role) const {
  std::vector<int> out;
  for (std::size_t i = 0; i < roles.size(); ++i) {
    if (roles[i] == role) out.push_back(static_cast<int>(i) + 1);
  }
  return out;
}

namespace {

void validate(const CodeParameters& p) {
  if (p.n < 1 || p.k < 0 || p.l < 0 || p.c < 0 || p.k + p.l + p.c != p.n) {
    throw DimensionError("invalid code parameters (n,k,l,c) = (" +
                         std::to_string(p.n) + "," + std::to_string(p.k) + "," +
                         std::to_string(p.l) + "," + std::to_string(p.c) +
                         "): need k + l + c = n, all non-negative");
  }
}

}  // namespace

ModeLayout canonical_encode_layout(const CodeParameters& params) {
  validate(params);
  ModeLayout layout{params, {}};
  layout.roles.insert(layout.roles.end(), static_cast<std::size_t>(params.c),
                      ModeRole::Entangled);
  layout.roles.insert(layout.roles.end(), static_cast<std::size_t>(params.l),
                      ModeRole::Ancilla);
  layout.roles.insert(layout.roles.end(), static_cast<std::size_t>(params.k),
                      ModeRole::Data);
  layout.roles.insert(layout.roles.end(), static_cast<std::size_t>(params.c),
                      ModeRole::Bob);
  return layout;
}

SymplecticDecomposition canonical_decomposition(const CodeParameters& params) {
  validate(params);
  SymplecticDecomposition dec;
  dec.n = params.n;
  for (int j = 0; j < params.c; ++j) {
    dec.pairs.push_back({PhaseVector::basis(params.n, j),
                         PhaseVector::basis(params.n, params.n + j)});
  }
  for (int i = 0; i < params.l; ++i) {
    dec.isotropic.push_back(PhaseVector::basis(params.n, params.c + i));
  }
  for (int r = 0; r < dec.rank(); ++r) dec.sources.push_back(r);
  return dec;
}

ParityCheck canonical_parity_check(const CodeParameters& params) {
  return {params.n, canonical_decomposition(params).ordered_vectors()};
}

AugmentedParityCheck augment(const ParityCheck& H,
                             const SymplecticDecomposition& dec, double tol) {
  const int n = H.n;
  const int c = dec.c();
  const int l = dec.l();
  if (dec.n != n || H.size() != dec.rank()) {
    throw DimensionError("augment: parity check has " + std::to_string(H.size()) +
                         " rows on " + std::to_string(n) +
                         " modes, decomposition expects " +
                         std::to_string(dec.rank()) + " rows on " +
                         std::to_string(dec.n));
  }
  const auto expected = dec.ordered_vectors();
  for (std::size_t r = 0; r < expected.size(); ++r) {
    const double scale = std::max(1.0, expected[r].norm());
    if ((H.rows[r] - expected[r]).norm() > tol * scale) {
      throw DimensionError("augment: row " + std::to_string(r) +
                           " does not match the decomposition order");
    }
  }

  AugmentedParityCheck aug;
  aug.n_alice = n;
  aug.c = c;
  const int total = n + c;
  for (int r = 0; r < H.size(); ++r) {
    const PhaseVector& h = H.rows[static_cast<std::size_t>(r)];
    Vector row = Vector::Zero(2 * total);
    row.segment(0, n) = h.p_block();
    row.segment(total, n) = h.x_block();
    if (r < c) {
      row[n + r] = -1.0;  // p-aug column of pair r
    } else if (r >= c + l) {
      row[total + n + (r - c - l)] = 1.0;  // x-aug column of pair r - c - l
    }
    aug.rows.emplace_back(std::move(row));
  }
  return aug;
}

double parity_map_defect(const CodeSpec& code) {
  if (code.H.rows.empty()) return 0.0;
  const Matrix mapped = code.H.matrix() * code.upsilon.matrix().transpose();
  return (mapped - code.F.matrix()).cwiseAbs().maxCoeff();
}

CodeSpec build_code(std::span<const PhaseVector> rows, double tol) {
  CodeSpec code;
  code.decomposition = symplectic_gram_schmidt(rows, tol);
  code.params = code_parameters(code.decomposition);
  const int n = code.params.n;

  code.input = {n, std::vector<PhaseVector>(rows.begin(), rows.end())};
  code.H = {n, code.decomposition.ordered_vectors()};

  const SymplecticBasis basis = complete_symplectic_basis(code.decomposition, tol);
  const Matrix b = basis.matrix();
  Eigen::PartialPivLU<Matrix> lu(b);
  code.upsilon = SympMatrix(lu.inverse());

  code.F = canonical_parity_check(code.params);
  code.H_aug = augment(code.H, code.decomposition, tol);
  code.F_aug = augment(code.F, canonical_decomposition(code.params), tol);

  const double map_defect = parity_map_defect(code);
  if (map_defect > kParityMapTolerance) {
    throw VerificationError("build_code: H upsilon^T deviates from F by " +
                            std::to_string(map_defect));
  }
  const double symp_defect = symplectic_defect(code.upsilon.matrix());
  if (symp_defect > kSymplecticTolerance) {
    throw VerificationError("build_code: upsilon symplectic defect " +
                            std::to_string(symp_defect));
  }
  return code;
}

}  // namespace cveacc
