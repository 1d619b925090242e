#pragma once

#include <array>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "cveacc/code.hpp"
#include "cveacc/phase_space.hpp"

namespace cveacc {

enum class GateKind {
  Squeeze,     // x -> a x, p -> p / a
  Fourier,     // x -> -p, p -> x
  FourierInv,  // x -> p, p -> -x
  QndX,        // x1 -> x1, p1 -> p1 - g p2, x2 -> x2 + g x1, p2 -> p2
  QndP,        // x1 -> x1 - g x2, p1 -> p1, x2 -> x2, p2 -> p2 + g p1
  PhaseX,      // x -> x, p -> p + g x
  PhaseP,      // x -> x + g p, p -> p
  Swap,
};

inline constexpr std::array<GateKind, 8> kAllGateKinds = {
    GateKind::Squeeze, GateKind::Fourier, GateKind::FourierInv,
    GateKind::QndX,    GateKind::QndP,    GateKind::PhaseX,
    GateKind::PhaseP,  GateKind::Swap};

// Wire names used by the circuit file format ("SQUEEZE", "QND_X", ...).
std::string_view gate_name(GateKind kind);
GateKind gate_kind_from_name(std::string_view name);
bool is_two_mode(GateKind kind);
bool has_parameter(GateKind kind);

// Modes are 1-based. Single-mode gates leave m2 at 0.
struct Gate {
  GateKind kind = GateKind::Fourier;
  int m1 = 1;
  int m2 = 0;
  double param = 0.0;

  static Gate squeeze(int mode, double a) { return {GateKind::Squeeze, mode, 0, a}; }
  static Gate fourier(int mode) { return {GateKind::Fourier, mode, 0, 0.0}; }
  static Gate fourier_inv(int mode) { return {GateKind::FourierInv, mode, 0, 0.0}; }
  static Gate qnd_x(int m1, int m2, double g) { return {GateKind::QndX, m1, m2, g}; }
  static Gate qnd_p(int m1, int m2, double g) { return {GateKind::QndP, m1, m2, g}; }
  static Gate phase_x(int mode, double g) { return {GateKind::PhaseX, mode, 0, g}; }
  static Gate phase_p(int mode, double g) { return {GateKind::PhaseP, mode, 0, g}; }
  static Gate swap(int m1, int m2) { return {GateKind::Swap, m1, m2, 0.0}; }

  bool operator==(const Gate&) const = default;
};

// Throws DimensionError for out-of-range or coincident modes and for a zero
// squeezing factor.
void validate_gate(const Gate& gate, int n);

Gate inverse(const Gate& gate);

// Gates in application order (first applied first).
struct Circuit {
  int n = 0;
  std::vector<Gate> gates;

  bool operator==(const Circuit&) const = default;
};

QuadAction gate_action(const Gate& gate, int n);

// A_{g_k} ... A_{g_1}
QuadAction circuit_action(const Circuit& circuit);

Circuit invert_circuit(const Circuit& circuit);

// Left-multiplies the 2n-row block `rows` (in (x|p) row order) by the gate's
// action without forming the 2n x 2n matrix. Works for any scalar type and any
// number of columns.
template <typename Derived>
void apply_gate_rows(const Gate& gate, int n, Eigen::MatrixBase<Derived>& rows);

// Left-multiplies by the gate's inverse. Unlike applying inverse(gate), a
// squeezer is undone by dividing by its own parameter, so a gate followed by
// its inverse is the identity up to rounding of the rows alone.
template <typename Derived>
void apply_inverse_gate_rows(const Gate& gate, int n, Eigen::MatrixBase<Derived>& rows);

struct CompilerReport {
  std::array<int, kAllGateKinds.size()> counts{};
  int squeezers = 0;
  double max_abs_param = 0.0;
  int rounds = 0;

  int count(GateKind kind) const { return counts[static_cast<std::size_t>(kind)]; }
  int total() const;
};

CompilerReport make_report(const Circuit& circuit, int rounds);

struct DecomposeOptions {
  double tol = kDefaultTolerance;
  // Gates whose parameter is within this of the identity value are skipped.
  double emit_threshold = 1e-12;
  // Called after every round with the partially reduced matrix.
  std::function<void(int round, const Matrix& reduced)> on_round;
  // Symplecticity bound checked after every round; debug builds check by
  // default, 0 disables the check.
#ifdef NDEBUG
  double check_symplectic = 0.0;
#else
  double check_symplectic = 1e-8;
#endif
};

struct Decomposition {
  Circuit circuit;
  CompilerReport report;
};

// Symplectic Gaussian elimination. Left-multiplies A by eliminating gates
// until it is the identity, then emits the inverses in reverse order, so that
// circuit_action(result.circuit) == A.
Decomposition decompose(const QuadAction& a, const DecomposeOptions& options = {});

// Encoder for the code: the circuit whose quadrature action maps to upsilon
// under quad_action_to_phase_map, i.e. A_enc = upsilon^T.
Circuit compile_encoder(const CodeSpec& code, const DecomposeOptions& options = {});

QuadAction encoder_action(const CodeSpec& code);

// Same gates, declared on a larger register.
Circuit widen(const Circuit& circuit, int n);

// ---------------------------------------------------------------------------

template <typename Derived>
void apply_gate_rows(const Gate& gate, int n, Eigen::MatrixBase<Derived>& rows) {
  using Scalar = typename Derived::Scalar;
  const int x1 = gate.m1 - 1;
  const int p1 = n + gate.m1 - 1;
  const int x2 = gate.m2 - 1;
  const int p2 = n + gate.m2 - 1;
  const Scalar g = static_cast<Scalar>(gate.param);
  switch (gate.kind) {
    case GateKind::Squeeze:
      rows.row(x1) *= g;
      rows.row(p1) /= g;
      break;
    case GateKind::Fourier: {
      auto old_x = rows.row(x1).eval();
      rows.row(x1) = -rows.row(p1);
      rows.row(p1) = old_x;
      break;
    }
    case GateKind::FourierInv: {
      auto old_x = rows.row(x1).eval();
      rows.row(x1) = rows.row(p1);
      rows.row(p1) = -old_x;
      break;
    }
    case GateKind::QndX:
      rows.row(p1) -= g * rows.row(p2);
      rows.row(x2) += g * rows.row(x1);
      break;
    case GateKind::QndP:
      rows.row(x1) -= g * rows.row(x2);
      rows.row(p2) += g * rows.row(p1);
      break;
    case GateKind::PhaseX:
      rows.row(p1) += g * rows.row(x1);
      break;
    case GateKind::PhaseP:
      rows.row(x1) += g * rows.row(p1);
      break;
    case GateKind::Swap:
      rows.row(x1).swap(rows.row(x2));
      rows.row(p1).swap(rows.row(p2));
      break;
  }
}

template <typename Derived>
void apply_inverse_gate_rows(const Gate& gate, int n, Eigen::MatrixBase<Derived>& rows) {
  if (gate.kind == GateKind::Squeeze) {
    using Scalar = typename Derived::Scalar;
    const Scalar a = static_cast<Scalar>(gate.param);
    rows.row(gate.m1 - 1) /= a;
    rows.row(n + gate.m1 - 1) *= a;
    return;
  }
  apply_gate_rows(inverse(gate), n, rows);
}

}  // namespace cveacc
