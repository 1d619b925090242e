#include "cveacc/optics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace cveacc {

namespace {

constexpr std::array<std::string_view, kAllGateKinds.size()> kGateNames = {
    "SQUEEZE", "FOURIER", "FOURIER_INV", "QND_X",
    "QND_P",   "PHASE_X", "PHASE_P",     "SWAP"};

bool cancels(const Gate& a, const Gate& b) {
  if (a.m1 != b.m1) {
    return a.kind == GateKind::Swap && b.kind == GateKind::Swap &&
           a.m1 == b.m2 && a.m2 == b.m1;
  }
  switch (a.kind) {
    case GateKind::Fourier:
      return b.kind == GateKind::FourierInv;
    case GateKind::FourierInv:
      return b.kind == GateKind::Fourier;
    case GateKind::Swap:
      return b.kind == GateKind::Swap && a.m2 == b.m2;
    default:
      return false;
  }
}

// Drops adjacent gate/inverse pairs left behind by empty elimination sweeps.
std::vector<Gate> cancel_adjacent(const std::vector<Gate>& gates) {
  std::vector<Gate> out;
  for (const Gate& g : gates) {
    if (!out.empty() && cancels(out.back(), g)) {
      out.pop_back();
    } else {
      out.push_back(g);
    }
  }
  return out;
}

class Eliminator {
 public:
  Eliminator(const Matrix& a, const DecomposeOptions& options)
      : m_(a), n_(static_cast<int>(a.rows() / 2)), options_(options) {}

  void run() {
    for (int r = 0; r < n_; ++r) {
      round(r);
      if (options_.check_symplectic > 0.0) {
        const double defect = symplectic_defect(m_);
        const double scale = std::max(1.0, m_.cwiseAbs().maxCoeff());
        if (defect > options_.check_symplectic * scale * scale) {
          throw VerificationError("decompose: round " + std::to_string(r + 1) +
                                  " lost symplecticity (defect " +
                                  std::to_string(defect) + ")");
        }
      }
      if (options_.on_round) options_.on_round(r + 1, m_);
    }
  }

  const std::vector<Gate>& eliminating_gates() const { return gates_; }

 private:
  void emit(const Gate& g) {
    apply_gate_rows(g, n_, m_);
    gates_.push_back(g);
  }

  // Parameterised gates within emit_threshold of the identity are skipped.
  void emit_param(const Gate& g) {
    const double identity = g.kind == GateKind::Squeeze ? 1.0 : 0.0;
    if (std::abs(g.param - identity) <= options_.emit_threshold) return;
    emit(g);
  }

  void pivot(int r) {
    int best_x = -1;
    int best_p = -1;
    for (int i = r; i < n_; ++i) {
      if (best_x < 0 || std::abs(m_(i, r)) > std::abs(m_(best_x, r))) best_x = i;
      if (best_p < 0 || std::abs(m_(n_ + i, r)) > std::abs(m_(n_ + best_p, r))) {
        best_p = i;
      }
    }
    const double mag_x = std::abs(m_(best_x, r));
    const double mag_p = std::abs(m_(n_ + best_p, r));
    if (std::max(mag_x, mag_p) <= options_.tol) {
      throw VerificationError("decompose: column " + std::to_string(r + 1) +
                              " has no usable pivot; input is not symplectic");
    }
    int mode = best_x;
    if (mag_p > mag_x) {
      // Rotate the momentum entry into the position row.
      emit(Gate::fourier(best_p + 1));
      mode = best_p;
    }
    if (mode != r) emit(Gate::swap(r + 1, mode + 1));
    emit_param(Gate::squeeze(r + 1, 1.0 / m_(r, r)));
  }

  void round(int r) {
    const int mode = r + 1;
    const int col_x = r;
    const int col_p = n_ + r;

    pivot(r);

    // Clear the position rows of column r.
    for (int i = r + 1; i < n_; ++i) emit_param(Gate::qnd_x(mode, i + 1, -m_(i, col_x)));
    // Clear the momentum row of this mode, then swing the pivot into it and
    // clear the remaining momentum rows.
    emit_param(Gate::phase_x(mode, -m_(n_ + r, col_x)));
    emit(Gate::fourier(mode));
    for (int i = r + 1; i < n_; ++i) {
      emit_param(Gate::qnd_p(mode, i + 1, -m_(n_ + i, col_x)));
    }
    emit(Gate::fourier_inv(mode));

    // Column n + r: row n + r is now e_{n+r} by symplecticity.
    for (int i = r + 1; i < n_; ++i) {
      emit_param(Gate::qnd_p(mode, i + 1, -m_(n_ + i, col_p)));
    }
    emit_param(Gate::phase_p(mode, -m_(r, col_p)));
    emit(Gate::fourier_inv(mode));
    for (int i = r + 1; i < n_; ++i) emit_param(Gate::qnd_x(mode, i + 1, -m_(i, col_p)));
    emit(Gate::fourier(mode));
  }

  Matrix m_;
  int n_;
  const DecomposeOptions& options_;
  std::vector<Gate> gates_;
};

}  // namespace

std::string_view gate_name(GateKind kind) {
  return kGateNames[static_cast<std::size_t>(kind)];
}

GateKind gate_kind_from_name(std::string_view name) {
  for (std::size_t i = 0; i < kGateNames.size(); ++i) {
    if (kGateNames[i] == name) return kAllGateKinds[i];
  }
  throw ParseError("unknown gate \"" + std::string(name) + "\"");
}

bool is_two_mode(GateKind kind) {
  return kind == GateKind::QndX || kind == GateKind::QndP || kind == GateKind::Swap;
}

bool has_parameter(GateKind kind) {
  return kind != GateKind::Fourier && kind != GateKind::FourierInv &&
         kind != GateKind::Swap;
}

void validate_gate(const Gate& gate, int n) {
  auto in_range = [n](int m) { return m >= 1 && m <= n; };
  if (!in_range(gate.m1) || (is_two_mode(gate.kind) && !in_range(gate.m2))) {
    throw DimensionError(std::string(gate_name(gate.kind)) +
                         ": mode out of range for n = " + std::to_string(n));
  }
  if (is_two_mode(gate.kind) && gate.m1 == gate.m2) {
    throw DimensionError(std::string(gate_name(gate.kind)) +
                         ": two-mode gate needs distinct modes");
  }
  if (gate.kind == GateKind::Squeeze && gate.param == 0.0) {
    throw DimensionError("SQUEEZE: factor must be non-zero");
  }
  if (!std::isfinite(gate.param)) {
    throw DimensionError(std::string(gate_name(gate.kind)) +
                         ": parameter must be finite");
  }
}

Gate inverse(const Gate& gate) {
  Gate inv = gate;
  switch (gate.kind) {
    case GateKind::Squeeze:
      inv.param = 1.0 / gate.param;
      break;
    case GateKind::Fourier:
      inv.kind = GateKind::FourierInv;
      break;
    case GateKind::FourierInv:
      inv.kind = GateKind::Fourier;
      break;
    case GateKind::QndX:
    case GateKind::QndP:
    case GateKind::PhaseX:
    case GateKind::PhaseP:
      inv.param = -gate.param;
      break;
    case GateKind::Swap:
      break;
  }
  return inv;
}

QuadAction gate_action(const Gate& gate, int n) {
  validate_gate(gate, n);
  Matrix a = Matrix::Identity(2 * n, 2 * n);
  apply_gate_rows(gate, n, a);
  return QuadAction(std::move(a));
}

QuadAction circuit_action(const Circuit& circuit) {
  Matrix a = Matrix::Identity(2 * circuit.n, 2 * circuit.n);
  for (const Gate& g : circuit.gates) {
    validate_gate(g, circuit.n);
    apply_gate_rows(g, circuit.n, a);
  }
  return QuadAction(std::move(a));
}

Circuit invert_circuit(const Circuit& circuit) {
  Circuit out{circuit.n, {}};
  out.gates.reserve(circuit.gates.size());
  for (auto it = circuit.gates.rbegin(); it != circuit.gates.rend(); ++it) {
    out.gates.push_back(inverse(*it));
  }
  return out;
}

int CompilerReport::total() const {
  int sum = 0;
  for (int c : counts) sum += c;
  return sum;
}

CompilerReport make_report(const Circuit& circuit, int rounds) {
  CompilerReport report;
  report.rounds = rounds;
  for (const Gate& g : circuit.gates) {
    ++report.counts[static_cast<std::size_t>(g.kind)];
    if (has_parameter(g.kind)) {
      report.max_abs_param = std::max(report.max_abs_param, std::abs(g.param));
    }
  }
  report.squeezers = report.count(GateKind::Squeeze);
  return report;
}

Decomposition decompose(const QuadAction& a, const DecomposeOptions& options) {
  const double defect = symplectic_defect(a.matrix());
  const double scale = std::max(1.0, a.matrix().cwiseAbs().maxCoeff());
  if (defect > options.tol * scale * scale) {
    throw NotSymplecticError("decompose: input is not symplectic (defect " +
                             std::to_string(defect) + ")");
  }
  Eliminator elim(a.matrix(), options);
  elim.run();

  Circuit eliminating{a.modes(), cancel_adjacent(elim.eliminating_gates())};
  Decomposition out;
  out.circuit = invert_circuit(eliminating);
  out.report = make_report(out.circuit, a.modes());
  return out;
}

QuadAction encoder_action(const CodeSpec& code) {
  return phase_map_to_quad_action(code.upsilon, kParityMapTolerance);
}

Circuit compile_encoder(const CodeSpec& code, const DecomposeOptions& options) {
  return decompose(encoder_action(code), options).circuit;
}

Circuit widen(const Circuit& circuit, int n) {
  if (n < circuit.n) {
    throw DimensionError("widen: cannot shrink a circuit from " +
                         std::to_string(circuit.n) + " to " + std::to_string(n) +
                         " modes");
  }
  return {n, circuit.gates};
}

}  // namespace cveacc
