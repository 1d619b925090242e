#include "cveacc/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace cveacc {

namespace {

double number_at(const Json& j, const char* what) {
  if (!j.is_number()) throw ParseError(std::string(what) + ": expected a number");
  return j.get<double>();
}

int integer_at(const Json& j, const char* what) {
  if (!j.is_number_integer()) throw ParseError(std::string(what) + ": expected an integer");
  return j.get<int>();
}

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw ParseError(std::string("missing field \"") + key + "\"");
  }
  return j.at(key);
}

Vector vector_from_json(const Json& j, const char* what) {
  if (!j.is_array()) throw ParseError(std::string(what) + ": expected an array");
  Vector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v[static_cast<Eigen::Index>(i)] = number_at(j[i], what);
  return v;
}

Json vector_to_json(const Vector& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v[i]);
  return out;
}

Json matrix_to_json(const Matrix& m) {
  Json out = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) out.push_back(vector_to_json(m.row(r).transpose()));
  return out;
}

Json rows_to_json(const std::vector<PhaseVector>& rows) {
  Json out = Json::array();
  for (const PhaseVector& r : rows) out.push_back(vector_to_json(r.entries()));
  return out;
}

}  // namespace

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string());
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write " + path.string());
  out << text;
  if (!out) throw ParseError("failed writing " + path.string());
}

std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v == 0.0 ? 0.0 : v);
  return buf;
}

std::string format_vector(const Vector& v) {
  std::string out = "(";
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (i > 0) out += ", ";
    out += format_number(v[i]);
  }
  return out + ")";
}

ParityCheck parity_check_from_json(const Json& j) {
  const int n = integer_at(field(j, "n"), "n");
  if (n < 1) throw DimensionError("parity check: n must be >= 1");
  const Json& rows = field(j, "rows");
  if (!rows.is_array()) throw ParseError("rows: expected an array of rows");
  ParityCheck H{n, {}};
  for (std::size_t r = 0; r < rows.size(); ++r) {
    Vector v = vector_from_json(rows[r], "rows");
    if (v.size() != 2 * n) {
      throw DimensionError("row " + std::to_string(r + 1) + " has " +
                           std::to_string(v.size()) + " entries, expected " +
                           std::to_string(2 * n));
    }
    H.rows.emplace_back(std::move(v));
  }
  return H;
}

Json to_json(const ParityCheck& H) { return {{"n", H.n}, {"rows", rows_to_json(H.rows)}}; }

Circuit circuit_from_json(const Json& j) {
  if (!j.is_array()) throw ParseError("circuit: expected an array of gates");
  Circuit circuit;
  for (const Json& g : j) {
    Gate gate;
    const Json& name = field(g, "gate");
    if (!name.is_string()) throw ParseError("gate: expected a string");
    gate.kind = gate_kind_from_name(name.get<std::string>());
    const Json& modes = field(g, "modes");
    const std::size_t want = is_two_mode(gate.kind) ? 2 : 1;
    if (!modes.is_array() || modes.size() != want) {
      throw ParseError(std::string(gate_name(gate.kind)) + ": expected " +
                       std::to_string(want) + " mode(s)");
    }
    gate.m1 = integer_at(modes[0], "modes");
    if (want == 2) gate.m2 = integer_at(modes[1], "modes");
    if (has_parameter(gate.kind)) {
      gate.param = number_at(field(g, "param"), "param");
    } else if (g.contains("param")) {
      throw ParseError(std::string(gate_name(gate.kind)) + " takes no parameter");
    }
    circuit.n = std::max({circuit.n, gate.m1, gate.m2});
    circuit.gates.push_back(gate);
  }
  for (const Gate& g : circuit.gates) validate_gate(g, circuit.n);
  return circuit;
}

Json to_json(const Circuit& circuit) {
  Json out = Json::array();
  for (const Gate& g : circuit.gates) {
    Json item = {{"gate", std::string(gate_name(g.kind))}};
    item["modes"] = is_two_mode(g.kind) ? Json{g.m1, g.m2} : Json{g.m1};
    if (has_parameter(g.kind)) item["param"] = g.param;
    out.push_back(std::move(item));
  }
  return out;
}

Json to_json(const CodeParameters& p) {
  return {{"n", p.n}, {"k", p.k}, {"l", p.l}, {"c", p.c}};
}

Json to_json(const SymplecticDecomposition& dec) {
  Json pairs = Json::array();
  for (const HyperbolicPair& hp : dec.pairs) {
    pairs.push_back({{"u", vector_to_json(hp.u.entries())}, {"v", vector_to_json(hp.v.entries())}});
  }
  return {{"n", dec.n},
          {"pairs", std::move(pairs)},
          {"isotropic", rows_to_json(dec.isotropic)},
          {"dropped_rows", dec.dropped_rows},
          {"gram_defect", gram_defect(dec)}};
}

Json to_json(const AugmentedParityCheck& H) {
  return {{"n_alice", H.n_alice}, {"c", H.c}, {"rows", rows_to_json(H.rows)}};
}

Json to_json(const CompilerReport& report) {
  Json counts = Json::object();
  for (GateKind kind : kAllGateKinds) counts[std::string(gate_name(kind))] = report.count(kind);
  return {{"gate_counts", std::move(counts)},
          {"total_gates", report.total()},
          {"squeezers", report.squeezers},
          {"max_abs_param", report.max_abs_param},
          {"rounds", report.rounds}};
}

Json to_json(const CodeSpec& code) {
  return {{"params", to_json(code.params)},
          {"input", to_json(code.input)},
          {"H", to_json(code.H)},
          {"F", to_json(code.F)},
          {"H_aug", to_json(code.H_aug)},
          {"F_aug", to_json(code.F_aug)},
          {"upsilon", matrix_to_json(code.upsilon.matrix())},
          {"parity_map_defect", parity_map_defect(code)},
          {"verified", true}};
}

CodeSpec code_from_json(const Json& j, double tol) {
  const bool full = j.is_object() && j.contains("input");
  const ParityCheck input = parity_check_from_json(full ? j.at("input") : j);
  CodeSpec code = build_code(input.rows, tol);
  if (!full) return code;

  const Json& stored = field(j, "upsilon");
  const int dim = 2 * code.params.n;
  if (!stored.is_array() || stored.size() != static_cast<std::size_t>(dim)) {
    throw ParseError("upsilon: expected " + std::to_string(dim) + " rows");
  }
  double deviation = 0.0;
  for (int r = 0; r < dim; ++r) {
    const Vector row = vector_from_json(stored[static_cast<std::size_t>(r)], "upsilon");
    if (row.size() != dim) throw ParseError("upsilon: ragged matrix");
    deviation = std::max(deviation,
                         (row.transpose() - code.upsilon.matrix().row(r)).cwiseAbs().maxCoeff());
  }
  if (deviation > kParityMapTolerance) {
    throw ParseError("code file: stored upsilon differs from the rebuilt one by " +
                     format_number(deviation));
  }
  return code;
}

PhaseVector error_from_json(const Json& j, int n) {
  if (j.is_object() && j.contains("mode")) {
    const int mode = integer_at(j.at("mode"), "mode");
    if (mode < 1 || mode > n) {
      throw DimensionError("error mode " + std::to_string(mode) + " out of range for n = " +
                           std::to_string(n));
    }
    return PhaseVector::single_mode(n, mode, number_at(field(j, "p"), "p"),
                                    number_at(field(j, "x"), "x"));
  }
  const Vector p = vector_from_json(field(j, "p"), "p");
  const Vector x = vector_from_json(field(j, "x"), "x");
  if (p.size() != n || x.size() != n) {
    throw DimensionError("error vector must have " + std::to_string(n) + " p and x entries");
  }
  return PhaseVector::from_blocks(p, x);
}

Syndrome syndrome_from_json(const Json& j) {
  const Json& values = j.is_object() ? field(j, "syndrome") : j;
  return {vector_from_json(values, "syndrome")};
}

Json to_json(const Syndrome& s) { return {{"syndrome", vector_to_json(s.values)}}; }

Json to_json(const Correction& c) {
  Json out = {{"p", vector_to_json(c.u_prime.p_block())},
              {"x", vector_to_json(c.u_prime.x_block())},
              {"residual", c.residual}};
  if (c.mode) {
    out["mode"] = *c.mode;
    out["mode_p"] = c.u_prime.p(*c.mode - 1);
    out["mode_x"] = c.u_prime.x(*c.mode - 1);
  } else {
    out["mode"] = nullptr;
  }
  return out;
}

ExperimentFile experiment_file_from_json(const Json& j) {
  ExperimentFile f;
  const Json& code = field(j, "code_file");
  if (!code.is_string()) throw ParseError("code_file: expected a path");
  f.code_file = code.get<std::string>();
  f.error = field(j, "error");
  f.squeezing_r = number_at(field(j, "squeezing_r"), "squeezing_r");
  f.trials = integer_at(field(j, "trials"), "trials");
  const Json& seed = field(j, "seed");
  if (!seed.is_number_integer()) throw ParseError("seed: expected an integer");
  f.seed = seed.get<std::uint64_t>();
  return f;
}

Json to_json(const ExperimentStats& s) {
  Json out = {{"trials", s.trials},
              {"squeezing_r", s.squeezing_r},
              {"mean_residual", s.mean_residual},
              {"residual_std_error", s.residual_std_error},
              {"excess_variance", s.excess_variance},
              {"syndrome_noise_variance", s.syndrome_noise_variance},
              {"correct_mode", s.correct_mode},
              {"correct_mode_fraction", s.correct_mode_fraction()},
              {"ambiguous", s.ambiguous},
              {"uncorrectable", s.uncorrectable}};
  out["error_mode"] = s.error_mode ? Json(*s.error_mode) : Json(nullptr);
  return out;
}

}  // namespace cveacc
