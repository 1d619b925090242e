#pragma once

#include <filesystem>
#include <string>

#include <nlohmann/json.hpp>

#include "cveacc/code.hpp"
#include "cveacc/experiment.hpp"
#include "cveacc/optics.hpp"
#include "cveacc/syndrome.hpp"

namespace cveacc {

using Json = nlohmann::json;

// Throws ParseError for unreadable files and malformed JSON.
Json read_json_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);

// Twelve significant digits.
std::string format_number(double v);
std::string format_vector(const Vector& v);

// {"n": int, "rows": [[2n floats]]}, rows in (p|x) order.
ParityCheck parity_check_from_json(const Json& j);
Json to_json(const ParityCheck& H);

// Array of {"gate", "modes", "param"}. The register size is the largest mode
// referenced.
Circuit circuit_from_json(const Json& j);
Json to_json(const Circuit& circuit);

Json to_json(const CodeParameters& params);
Json to_json(const SymplecticDecomposition& dec);
Json to_json(const AugmentedParityCheck& H);
Json to_json(const CompilerReport& report);

// Code files store the caller's rows together with everything build_code
// derived from them. Loading rebuilds from "input" and rejects files whose
// stored Upsilon disagrees. A bare parity-check file is also accepted.
Json to_json(const CodeSpec& code);
CodeSpec code_from_json(const Json& j, double tol = kDefaultTolerance);

// Either {"mode": int, "p": float, "x": float} (1-based mode) or
// {"p": [n floats], "x": [n floats]}.
PhaseVector error_from_json(const Json& j, int n);

// {"syndrome": [floats]} or a bare array.
Syndrome syndrome_from_json(const Json& j);
Json to_json(const Syndrome& s);
Json to_json(const Correction& c);

struct ExperimentFile {
  std::string code_file;
  Json error;
  double squeezing_r = 20.0;
  int trials = 1000;
  std::uint64_t seed = 0;
};
ExperimentFile experiment_file_from_json(const Json& j);
Json to_json(const ExperimentStats& stats);

}  // namespace cveacc
