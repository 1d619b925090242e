#include <cmath>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cveacc/experiment.hpp"
#include "cveacc/io.hpp"
#include "cveacc/selftest.hpp"

namespace {

using namespace cveacc;

enum Exit : int {
  kOk = 0,
  kFailure = 1,
  kParse = 2,
  kDimension = 3,
  kBuildVerify = 4,
  kDecode = 5,
  kCircuitVerify = 6,
};

constexpr double kCircuitTolerance = 1e-8;

struct Options {
  double tolerance = kDefaultTolerance;
  std::optional<std::uint64_t> seed;
  bool json = false;
  std::string output;
};

// JSON goes to --output when given, otherwise to stdout when --json is set or
// when the command produces a file artefact.
void emit(const Options& opt, const Json& j, const std::string& human,
          bool artefact = false) {
  if (!opt.output.empty()) {
    write_text_file(opt.output, j.dump(2) + "\n");
    if (!opt.json && !human.empty()) std::cout << human;
    return;
  }
  if (opt.json || artefact) {
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << human;
  }
}

std::string describe(const CodeParameters& p) {
  return "n=" + std::to_string(p.n) + " k=" + std::to_string(p.k) +
         " l=" + std::to_string(p.l) + " c=" + std::to_string(p.c) + "\n";
}

int cmd_decompose(const Options& opt, const std::string& file) {
  const ParityCheck H = parity_check_from_json(read_json_file(file));
  const SymplecticDecomposition dec = symplectic_gram_schmidt(H.rows, opt.tolerance);
  const CodeParameters params = code_parameters(dec);
  Json j = to_json(dec);
  j["params"] = to_json(params);

  std::string human = describe(params);
  human += "gram defect: " + format_number(gram_defect(dec)) + "\n";
  for (int i = 0; i < dec.c(); ++i) {
    human += "u" + std::to_string(i + 1) + " = " + format_vector(dec.pairs[i].u.entries()) + "\n";
    human += "v" + std::to_string(i + 1) + " = " + format_vector(dec.pairs[i].v.entries()) + "\n";
  }
  for (int i = 0; i < dec.l(); ++i) {
    human += "iso" + std::to_string(i + 1) + " = " + format_vector(dec.isotropic[i].entries()) + "\n";
  }
  if (!dec.dropped_rows.empty()) {
    human += "dropped dependent rows (1-based):";
    for (int r : dec.dropped_rows) human += " " + std::to_string(r + 1);
    human += "\n";
  }
  emit(opt, j, human);
  return kOk;
}

int cmd_build(const Options& opt, const std::string& file) {
  const ParityCheck H = parity_check_from_json(read_json_file(file));
  const CodeSpec code = build_code(H.rows, opt.tolerance);
  emit(opt, to_json(code),
       describe(code.params) + "H upsilon^T = F verified (defect " +
           format_number(parity_map_defect(code)) + ")\n",
       true);
  return kOk;
}

int cmd_syndrome(const Options& opt, const std::string& code_file,
                 const std::string& error_file, std::optional<int> mode, double p,
                 double x) {
  const CodeSpec code = code_from_json(read_json_file(code_file), opt.tolerance);
  PhaseVector u;
  if (!error_file.empty()) {
    u = error_from_json(read_json_file(error_file), code.params.n);
  } else if (mode) {
    u = error_from_json(Json{{"mode", *mode}, {"p", p}, {"x", x}}, code.params.n);
  } else {
    u = PhaseVector::zeros(code.params.n);
  }
  const Syndrome s = syndrome(code, u);
  emit(opt, to_json(s), "syndrome: " + format_vector(s.values) + "\n");
  return kOk;
}

int cmd_decode(const Options& opt, const std::string& code_file,
               const std::string& syndrome_file, const std::vector<double>& values) {
  const CodeSpec code = code_from_json(read_json_file(code_file), opt.tolerance);
  Syndrome s;
  if (!syndrome_file.empty()) {
    s = syndrome_from_json(read_json_file(syndrome_file));
  } else {
    s.values = Eigen::Map<const Vector>(values.data(), static_cast<Eigen::Index>(values.size()));
  }
  const Correction fix = decode_single_mode(code, s, opt.tolerance);
  std::string human;
  if (fix.mode) {
    human = "mode " + std::to_string(*fix.mode) + " p=" +
            format_number(fix.u_prime.p(*fix.mode - 1)) +
            " x=" + format_number(fix.u_prime.x(*fix.mode - 1)) + "\n";
  } else {
    human = "no error\n";
  }
  emit(opt, to_json(fix), human);
  return kOk;
}

double circuit_deviation(const Circuit& circuit, const QuadAction& target) {
  const Matrix diff = circuit_action(circuit).matrix() - target.matrix();
  return diff.cwiseAbs().maxCoeff();
}

double circuit_bound(const QuadAction& target) {
  return kCircuitTolerance * (1.0 + target.matrix().cwiseAbs().rowwise().sum().maxCoeff());
}

int cmd_compile(const Options& opt, const std::string& code_file) {
  const CodeSpec code = code_from_json(read_json_file(code_file), opt.tolerance);
  const QuadAction target = encoder_action(code);
  const Decomposition d = decompose(target);
  const double dev = circuit_deviation(d.circuit, target);
  const double bound = circuit_bound(target);
  if (dev > bound) {
    std::cerr << "compiled circuit deviates from the encoder by " << format_number(dev)
              << " (bound " << format_number(bound) << ")\n";
    return kCircuitVerify;
  }
  if (!opt.json) {
    std::cerr << d.circuit.gates.size() << " gates, max deviation " << format_number(dev)
              << "\n";
  }
  emit(opt, to_json(d.circuit), "", true);
  return kOk;
}

int cmd_verify(const Options& opt, const std::string& circuit_file,
               const std::string& code_file) {
  const CodeSpec code = code_from_json(read_json_file(code_file), opt.tolerance);
  Circuit circuit = circuit_from_json(read_json_file(circuit_file));
  if (circuit.n > code.params.n) {
    throw DimensionError("circuit touches mode " + std::to_string(circuit.n) +
                         " but the code has " + std::to_string(code.params.n));
  }
  circuit = widen(circuit, code.params.n);
  const QuadAction target = encoder_action(code);
  const double dev = circuit_deviation(circuit, target);
  const double bound = circuit_bound(target);
  const bool ok = dev <= bound;
  Json j = {{"passed", ok}, {"max_deviation", dev}, {"bound", bound},
            {"gates", circuit.gates.size()}};
  emit(opt, j,
       std::string(ok ? "PASS" : "FAIL") + ": max deviation " + format_number(dev) +
           " (bound " + format_number(bound) + ")\n");
  return ok ? kOk : kCircuitVerify;
}

int cmd_simulate(const Options& opt, const std::string& config_file, int threads) {
  const ExperimentFile file = experiment_file_from_json(read_json_file(config_file));
  std::filesystem::path code_path(file.code_file);
  if (code_path.is_relative()) {
    code_path = std::filesystem::path(config_file).parent_path() / code_path;
  }
  const CodeSpec code = code_from_json(read_json_file(code_path), opt.tolerance);
  const PhaseVector error = error_from_json(file.error, code.params.n);

  ExperimentConfig config;
  config.squeezing_r = file.squeezing_r;
  config.trials = file.trials;
  config.seed = opt.seed.value_or(file.seed);
  config.threads = threads;
  const ExperimentStats stats = run_ec_experiment(code, error, config);

  std::string human = "trials " + std::to_string(stats.trials) + ", r = " +
                      format_number(stats.squeezing_r) + "\n";
  human += "correct mode fraction " + format_number(stats.correct_mode_fraction()) +
           " (ambiguous " + std::to_string(stats.ambiguous) + ", uncorrectable " +
           std::to_string(stats.uncorrectable) + ")\n";
  auto as_vector = [](const std::vector<double>& v) {
    return format_vector(Eigen::Map<const Vector>(v.data(), static_cast<Eigen::Index>(v.size())));
  };
  human += "mean residual " + as_vector(stats.mean_residual) + "\n";
  human += "std error " + as_vector(stats.residual_std_error) + "\n";
  human += "excess variance " + as_vector(stats.excess_variance) + "\n";
  human += "syndrome noise variance " + as_vector(stats.syndrome_noise_variance) + "\n";
  emit(opt, to_json(stats), human);
  return kOk;
}

int cmd_selftest(const Options& opt, const std::string& fixture_file) {
  const Fixtures fixtures = fixture_file.empty()
                                ? worked_example_fixtures()
                                : fixtures_from_json(read_json_file(fixture_file));
  const std::vector<SelftestCheck> checks = run_selftest(fixtures);
  const Json j = to_json(checks);
  std::string human;
  for (const SelftestCheck& c : checks) {
    human += std::string(c.passed ? "PASS " : "FAIL ") + c.name + ": deviation " +
             format_number(c.deviation) + " (tol " + format_number(c.tolerance) + ")";
    if (!c.detail.empty()) human += " " + c.detail;
    human += "\n";
  }
  emit(opt, j, human);
  return j.at("passed").get<bool>() ? kOk : kFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Continuous-variable entanglement-assisted code toolkit"};
  app.require_subcommand(1);

  Options opt;
  std::uint64_t seed = 0;
  app.add_option("--tolerance", opt.tolerance, "Numerical tolerance")
      ->check(CLI::PositiveNumber);
  auto* seed_opt = app.add_option("--seed", seed, "Master seed (overrides config files)");
  app.add_flag("--json", opt.json, "Machine-readable output on stdout");
  app.add_option("--output", opt.output, "Write the JSON result to this file");

  std::string file_a;
  std::string file_b;
  std::string aux_file;
  int mode = 0;
  double p = 0.0;
  double x = 0.0;
  std::vector<double> values;
  int threads = 1;

  auto* decompose = app.add_subcommand("decompose", "Symplectic Gram-Schmidt of a matrix file");
  decompose->add_option("matrix_file", file_a)->required()->check(CLI::ExistingFile);

  auto* build = app.add_subcommand("build", "Build a code file from a parity-check file");
  build->add_option("matrix_file", file_a)->required()->check(CLI::ExistingFile);

  auto* syn = app.add_subcommand("syndrome", "Syndrome of a displacement error");
  syn->add_option("code_file", file_a)->required()->check(CLI::ExistingFile);
  auto* mode_opt = syn->add_option("--mode", mode, "Mode of a single-mode error (1-based)");
  syn->add_option("--p", p, "Momentum displacement")->needs(mode_opt);
  syn->add_option("--x", x, "Position displacement")->needs(mode_opt);
  auto* err_opt = syn->add_option("--error", aux_file, "Error JSON file")->check(CLI::ExistingFile);
  err_opt->excludes(mode_opt);

  auto* dec = app.add_subcommand("decode", "Single-mode decoding of a syndrome");
  dec->add_option("code_file", file_a)->required()->check(CLI::ExistingFile);
  auto* syn_file = dec->add_option("--syndrome", aux_file, "Syndrome JSON file")
                       ->check(CLI::ExistingFile);
  dec->add_option("--values", values, "Syndrome values")->excludes(syn_file);

  auto* compile = app.add_subcommand("compile", "Compile the encoder of a code file");
  compile->add_option("code_file", file_a)->required()->check(CLI::ExistingFile);

  auto* verify = app.add_subcommand("verify", "Check a circuit file against a code file");
  verify->add_option("circuit_file", file_a)->required()->check(CLI::ExistingFile);
  verify->add_option("code_file", file_b)->required()->check(CLI::ExistingFile);

  auto* simulate = app.add_subcommand("simulate", "Finite-squeezing error-correction experiment");
  simulate->add_option("config_file", file_a)->required()->check(CLI::ExistingFile);
  simulate->add_option("--threads", threads, "Worker threads (0 = all cores)")
      ->check(CLI::NonNegativeNumber);

  auto* selftest = app.add_subcommand("selftest", "Run the embedded example fixtures");
  selftest->add_option("--fixtures", aux_file, "Replacement fixture file")
      ->check(CLI::ExistingFile);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kParse;
  }
  if (seed_opt->count() > 0) opt.seed = seed;

  try {
    if (*decompose) return cmd_decompose(opt, file_a);
    if (*build) return cmd_build(opt, file_a);
    if (*syn) {
      return cmd_syndrome(opt, file_a, aux_file,
                          mode_opt->count() > 0 ? std::optional<int>(mode) : std::nullopt, p, x);
    }
    if (*dec) {
      if (aux_file.empty() && values.empty()) {
        std::cerr << "decode: give --syndrome FILE or --values\n";
        return kParse;
      }
      return cmd_decode(opt, file_a, aux_file, values);
    }
    if (*compile) return cmd_compile(opt, file_a);
    if (*verify) return cmd_verify(opt, file_a, file_b);
    if (*simulate) return cmd_simulate(opt, file_a, threads);
    if (*selftest) return cmd_selftest(opt, aux_file);
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kParse;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kParse;
  } catch (const DimensionError& e) {
    std::cerr << "dimension error: " << e.what() << "\n";
    return kDimension;
  } catch (const VerificationError& e) {
    std::cerr << "verification failed: " << e.what() << "\n";
    return kBuildVerify;
  } catch (const NotSymplecticError& e) {
    std::cerr << "verification failed: " << e.what() << "\n";
    return kBuildVerify;
  } catch (const DecodeError& e) {
    std::cerr << "decode failed: " << e.what() << "\n";
    return kDecode;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFailure;
  }
  return kFailure;
}
