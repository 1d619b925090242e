#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "cveacc/code.hpp"
#include "cveacc/gaussian.hpp"

namespace cveacc {

struct ExperimentConfig {
  double squeezing_r = 20.0;
  int trials = 1000;
  std::uint64_t seed = 0;
  // 0 picks std::thread::hardware_concurrency().
  int threads = 1;
  // Decoder threshold in units of the expected syndrome noise norm.
  double decode_sigmas = 6.0;
};

// Data quadratures are reported in (x_1..x_k | p_1..p_k) order over the data
// modes of the canonical layout.
struct ExperimentStats {
  int trials = 0;
  double squeezing_r = 0.0;
  std::optional<int> error_mode;
  std::vector<double> mean_residual;
  std::vector<double> residual_std_error;
  std::vector<double> excess_variance;
  // One entry per row of code.H.
  std::vector<double> syndrome_noise_variance;
  int correct_mode = 0;
  int ambiguous = 0;
  int uncorrectable = 0;

  double correct_mode_fraction() const {
    return trials > 0 ? static_cast<double>(correct_mode) / trials : 0.0;
  }
};

// Random seeded stream for one trial, derived from (seed, trial).
Rng trial_rng(std::uint64_t seed, std::uint64_t trial);

// Canonical input over n + c modes: EPR(r) pairs (Alice j, Bob n + j),
// position-squeezed(r) ancillas and coherent data modes with the given means
// (x_1..x_k | p_1..p_k).
GaussianState canonical_input_state(const CodeParameters& params, double r,
                                    const Vector& data_means);

// Variance of each syndrome component due to finite squeezing, in H row order.
Vector expected_syndrome_noise(const CodeParameters& params, double r);

// Encodes random coherent data, applies the displacement `error`, extracts the
// syndrome by un-encoding and homodyning the canonical modes, decodes with the
// single-mode decoder and corrects. Decoding failures are counted; the best
// hypothesis is still applied. The error must act on the n Alice modes.
ExperimentStats run_ec_experiment(const CodeSpec& code, const PhaseVector& error,
                                  const ExperimentConfig& config);

}  // namespace cveacc
