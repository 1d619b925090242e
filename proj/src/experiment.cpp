#include "cveacc/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <thread>

#include "cveacc/optics.hpp"
#include "cveacc/syndrome.hpp"

namespace cveacc {

namespace {

// Neumaier's compensated sum.
class CompensatedSum {
 public:
  void add(double v) {
    const double t = sum_ + v;
    if (std::abs(sum_) >= std::abs(v)) {
      comp_ += (sum_ - t) + v;
    } else {
      comp_ += (v - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

struct TrialResult {
  Vector residual;
  Vector cov_excess;
  Vector noise;
  DecodeStatus status = DecodeStatus::Ok;
  std::optional<int> mode;
};

std::optional<int> single_error_mode(const PhaseVector& error) {
  std::optional<int> mode;
  for (int i = 0; i < error.modes(); ++i) {
    if (error.p(i) == 0.0 && error.x(i) == 0.0) continue;
    if (mode) {
      throw DimensionError("run_ec_experiment: error acts on more than one mode");
    }
    mode = i + 1;
  }
  return mode;
}

class Trial {
 public:
  Trial(const CodeSpec& code, const PhaseVector& error, const ExperimentConfig& config)
      : code_(code), error_(error), config_(config) {
    const auto& p = code.params;
    const int total = p.n + p.c;
    const Circuit encoder = compile_encoder(code);
    encode_ = widen(encoder, total);
    pair_check_ = Circuit{total, {}};
    for (int j = 1; j <= p.c; ++j) pair_check_.gates.push_back(Gate::qnd_x(j, p.n + j, -1.0));
    unencode_matrix_ = circuit_action(invert_circuit(encoder)).matrix();

    error_shift_ = Vector::Zero(2 * total);
    error_shift_.head(p.n) = error.x_block();
    error_shift_.segment(total, p.n) = error.p_block();

    noise_norm_ = std::sqrt(expected_syndrome_noise(p, config.squeezing_r).sum());
  }

  TrialResult run(std::uint64_t index) const {
    const auto [n, k, l, c] = code_.params;
    Rng rng = trial_rng(config_.seed, index);

    std::normal_distribution<double> normal(0.0, 1.0);
    Vector data_means(2 * k);
    for (int i = 0; i < 2 * k; ++i) data_means[i] = normal(rng);

    GaussianState state = canonical_input_state(code_.params, config_.squeezing_r, data_means);
    state = apply_circuit(state, encode_);
    state = displace(state, error_shift_);
    state = apply_inverse_circuit(state, encode_);
    state = apply_circuit(state, pair_check_);

    // Highest mode first so that lower mode numbers stay valid.
    Vector s(l + 2 * c);
    for (int j = c; j >= 1; --j) {
      HomodyneRecord rec = homodyne(state, n + j, Quadrature::X, rng);
      s[j - 1] = -rec.outcome;  // x_B - x_A after the QND
      state = std::move(rec.posterior);
    }
    for (int i = l; i >= 1; --i) {
      HomodyneRecord rec = homodyne(state, c + i, Quadrature::X, rng);
      s[c + i - 1] = rec.outcome;
      state = std::move(rec.posterior);
    }
    for (int j = c; j >= 1; --j) {
      HomodyneRecord rec = homodyne(state, j, Quadrature::P, rng);
      s[c + l + j - 1] = rec.outcome;
      state = std::move(rec.posterior);
    }

    TrialResult out;
    out.noise = s - syndrome(code_, error_).values;

    const double tol = noise_norm_ > 0.0
                           ? config_.decode_sigmas * noise_norm_ / std::max(1.0, s.norm())
                           : kDefaultTolerance;
    const SingleModeDecode decoded = rank_single_mode(code_, Syndrome{s}, tol);
    out.status = decoded.status;
    out.mode = decoded.correction.mode;

    const PhaseVector& u = decoded.correction.u_prime;
    Vector shift(2 * n);
    shift << u.x_block(), u.p_block();
    const Vector canonical = unencode_matrix_ * shift;
    Vector correction(2 * k);
    correction << canonical.segment(c + l, k), canonical.segment(n + c + l, k);
    state = displace(state, -correction);

    out.residual = state.mean() - data_means;
    out.cov_excess = state.cov().diagonal().array() - 0.5;
    return out;
  }

 private:
  const CodeSpec& code_;
  const PhaseVector& error_;
  const ExperimentConfig& config_;
  Circuit encode_;
  Circuit pair_check_;
  Matrix unencode_matrix_;
  Vector error_shift_;
  double noise_norm_ = 0.0;
};

}  // namespace

Rng trial_rng(std::uint64_t seed, std::uint64_t trial) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(trial),
                    static_cast<std::uint32_t>(trial >> 32)};
  return Rng(seq);
}

GaussianState canonical_input_state(const CodeParameters& params, double r,
                                    const Vector& data_means) {
  const auto [n, k, l, c] = params;
  if (data_means.size() != 2 * k) {
    throw DimensionError("canonical_input_state: expected " + std::to_string(2 * k) +
                         " data means");
  }
  if (!(r >= 0.0) || !std::isfinite(r)) {
    throw DimensionError("squeezing parameter must be finite and >= 0");
  }
  const int total = n + c;
  const Real lo = std::exp(-Real(r));
  const Real hi = std::exp(Real(r));
  const Real root_half = std::sqrt(Real(0.5));

  RVector mean = RVector::Zero(2 * total);
  RMatrix f = RMatrix::Zero(2 * total, 2 * total);
  int col = 0;
  for (int j = 0; j < c; ++j) {
    const int xa = j;
    const int xb = n + j;
    const int pa = total + xa;
    const int pb = total + xb;
    f(xa, col) = hi * root_half;
    f(xb, col) = hi * root_half;
    f(xa, col + 1) = lo * root_half;
    f(xb, col + 1) = -lo * root_half;
    f(pa, col + 2) = lo * root_half;
    f(pb, col + 2) = lo * root_half;
    f(pa, col + 3) = hi * root_half;
    f(pb, col + 3) = -hi * root_half;
    col += 4;
  }
  for (int i = c; i < c + l; ++i) {
    f(i, col++) = lo;
    f(total + i, col++) = hi;
  }
  for (int d = 0; d < k; ++d) {
    const int x = c + l + d;
    f(x, col++) = 1;
    f(total + x, col++) = 1;
    mean[x] = data_means[d];
    mean[total + x] = data_means[k + d];
  }
  return {std::move(mean), std::move(f)};
}

Vector expected_syndrome_noise(const CodeParameters& params, double r) {
  const double squeezed = std::exp(-2.0 * r);
  Vector v(params.l + 2 * params.c);
  v.head(params.c).setConstant(squeezed);
  v.segment(params.c, params.l).setConstant(squeezed / 2.0);
  v.tail(params.c).setConstant(squeezed);
  return v;
}

ExperimentStats run_ec_experiment(const CodeSpec& code, const PhaseVector& error,
                                  const ExperimentConfig& config) {
  if (config.trials < 1) throw DimensionError("run_ec_experiment: trials must be >= 1");
  if (error.modes() != code.params.n) {
    throw DimensionError("run_ec_experiment: error acts on " +
                         std::to_string(error.modes()) + " modes, code has " +
                         std::to_string(code.params.n));
  }
  const std::optional<int> error_mode = single_error_mode(error);
  const Trial trial(code, error, config);

  std::vector<TrialResult> results(static_cast<std::size_t>(config.trials));
  int threads = config.threads > 0 ? config.threads
                                   : static_cast<int>(std::thread::hardware_concurrency());
  threads = std::clamp(threads, 1, config.trials);
  if (threads == 1) {
    for (int t = 0; t < config.trials; ++t) results[t] = trial.run(t);
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < threads; ++w) {
      pool.emplace_back([&, w] {
        for (int t = w; t < config.trials; t += threads) results[t] = trial.run(t);
      });
    }
    for (auto& th : pool) th.join();
  }

  const int k = code.params.k;
  const int m = code.H.size();
  const double count = config.trials;

  ExperimentStats stats;
  stats.trials = config.trials;
  stats.squeezing_r = config.squeezing_r;
  stats.error_mode = error_mode;

  for (int q = 0; q < 2 * k; ++q) {
    CompensatedSum sum;
    CompensatedSum excess;
    for (const TrialResult& r : results) {
      sum.add(r.residual[q]);
      excess.add(r.cov_excess[q]);
    }
    const double mean = sum.value() / count;
    CompensatedSum sq;
    for (const TrialResult& r : results) sq.add((r.residual[q] - mean) * (r.residual[q] - mean));
    const double var = config.trials > 1 ? sq.value() / (count - 1) : 0.0;
    stats.mean_residual.push_back(mean);
    stats.residual_std_error.push_back(std::sqrt(var / count));
    stats.excess_variance.push_back(std::max(0.0, var + excess.value() / count));
  }

  for (int i = 0; i < m; ++i) {
    CompensatedSum sum;
    for (const TrialResult& r : results) sum.add(r.noise[i]);
    const double mean = sum.value() / count;
    CompensatedSum sq;
    for (const TrialResult& r : results) sq.add((r.noise[i] - mean) * (r.noise[i] - mean));
    stats.syndrome_noise_variance.push_back(config.trials > 1 ? sq.value() / (count - 1)
                                                              : 0.0);
  }

  for (const TrialResult& r : results) {
    switch (r.status) {
      case DecodeStatus::Ambiguous:
        ++stats.ambiguous;
        break;
      case DecodeStatus::Uncorrectable:
        ++stats.uncorrectable;
        break;
      case DecodeStatus::Ok:
        if (r.mode == error_mode) ++stats.correct_mode;
        break;
    }
  }
  return stats;
}

}  // namespace cveacc
