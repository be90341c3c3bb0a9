#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "paincert/certificate.hpp"
#include "paincert/degree_config.hpp"
#include "paincert/sweep.hpp"
#include "paincert/weight_table.hpp"

namespace paincert {

enum class DriftMode {
  /// i.i.d. increments: a config drawn from the non-terminating distribution
  /// contributes its worst-case drift (overline r).
  kLowerBound,
  /// Full chain walk: equalise at the current weight, step into a direction
  /// chosen by the direction weights, round the next weight down to the grid.
  kPath,
};

const char* to_string(DriftMode mode);
DriftMode drift_mode_from_string(const std::string& s);

struct DriftOptions {
  DriftMode mode = DriftMode::kLowerBound;
  int steps = 10000;
  int n_paths = 10000;
  std::uint64_t seed = 0;
  int threads = 1;
  /// Path mode: starting grid index; 0 means M/5.
  int start_index = 0;
  /// Path mode: use this config at every step instead of sampling.
  std::optional<DegreeConfig> forced_config;
  /// Running-sum level used for fraction_exceeding.
  double exceed_threshold = 1.0;
  /// Number of leading paths whose running sums are kept (at most 100).
  int capture_trajectories = 0;
  double accuracy = kDefaultAccuracy;
};

inline constexpr int kMaxDriftSteps = 100000;
inline constexpr int kMaxCapturedTrajectories = 100;
inline constexpr double kDriftConfidence = 0.99;

struct DriftStats {
  DriftMode mode = DriftMode::kLowerBound;
  std::int64_t n_paths = 0;
  std::int64_t n_steps = 0;
  /// Increments that entered the mean (sentinel cells excluded).
  std::int64_t n_increments = 0;
  double mean_increment = 0.0;
  double variance = 0.0;
  /// 99% normal-approximation interval for the mean.
  double ci_low = 0.0;
  double ci_high = 0.0;
  double exceed_threshold = 0.0;
  /// Share of paths whose running maximum passed exceed_threshold.
  double fraction_exceeding = 0.0;
  std::uint64_t seed = 0;
  /// Path mode: steps whose cell saturated the common-value bracket.
  std::int64_t sentinel_events = 0;
  /// Path mode: largest |phi^w_N - phi_N - log(W(p_N)/p_N)| over paths, with
  /// phi^w_0 = log W(p_0); zero up to rounding when the sums telescope.
  double max_phi_divergence = 0.0;
  /// Running sum after the last step, per path.
  std::vector<double> final_sums;
  /// Running sums of the first captured paths (not serialised to JSON).
  std::vector<std::vector<double>> trajectories;
};

/// Lower-bound mode needs `sweep` (per-config min drift and q-hat); path
/// mode ignores it. Deterministic for a fixed seed whatever the thread count.
/// Throws ConfigurationError on invalid options.
DriftStats simulate_drift(const DriftOptions& options, const WTable& table,
                          const SweepReport* sweep);

/// Kolmogorov-type growth check: the share of paths whose final sum is below
/// (rate/2) N must not exceed 4B/(N rate^2) plus a 3-sigma binomial slack,
/// with B the measured per-step variance. Lower-bound stats only.
Certificate check_linear_growth(const DriftStats& stats, double rate);

/// Sorted-config sampler with probabilities noperm * config_prob / q-hat.
class ConfigSampler {
 public:
  explicit ConfigSampler(QHat qhat);
  /// Index into all_sorted_configs().
  std::size_t draw(double u) const;
  const std::vector<double>& probabilities() const noexcept { return probs_; }

 private:
  std::vector<double> probs_;
  std::vector<double> cdf_;
};

}  // namespace paincert
