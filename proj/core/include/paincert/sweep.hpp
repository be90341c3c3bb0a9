#pragma once

#include <functional>
#include <limits>
#include <vector>

#include "paincert/degree_config.hpp"
#include "paincert/qhat.hpp"
#include "paincert/weight_table.hpp"

namespace paincert {

/// Per-config statistics gathered over every grid weight.
struct ConfigStats {
  DegreeConfig config{1, 1, 1, 1};
  /// max |q_k - q_l| over neighbouring sorted positions with j_k = j_l + 1.
  double max_adjacent_diff = 0.0;
  /// max q_k over sorted positions k preceded by a strictly smaller j.
  double max_jump_q = 0.0;
  /// min p + q3 + q4 when j2 > j1 > 1; stays 1 when no cell qualifies.
  double min_tail = 1.0;
  /// min over p of the drift increment (overline r).
  double min_drift = std::numeric_limits<double>::infinity();
  /// Smallest weight q_i seen in any cell.
  double min_q = 1.0;
  int saturated_cells = 0;
  double max_budget_residual = 0.0;
};

struct SweepReport {
  QHat qhat;
  double global_max_adjacent_diff = 0.0;
  double global_max_jump_q = 0.0;
  double global_min_tail = 1.0;
  double rate_s = 0.0;
  std::vector<ConfigStats> per_config;  // lexicographic config order

  int grid_size = 0;
  double accuracy = 0.0;
  double wall_time_seconds = 0.0;
  int thread_count = 1;
};

/// Statistics for one config over m = 1..M-1. The config must be sorted.
ConfigStats sweep_config(const DegreeConfig& config, const WTable& table,
                         double accuracy = kDefaultAccuracy);

/// Called after each finished config with (done, total); may be invoked
/// from worker threads, one call at a time.
using SweepProgress = std::function<void(int, int)>;

/// All 495 configs spread over `thread_count` workers. The report does not
/// depend on the worker count: reductions run in lexicographic order.
SweepReport run_sweep(const WTable& table, double accuracy = kDefaultAccuracy,
                      int thread_count = 1, const SweepProgress& progress = {});

/// Global extrema and the rate from per-config rows (the reduction step of
/// run_sweep, exposed so stored reports can be re-derived).
void aggregate_sweep(SweepReport& report);

/// sum over configs of min_drift * noperm * config_prob, divided by q-hat,
/// accumulated in the given order.
double rate_from_configs(const std::vector<ConfigStats>& per_config, QHat qhat);

}  // namespace paincert
