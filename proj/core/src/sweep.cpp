#include "paincert/sweep.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <mutex>

#include "paincert/combinatorics.hpp"
#include "paincert/equalise.hpp"
#include "paincert/errors.hpp"
#include "parallel.hpp"

namespace paincert {

ConfigStats sweep_config(const DegreeConfig& config, const WTable& table, double accuracy) {
  if (!config.is_sorted()) throw PreconditionError("sweep_config: config must be sorted");
  const auto& j = config.values();
  const int size = table.grid_size();

  ConfigStats stats;
  stats.config = config;
  const bool tail_applies = j[0] > 1 && j[1] > j[0];

  for (int m = 1; m < size; ++m) {
    const EqualisationResult cell = equalise(m, config, table, accuracy);
    const auto& q = cell.q;

    for (std::size_t k = 1; k < kDirections; ++k)
      if (j[k - 1] == j[k] - 1)
        stats.max_adjacent_diff = std::max(stats.max_adjacent_diff, std::abs(q[k] - q[k - 1]));
    for (std::size_t l = 0; l < kDirections; ++l)
      for (std::size_t k = l + 1; k < kDirections; ++k)
        if (j[l] < j[k]) stats.max_jump_q = std::max(stats.max_jump_q, q[k]);
    if (tail_applies) stats.min_tail = std::min(stats.min_tail, m / double(size) + q[2] + q[3]);

    stats.min_drift = std::min(stats.min_drift, cell.drift_increment);
    for (double qi : q) stats.min_q = std::min(stats.min_q, qi);
    if (cell.saturated)
      ++stats.saturated_cells;
    else
      stats.max_budget_residual = std::max(stats.max_budget_residual, cell.budget_residual);
  }
  return stats;
}

double rate_from_configs(const std::vector<ConfigStats>& per_config, QHat qhat) {
  double sum = 0.0;
  for (const auto& row : per_config)
    sum += row.min_drift * config_prob(row.config, qhat) * noperm(row.config);
  return sum / qhat.value;
}

void aggregate_sweep(SweepReport& report) {
  report.global_max_adjacent_diff = 0.0;
  report.global_max_jump_q = 0.0;
  report.global_min_tail = 1.0;
  for (const auto& row : report.per_config) {
    report.global_max_adjacent_diff = std::max(report.global_max_adjacent_diff, row.max_adjacent_diff);
    report.global_max_jump_q = std::max(report.global_max_jump_q, row.max_jump_q);
    report.global_min_tail = std::min(report.global_min_tail, row.min_tail);
  }
  report.rate_s = rate_from_configs(report.per_config, report.qhat);
}

SweepReport run_sweep(const WTable& table, double accuracy, int thread_count,
                      const SweepProgress& progress) {
  if (thread_count < 1) throw ConfigurationError("run_sweep: thread_count must be >= 1");
  const auto start = std::chrono::steady_clock::now();
  const auto& configs = all_sorted_configs();

  SweepReport report;
  report.qhat = solve_qhat(kDefaultAccuracy);
  report.grid_size = table.grid_size();
  report.accuracy = accuracy;
  report.thread_count = thread_count;
  report.per_config.resize(configs.size());

  std::mutex progress_mutex;
  int done = 0;
  detail::parallel_for_index(configs.size(), thread_count, [&](std::size_t i, std::size_t) {
    report.per_config[i] = sweep_config(configs[i], table, accuracy);
    if (progress) {
      std::lock_guard lock(progress_mutex);
      progress(++done, static_cast<int>(configs.size()));
    }
  });

  aggregate_sweep(report);
  report.wall_time_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

}  // namespace paincert
