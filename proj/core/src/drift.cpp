#include "paincert/drift.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <unordered_map>

#include "paincert/combinatorics.hpp"
#include "paincert/equalise.hpp"
#include "paincert/errors.hpp"
#include "paincert/philox.hpp"
#include "parallel.hpp"

namespace paincert {

const char* to_string(DriftMode mode) {
  return mode == DriftMode::kLowerBound ? "lower-bound" : "path";
}

DriftMode drift_mode_from_string(const std::string& s) {
  if (s == "lower-bound") return DriftMode::kLowerBound;
  if (s == "path") return DriftMode::kPath;
  throw ConfigurationError("unknown drift mode '" + s + "'");
}

ConfigSampler::ConfigSampler(QHat qhat) {
  const auto& configs = all_sorted_configs();
  probs_.reserve(configs.size());
  cdf_.reserve(configs.size());
  double total = 0.0;
  for (const auto& c : configs) {
    const double p = noperm(c) * config_prob(c, qhat) / qhat.value;
    probs_.push_back(p);
    total += p;
    cdf_.push_back(total);
  }
  // The probabilities sum to one up to the accuracy of q-hat; the sampler
  // renormalises so that every u in [0, 1) maps to a config.
  for (double& c : cdf_) c /= total;
}

std::size_t ConfigSampler::draw(double u) const {
  const auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
  return it == cdf_.end() ? cdf_.size() - 1 : static_cast<std::size_t>(it - cdf_.begin());
}

namespace {

constexpr double kZ99 = 2.5758293035489004;

// Welford accumulator, merged across paths in index order (Chan et al.).
struct Moments {
  std::int64_t n = 0;
  double mean = 0.0;
  double m2 = 0.0;

  void add(double x) {
    ++n;
    const double delta = x - mean;
    mean += delta / static_cast<double>(n);
    m2 += delta * (x - mean);
  }

  void merge(const Moments& o) {
    if (o.n == 0) return;
    if (n == 0) {
      *this = o;
      return;
    }
    const auto total = n + o.n;
    const double delta = o.mean - mean;
    mean += delta * static_cast<double>(o.n) / static_cast<double>(total);
    m2 += o.m2 + delta * delta * static_cast<double>(n) * static_cast<double>(o.n) /
                     static_cast<double>(total);
    n = total;
  }
};

struct PathOutcome {
  Moments moments;
  double final_sum = 0.0;
  double running_max = -std::numeric_limits<double>::infinity();
  std::int64_t sentinels = 0;
  double phi_divergence = 0.0;
  std::vector<double> trajectory;
};

struct CachedCell {
  EqualisationResult cell;
  DirectionWeights weights;
};

// Equalisation results are pure functions of (p_index, config), so a
// per-worker memo changes nothing but the run time.
class CellCache {
 public:
  const CachedCell& get(int p_index, const DegreeConfig& config, std::size_t config_index,
                        const WTable& table, double accuracy) {
    const std::uint64_t key = static_cast<std::uint64_t>(p_index) * 1024u + config_index;
    if (auto it = cells_.find(key); it != cells_.end()) return it->second;
    if (cells_.size() > kMaxEntries) cells_.clear();
    CachedCell entry;
    entry.cell = equalise(p_index, config, table, accuracy);
    entry.weights = direction_weights(entry.cell, config, table);
    return cells_.emplace(key, entry).first->second;
  }

 private:
  static constexpr std::size_t kMaxEntries = 1u << 21;
  std::unordered_map<std::uint64_t, CachedCell> cells_;
};

void validate(const DriftOptions& o, const SweepReport* sweep) {
  if (o.steps < 1 || o.steps > kMaxDriftSteps)
    throw ConfigurationError("simulate_drift: steps must lie in [1, 10^5]");
  if (o.n_paths < 1) throw ConfigurationError("simulate_drift: n_paths must be >= 1");
  if (o.threads < 1) throw ConfigurationError("simulate_drift: threads must be >= 1");
  if (o.capture_trajectories < 0 || o.capture_trajectories > kMaxCapturedTrajectories)
    throw ConfigurationError("simulate_drift: at most 100 trajectories can be captured");
  if (o.mode == DriftMode::kLowerBound) {
    if (sweep == nullptr)
      throw ConfigurationError("simulate_drift: lower-bound mode needs a sweep report");
    if (sweep->per_config.size() != all_sorted_configs().size())
      throw ConfigurationError("simulate_drift: sweep report does not cover all 495 configs");
  }
}

}  // namespace

DriftStats simulate_drift(const DriftOptions& options, const WTable& table,
                          const SweepReport* sweep) {
  validate(options, sweep);
  const QHat qhat = sweep ? sweep->qhat : solve_qhat(kDefaultAccuracy);
  const ConfigSampler sampler(qhat);
  const auto& configs = all_sorted_configs();
  const int size = table.grid_size();

  std::vector<double> min_drift;
  if (options.mode == DriftMode::kLowerBound) {
    min_drift.resize(configs.size());
    for (const auto& row : sweep->per_config)
      min_drift[sorted_config_index(row.config)] = row.min_drift;
  }

  int start = options.start_index == 0 ? size / 5 : options.start_index;
  if (start < 1 || start > size - 1)
    throw ConfigurationError("simulate_drift: start_index must lie in [1, M-1]");
  std::optional<std::size_t> forced_index;
  std::optional<DegreeConfig> forced;
  if (options.forced_config) {
    forced = options.forced_config->sorted();
    forced_index = sorted_config_index(*forced);
  }

  const int threads = std::max(1, options.threads);
  std::vector<CellCache> caches(static_cast<std::size_t>(threads));
  std::vector<PathOutcome> outcomes(static_cast<std::size_t>(options.n_paths));

  detail::parallel_for_index(outcomes.size(), threads, [&](std::size_t path, std::size_t worker) {
    PhiloxStream rng(options.seed, path);
    PathOutcome& out = outcomes[path];
    const bool capture = path < static_cast<std::size_t>(options.capture_trajectories);
    if (capture) out.trajectory.reserve(static_cast<std::size_t>(options.steps));
    double running = 0.0;

    if (options.mode == DriftMode::kLowerBound) {
      for (int step = 0; step < options.steps; ++step) {
        const double inc = min_drift[sampler.draw(rng.uniform())];
        running += inc;
        out.moments.add(inc);
        out.running_max = std::max(out.running_max, running);
        if (capture) out.trajectory.push_back(running);
      }
    } else {
      CellCache& cache = caches[worker];
      int m = start;
      double phi = std::log(m / double(size));
      for (int step = 0; step < options.steps; ++step) {
        const std::size_t ci = forced_index ? *forced_index : sampler.draw(rng.uniform());
        const DegreeConfig& config = forced ? *forced : configs[ci];
        const CachedCell& entry = cache.get(m, config, ci, table, options.accuracy);

        const double u = rng.uniform();
        std::size_t dir = 0;
        double acc = entry.weights.s[0];
        while (dir + 1 < kDirections && u >= acc) acc += entry.weights.s[++dir];

        const double q = entry.cell.q[dir];
        const int next = table.index_of((1.0 - q) / config[dir]);
        const double inc = entry.cell.drift_increment;
        running += inc;
        if (entry.cell.saturated)
          ++out.sentinels;
        else
          out.moments.add(inc);
        phi += std::log(next / double(size)) - std::log(q);
        m = next;
        out.running_max = std::max(out.running_max, running);
        if (capture) out.trajectory.push_back(running);
      }
      // running = phi^w_N - log W(p_0)
      const double phi_w = running + std::log(table.at(start));
      out.phi_divergence =
          std::abs(phi_w - phi - (std::log(table.at(m)) - std::log(m / double(size))));
    }
    out.final_sum = running;
  });

  DriftStats stats;
  stats.mode = options.mode;
  stats.n_paths = options.n_paths;
  stats.n_steps = options.steps;
  stats.seed = options.seed;
  stats.exceed_threshold = options.exceed_threshold;
  Moments total;
  std::int64_t exceeding = 0;
  stats.final_sums.reserve(outcomes.size());
  for (auto& out : outcomes) {
    total.merge(out.moments);
    stats.sentinel_events += out.sentinels;
    stats.max_phi_divergence = std::max(stats.max_phi_divergence, out.phi_divergence);
    if (out.running_max > options.exceed_threshold) ++exceeding;
    stats.final_sums.push_back(out.final_sum);
    if (!out.trajectory.empty()) stats.trajectories.push_back(std::move(out.trajectory));
  }
  stats.n_increments = total.n;
  stats.mean_increment = total.mean;
  stats.variance = total.n > 1 ? total.m2 / static_cast<double>(total.n - 1) : 0.0;
  const double se = total.n > 0 ? std::sqrt(stats.variance / static_cast<double>(total.n)) : 0.0;
  stats.ci_low = stats.mean_increment - kZ99 * se;
  stats.ci_high = stats.mean_increment + kZ99 * se;
  stats.fraction_exceeding = static_cast<double>(exceeding) / static_cast<double>(options.n_paths);
  return stats;
}

Certificate check_linear_growth(const DriftStats& stats, double rate) {
  if (stats.mode != DriftMode::kLowerBound)
    throw PreconditionError("check_linear_growth: needs lower-bound drift statistics");
  if (!(rate > 0.0)) throw ConfigurationError("check_linear_growth: rate must be positive");
  if (stats.final_sums.empty() || stats.n_steps < 1)
    throw PreconditionError("check_linear_growth: no trajectories");

  const double n = static_cast<double>(stats.n_steps);
  const double paths = static_cast<double>(stats.final_sums.size());
  const double level = 0.5 * rate * n;
  const auto below = std::count_if(stats.final_sums.begin(), stats.final_sums.end(),
                                   [&](double s) { return s < level; });
  const double fraction = static_cast<double>(below) / paths;
  const double bound = 4.0 * stats.variance / (n * rate * rate);
  const double b = std::min(bound, 1.0);
  const double slack = 3.0 * std::sqrt(std::max(b, 1.0 / paths) * (1.0 - b) / paths);

  Certificate cert;
  cert.name = "linear_growth";
  cert.checks.push_back(make_check("share of paths below (s/2) N", fraction, Relation::kLessEqual,
                                   bound + slack));
  cert.notes.push_back(make_check("Kolmogorov bound 4B/(N s^2)", bound, Relation::kGreaterEqual, 0.0));
  cert.notes.push_back(make_check("per-step variance B", stats.variance, Relation::kGreaterEqual, 0.0));
  return cert;
}

}  // namespace paincert
