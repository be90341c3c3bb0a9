// Acceptance run: one PASS/FAIL line per criterion. Pass criterion numbers
// as arguments to run a subset; PAINCERT_THREADS sets the worker count.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include "paincert/combinatorics.hpp"
#include "paincert/drift.hpp"
#include "paincert/equalise.hpp"
#include "paincert/lemma_checks.hpp"
#include "paincert/qhat.hpp"
#include "paincert/report_json.hpp"
#include "paincert/sweep.hpp"

using namespace paincert;

namespace {

constexpr double kRefQhat = 0.991603;
constexpr double kRefAdjacent = 0.22955;
constexpr double kRefJump = 0.32546;
constexpr double kRefTail = 0.23163;
constexpr double kRefRate = 0.0010956;

int thread_count() {
  if (const char* env = std::getenv("PAINCERT_THREADS")) {
    const int n = std::atoi(env);
    if (n >= 1) return n;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

class Outcome {
 public:
  void require(bool ok, const std::string& what) {
    std::printf("      %s %s\n", ok ? "ok  " : "FAIL", what.c_str());
    passed_ = passed_ && ok;
  }
  void note(const std::string& what) { std::printf("      note %s\n", what.c_str()); }
  bool passed() const { return passed_; }

 private:
  bool passed_ = true;
};

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void report_certificate(Outcome& o, const Certificate& cert) {
  for (const auto& c : cert.checks)
    o.require(c.passed, cert.name + ": " + c.name + " = " + fmt("%.6g", c.measured) + " " +
                            relation_symbol(c.relation) + " " + fmt("%.6g", c.bound) +
                            (c.location.empty() ? "" : " at " + c.location));
  for (const auto& c : cert.notes)
    o.note(cert.name + ": " + c.name + " = " + fmt("%.6g", c.measured) +
           (c.location.empty() ? "" : " at " + c.location));
}

std::string without_run_metadata(const SweepReport& r) {
  auto j = to_json(r);
  j.erase("wall_time_seconds");
  j.erase("thread_count");
  return j.dump();
}

struct Context {
  int threads = thread_count();
  WTable table = build_wtable(GridParams{});
  std::optional<SweepReport> full;
  double full_seconds = 0.0;

  const SweepReport& full_sweep() {
    if (!full) {
      std::printf("      (running the full sweep on %d thread%s)\n", threads, threads == 1 ? "" : "s");
      std::fflush(stdout);
      const auto t0 = std::chrono::steady_clock::now();
      full = run_sweep(table, kDefaultAccuracy, threads);
      full_seconds = seconds_since(t0);
    }
    return *full;
  }
};

bool criterion_qhat(Context&, Outcome& o) {
  const auto t0 = std::chrono::steady_clock::now();
  const QHat q = solve_qhat();
  const double t = seconds_since(t0);
  o.require(std::abs(q.value - kRefQhat) <= 1e-4, fmt("q-hat %.9f vs 0.991603 (tolerance 1e-4)", q.value));
  o.require(t < 1.0, fmt("runtime %.4f s < 1 s", t));
  return o.passed();
}

bool criterion_full_sweep(Context& ctx, Outcome& o) {
  const SweepReport& r = ctx.full_sweep();
  o.require(r.grid_size == 20000 && r.per_config.size() == 495, "grid 20000, 495 configs");
  o.require(std::abs(r.global_max_adjacent_diff - kRefAdjacent) <= 1e-3,
            fmt("max adjacent difference %.6f vs 0.22955", r.global_max_adjacent_diff));
  o.require(std::abs(r.global_max_jump_q - kRefJump) <= 1e-3,
            fmt("max jump weight %.6f vs 0.32546", r.global_max_jump_q));
  o.require(std::abs(r.global_min_tail - kRefTail) <= 1e-3, fmt("min tail %.6f vs 0.23163", r.global_min_tail));
  report_certificate(o, check_weight_bounds(r));
  o.require(ctx.full_seconds <= 3600.0, fmt("sweep runtime %.1f s <= 3600 s (%.0f worker thread(s))",
                                            ctx.full_seconds, ctx.threads));
  int saturated = 0;
  double residual = 0.0;
  for (const auto& row : r.per_config) {
    saturated += row.saturated_cells;
    residual = std::max(residual, row.max_budget_residual);
  }
  o.note(fmt("saturated cells %.0f, largest budget residual %.3g", saturated, residual));
  return o.passed();
}

bool criterion_rate(Context& ctx, Outcome& o) {
  const SweepReport& r = ctx.full_sweep();
  o.require(std::abs(r.rate_s - kRefRate) <= 5e-5, fmt("rate s %.8f vs 0.0010956 (tolerance 5e-5)", r.rate_s));
  report_certificate(o, check_drift_rate(r));
  return o.passed();
}

bool criterion_smoke(Context&, Outcome& o) {
  const WTable small = build_wtable(GridParams{2000});
  const auto t0 = std::chrono::steady_clock::now();
  const SweepReport r = run_sweep(small, kDefaultAccuracy, 4);
  const double t = seconds_since(t0);
  o.require(t < 120.0, fmt("runtime %.1f s < 120 s on 4 threads", t));
  report_certificate(o, check_weight_bounds(r));
  o.require(std::abs(r.global_max_adjacent_diff - kRefAdjacent) <= 2e-2,
            fmt("max adjacent difference %.6f within 2e-2 of 0.22955", r.global_max_adjacent_diff));
  o.require(std::abs(r.global_max_jump_q - kRefJump) <= 2e-2,
            fmt("max jump weight %.6f within 2e-2 of 0.32546", r.global_max_jump_q));
  o.require(std::abs(r.global_min_tail - kRefTail) <= 2e-2,
            fmt("min tail %.6f within 2e-2 of 0.23163", r.global_min_tail));
  o.note(fmt("rate s at this grid %.6g (not gated)", r.rate_s));
  return o.passed();
}

bool criterion_weight_shape(Context& ctx, Outcome& o) {
  const auto t0 = std::chrono::steady_clock::now();
  const Certificate cert = check_weight_shape(ctx.table, 1e-4);
  const double t = seconds_since(t0);
  report_certificate(o, cert);
  o.require(t < 30.0, fmt("runtime %.2f s < 30 s", t));
  return o.passed();
}

bool criterion_fixed_point(Context& ctx, Outcome& o) {
  const auto r = equalise(4000, DegreeConfig(4, 4, 4, 4), ctx.table);
  double worst = 0.0;
  for (double q : r.q) worst = std::max(worst, std::abs(q - 0.2));
  o.require(worst <= 1e-6, fmt("max |q_i - 0.2| = %.3g <= 1e-6", worst));
  o.require(std::abs(r.drift_increment) <= 1e-5, fmt("|drift| = %.3g <= 1e-5", std::abs(r.drift_increment)));
  return o.passed();
}

bool criterion_normalisation(Context&, Outcome& o) {
  const QHat q = solve_qhat();
  double total = 0.0;
  for (const auto& c : all_sorted_configs()) total += noperm(c) * config_prob(c, q);
  o.require(std::abs(total - q.value) <= 1e-9, fmt("|sum - q-hat| = %.3g <= 1e-9", std::abs(total - q.value)));
  return o.passed();
}

bool criterion_drift(Context& ctx, Outcome& o) {
  const SweepReport& sweep = ctx.full_sweep();
  const auto t0 = std::chrono::steady_clock::now();

  DriftOptions lb;
  lb.steps = 10000;
  lb.n_paths = 100;
  lb.seed = 1;
  lb.threads = ctx.threads;
  const DriftStats a = simulate_drift(lb, ctx.table, &sweep);
  const double se = std::sqrt(a.variance / static_cast<double>(a.n_increments));
  o.require(std::abs(a.mean_increment - kRefRate) <= 3.0 * se,
            fmt("lower-bound mean %.7f, %.2f standard errors from 0.0010956 (se %.3g)", a.mean_increment,
                std::abs(a.mean_increment - kRefRate) / se, se));

  DriftOptions path;
  path.mode = DriftMode::kPath;
  path.steps = 10000;
  path.n_paths = 100;
  path.seed = 2;
  path.threads = ctx.threads;
  const DriftStats b = simulate_drift(path, ctx.table, &sweep);
  o.require(b.ci_low > 0.0, fmt("path-mode mean %.5f, 99%% interval [%.5f, %.5f] above 0", b.mean_increment,
                                b.ci_low, b.ci_high));
  o.note(fmt("path mode: %.0f increments, %.0f sentinel events, max phi divergence %.3g",
             static_cast<double>(b.n_increments), static_cast<double>(b.sentinel_events), b.max_phi_divergence));

  DriftOptions growth = lb;
  growth.n_paths = 10000;
  growth.seed = 3;
  const DriftStats c = simulate_drift(growth, ctx.table, &sweep);
  report_certificate(o, check_linear_growth(c, kRefRate));

  const double t = seconds_since(t0);
  o.require(t < 300.0, fmt("runtime %.1f s < 300 s", t));
  return o.passed();
}

bool criterion_termination(Context&, Outcome& o) {
  report_certificate(o, check_termination_constant(solve_qhat()));
  return o.passed();
}

bool criterion_properties(Context& ctx, Outcome& o) {
  // Determinism: reports agree bit for bit across thread counts and reruns.
  {
    const WTable small = build_wtable(GridParams{200});
    const std::string ref = without_run_metadata(run_sweep(small, kDefaultAccuracy, 1));
    bool same = without_run_metadata(run_sweep(small, kDefaultAccuracy, 1)) == ref;
    for (int t : {2, 4, 8}) same = same && without_run_metadata(run_sweep(small, kDefaultAccuracy, t)) == ref;

    SweepReport synthetic;
    synthetic.qhat = solve_qhat();
    for (const auto& cfg : all_sorted_configs()) {
      ConfigStats s;
      s.config = cfg;
      s.min_drift = 0.01 * std::cos(cfg.total());
      synthetic.per_config.push_back(s);
    }
    aggregate_sweep(synthetic);
    for (DriftMode mode : {DriftMode::kLowerBound, DriftMode::kPath}) {
      DriftOptions d;
      d.mode = mode;
      d.steps = mode == DriftMode::kPath ? 200 : 5000;
      d.n_paths = 8;
      d.seed = 5;
      d.threads = 1;
      const std::string one = to_json(simulate_drift(d, ctx.table, &synthetic)).dump();
      const std::string again = to_json(simulate_drift(d, ctx.table, &synthetic)).dump();
      d.threads = 4;
      const std::string four = to_json(simulate_drift(d, ctx.table, &synthetic)).dump();
      same = same && one == again && one == four;
    }
    o.require(same, "sweep (grid 200, 1/2/4/8 threads, rerun) and drift (both modes, 1/4 threads, rerun) "
                    "reports are bit-identical");
  }

  // Invariants on random cells.
  {
    std::mt19937_64 rng(20241015);
    const auto& configs = all_sorted_configs();
    const double acc = kDefaultAccuracy;
    int solved = 0, saturated = 0, budget_bad = 0, order_bad = 0, spread_bad = 0, bracket_bad = 0;
    double worst_budget = 0.0, worst_spread = 0.0;
    for (int n = 0; n < 10000; ++n) {
      const int m = 1 + static_cast<int>(rng() % 19999);
      const DegreeConfig c = configs[rng() % configs.size()];
      const auto r = equalise(m, c, ctx.table);
      if (r.saturated) {
        ++saturated;
        continue;
      }
      ++solved;
      const double budget = std::abs(m / 20000.0 + r.q[0] + r.q[1] + r.q[2] + r.q[3] - 1.0);
      worst_budget = std::max(worst_budget, budget);
      if (budget > 2 * acc) ++budget_bad;
      for (int i = 0; i + 1 < 4; ++i)
        if (r.q[i] < r.q[i + 1]) ++order_bad;

      double lo = 1e300, hi = 0.0, upper = 1e300, lower = 0.0;
      for (std::size_t i = 0; i < 4; ++i) {
        const double pain = direction_pain(ctx.table, c[i], r.q[i]);
        lo = std::min(lo, pain);
        hi = std::max(hi, pain);
        upper = std::min(upper, direction_pain(ctx.table, c[i], r.q[i] - acc));
        lower = std::max(lower, direction_pain(ctx.table, c[i], r.q[i] + acc));
      }
      const double spread = (hi - lo) / r.common_value;
      worst_spread = std::max(worst_spread, spread);
      if (!(spread < 1e-6)) ++spread_bad;
      if (lower > upper * (1.0 + 1e-6)) ++bracket_bad;
    }
    o.note(fmt("10000 random cells: %.0f solved, %.0f saturated", solved, saturated));
    o.require(budget_bad == 0, fmt("budget |p + sum q - 1| <= 2e-11: %.0f violations (worst %.3g)", budget_bad,
                                   worst_budget));
    o.require(order_bad == 0, fmt("q nonincreasing along the sorted config: %.0f violations", order_bad));
    o.require(spread_bad == 0, fmt("equal pains, max |pain_i - pain_k| / common < 1e-6: %.0f violations "
                                   "(worst %.3g)",
                                   spread_bad, worst_spread));
    o.note(fmt("pains one accuracy step either side of each q_i bracket a shared level: %.0f violations",
               bracket_bad));
  }

  // Local-minimum property of the direction weights.
  {
    std::mt19937_64 rng(6);
    std::exponential_distribution<double> expo(1.0);
    const auto& configs = all_sorted_configs();
    int violations = 0, cells = 0;
    while (cells < 100) {
      const int m = 1 + static_cast<int>(rng() % 19999);
      const DegreeConfig c = configs[rng() % configs.size()];
      const auto r = equalise(m, c, ctx.table);
      if (r.saturated) continue;
      ++cells;
      const auto s = direction_weights(r, c, ctx.table);
      const auto objective = [&](const std::array<double, 4>& q) {
        double v = 0.0;
        for (std::size_t i = 0; i < 4; ++i) v += s.s[i] * std::log(direction_pain(ctx.table, c[i], q[i]));
        return v;
      };
      const double base = objective(r.q);
      const double budget = 1.0 - m / 20000.0;
      for (int k = 0; k < 100; ++k) {
        std::array<double, 4> q{};
        double total = 0.0;
        for (double& x : q) total += (x = expo(rng));
        for (double& x : q) x *= budget / total;
        if (objective(q) < base - 1e-6) ++violations;
      }
    }
    o.require(violations == 0,
              fmt("weighted log pain minimised: %.0f violations over 100 cells x 100 perturbations", violations));
  }
  return o.passed();
}

struct Criterion {
  int id;
  const char* title;
  std::function<bool(Context&, Outcome&)> run;
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> all = {
      {1, "q-hat reproduction", criterion_qhat},
      {2, "global weight bounds at grid 20000", criterion_full_sweep},
      {3, "drift rate at grid 20000", criterion_rate},
      {4, "smoke sweep at grid 2000", criterion_smoke},
      {5, "weight-function shape scans", criterion_weight_shape},
      {6, "fixed-point cell", criterion_fixed_point},
      {7, "normalisation identity", criterion_normalisation},
      {8, "drift Monte Carlo", criterion_drift},
      {9, "termination constant", criterion_termination},
      {10, "property suites", criterion_properties},
  };
  std::set<int> selected;
  for (int i = 1; i < argc; ++i) selected.insert(std::atoi(argv[i]));

  Context ctx;
  int failed = 0, ran = 0;
  for (const auto& c : all) {
    if (!selected.empty() && !selected.count(c.id)) continue;
    std::printf("[%d] %s\n", c.id, c.title);
    std::fflush(stdout);
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    bool ok = false;
    try {
      ok = c.run(ctx, o);
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    ok = ok && o.passed();
    ++ran;
    if (!ok) ++failed;
    std::printf("%s criterion %d: %s (%.2f s)\n", ok ? "PASS" : "FAIL", c.id, c.title, seconds_since(t0));
    std::fflush(stdout);
  }
  std::printf("acceptance: %d of %d criteria passed\n", ran - failed, ran);
  return failed == 0 ? 0 : 1;
}
