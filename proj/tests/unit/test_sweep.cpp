#include <algorithm>
#include <atomic>
#include <cmath>

#include "doctest.h"
#include "paincert/combinatorics.hpp"
#include "paincert/equalise.hpp"
#include "paincert/lemma_checks.hpp"
#include "paincert/report_json.hpp"
#include "paincert/sweep.hpp"

using namespace paincert;

namespace {

// Statistics recomputed cell by cell with one explicit test per pair, as in
// the original bookkeeping.
ConfigStats brute_force_stats(const DegreeConfig& c, const WTable& t) {
  ConfigStats s;
  s.config = c;
  const int j1 = c[0], j2 = c[1], j3 = c[2], j4 = c[3];
  const int size = t.grid_size();
  for (int m = 1; m < size; ++m) {
    const auto r = equalise(m, c, t);
    const auto& q = r.q;
    if (j1 == j2 - 1) s.max_adjacent_diff = std::max(s.max_adjacent_diff, std::abs(q[1] - q[0]));
    if (j2 == j3 - 1) s.max_adjacent_diff = std::max(s.max_adjacent_diff, std::abs(q[2] - q[1]));
    if (j3 == j4 - 1) s.max_adjacent_diff = std::max(s.max_adjacent_diff, std::abs(q[3] - q[2]));
    if (j1 < j2) s.max_jump_q = std::max(s.max_jump_q, q[1]);
    if (j1 < j3) s.max_jump_q = std::max(s.max_jump_q, q[2]);
    if (j1 < j4) s.max_jump_q = std::max(s.max_jump_q, q[3]);
    if (j2 < j3) s.max_jump_q = std::max(s.max_jump_q, q[2]);
    if (j2 < j4) s.max_jump_q = std::max(s.max_jump_q, q[3]);
    if (j3 < j4) s.max_jump_q = std::max(s.max_jump_q, q[3]);
    if (j1 > 1 && j2 > j1) s.min_tail = std::min(s.min_tail, m / double(size) + q[2] + q[3]);
    const double ratio = std::log(m * direction_pain(t, j1, q[0]) / size) - std::log(t.at(m));
    s.min_drift = std::min(s.min_drift, ratio);
  }
  return s;
}

SweepReport synthetic(double adjacent, double jump, double tail) {
  SweepReport r;
  r.global_max_adjacent_diff = adjacent;
  r.global_max_jump_q = jump;
  r.global_min_tail = tail;
  return r;
}

std::string without_timing(const SweepReport& r) {
  auto j = to_json(r);
  j.erase("wall_time_seconds");
  j.erase("thread_count");
  return j.dump();
}

}  // namespace

TEST_CASE("equal degrees leave the pair statistics neutral") {
  const WTable t = build_wtable(GridParams{2000});
  const auto s = sweep_config(DegreeConfig(4, 4, 4, 4), t);
  CHECK(s.max_adjacent_diff == 0.0);
  CHECK(s.max_jump_q == 0.0);
  CHECK(s.min_tail == 1.0);
  CHECK(std::isfinite(s.min_drift));
  CHECK(s.saturated_cells == 0);
}

TEST_CASE("per-config statistics match their definitions") {
  const WTable t = build_wtable(GridParams{2000});
  for (const DegreeConfig& c : {DegreeConfig(1, 2, 3, 4), DegreeConfig(2, 3, 5, 7), DegreeConfig(1, 1, 2, 2),
                                DegreeConfig(3, 4, 4, 9)}) {
    CAPTURE(c.to_string());
    const auto fast = sweep_config(c, t);
    const auto slow = brute_force_stats(c, t);
    CHECK(fast.max_adjacent_diff == slow.max_adjacent_diff);
    CHECK(fast.max_jump_q == slow.max_jump_q);
    CHECK(fast.min_tail == slow.min_tail);
    CHECK(fast.min_drift == doctest::Approx(slow.min_drift).epsilon(1e-12));
  }
}

TEST_CASE("unsorted configs are rejected") {
  const WTable t = build_wtable(GridParams{200});
  CHECK_THROWS(sweep_config(DegreeConfig(2, 1, 1, 1), t));
}

TEST_CASE("small sweep: reductions, rate and determinism") {
  const WTable t = build_wtable(GridParams{100});
  std::atomic<int> calls{0};
  const SweepReport a = run_sweep(t, kDefaultAccuracy, 1, [&](int done, int total) {
    CHECK(total == 495);
    CHECK(done >= 1);
    ++calls;
  });
  CHECK(calls == 495);
  REQUIRE(a.per_config.size() == 495);
  CHECK(a.grid_size == 100);
  CHECK(a.accuracy == kDefaultAccuracy);

  double adjacent = 0.0, jump = 0.0, tail = 1.0;
  for (std::size_t i = 0; i < a.per_config.size(); ++i) {
    CHECK(a.per_config[i].config == all_sorted_configs()[i]);
    adjacent = std::max(adjacent, a.per_config[i].max_adjacent_diff);
    jump = std::max(jump, a.per_config[i].max_jump_q);
    tail = std::min(tail, a.per_config[i].min_tail);
    CHECK(std::isfinite(a.per_config[i].min_drift));
  }
  CHECK(a.global_max_adjacent_diff == adjacent);
  CHECK(a.global_max_jump_q == jump);
  CHECK(a.global_min_tail == tail);

  double rate = 0.0;
  for (const auto& s : a.per_config) rate += s.min_drift * noperm(s.config) * config_prob(s.config, a.qhat);
  rate /= a.qhat.value;
  CHECK(std::abs(rate - a.rate_s) < 1e-12);
  CHECK(rate_from_configs(a.per_config, a.qhat) == a.rate_s);

  SweepReport copy = a;
  copy.global_max_jump_q = -1.0;
  copy.rate_s = 0.0;
  aggregate_sweep(copy);
  CHECK(without_timing(copy) == without_timing(a));

  const std::string reference = without_timing(a);
  CHECK(without_timing(run_sweep(t, kDefaultAccuracy, 1)) == reference);
  for (int threads : {4, 8}) {
    const SweepReport b = run_sweep(t, kDefaultAccuracy, threads);
    CHECK(b.thread_count == threads);
    CHECK(without_timing(b) == reference);
  }
}

TEST_CASE("global bounds certificate") {
  SUBCASE("reference values pass with the published margins") {
    const auto cert = check_weight_bounds(synthetic(0.22955, 0.32546, 0.23163));
    REQUIRE(cert.checks.size() == 3);
    CHECK(cert.passed());
    CHECK(cert.checks[0].margin == doctest::Approx(0.02045).epsilon(1e-3));
    CHECK(cert.checks[1].margin == doctest::Approx(0.0078733).epsilon(1e-3));
    CHECK(cert.checks[2].margin == doctest::Approx(0.0094078).epsilon(1e-3));
  }
  SUBCASE("a large jump weight fails the second bound only") {
    const auto cert = check_weight_bounds(synthetic(0.2, 0.34, 0.3));
    CHECK_FALSE(cert.passed());
    CHECK(cert.checks[0].passed);
    CHECK_FALSE(cert.checks[1].passed);
    CHECK(cert.checks[2].passed);
  }
  SUBCASE("values exactly on the bounds") {
    const auto cert = check_weight_bounds(synthetic(0.25, 1.0 / 3.0, 2.0 / 9.0));
    CHECK(cert.checks[0].passed);
    CHECK_FALSE(cert.checks[1].passed);
    CHECK_FALSE(cert.checks[2].passed);
  }
}

TEST_CASE("drift rate certificate") {
  SweepReport r;
  r.rate_s = 0.0010956;
  CHECK(check_drift_rate(r).passed());
  r.rate_s = 1e-3;
  CHECK(check_drift_rate(r).passed());
  r.rate_s = 0.00099;
  CHECK_FALSE(check_drift_rate(r).passed());
}
