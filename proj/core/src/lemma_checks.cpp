#include "paincert/lemma_checks.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "paincert/errors.hpp"

namespace paincert {

namespace {

std::string at(const char* what, double x) {
  std::ostringstream os;
  os.precision(6);
  os << what << '=' << x;
  return os.str();
}

// -log(1 - y) + log f(y) with y = (1 - x)/k and f = w (1 - y)/y; the
// -log(1 - y) cancels against f's own (1 - y) factor.
double log_branch_pain(double x, int k) {
  const double y = (1.0 - x) / k;
  const double f = weight_function(y) / WTable::kScaleFactor * (1.0 - y) / y;
  return -std::log1p(-y) + std::log(f);
}

}  // namespace

Certificate check_weight_bounds(const SweepReport& report) {
  Certificate cert;
  cert.name = "weight_bounds";
  cert.checks.push_back(make_check("max |q_k - q_l| for j_k = j_l + 1",
                                   report.global_max_adjacent_diff, Relation::kLessEqual, 0.25));
  cert.checks.push_back(make_check("max q_k for j_k > j_l", report.global_max_jump_q,
                                   Relation::kLess, 1.0 / 3.0));
  cert.checks.push_back(make_check("min p + q3 + q4 for j2 > j1 > 1", report.global_min_tail,
                                   Relation::kGreater, 2.0 / 9.0));
  return cert;
}

Certificate check_drift_rate(const SweepReport& report) {
  Certificate cert;
  cert.name = "drift_rate";
  cert.checks.push_back(
      make_check("rate s (expected overline r)", report.rate_s, Relation::kGreaterEqual, 1e-3));
  return cert;
}

Certificate check_weight_shape(const WTable& table, double step) {
  if (!(step >= 1e-5 && step <= 1e-3))
    throw ConfigurationError("check_weight_shape: step must lie in [1e-5, 1e-3]");
  Certificate cert;
  cert.name = "weight_shape";

  // (a) on the continuous weight function: arguments (1-x)/k fall between
  // grid rows.
  const int points = static_cast<int>(std::floor(1.0 / step + 0.5));
  double worst_max = -std::numeric_limits<double>::infinity();
  double worst_min = std::numeric_limits<double>::infinity();
  std::string worst_max_at, worst_min_at;
  for (int k = 1; k <= 9; ++k) {
    for (int i = 2; i <= points - 2; ++i) {
      const double x = i * step;
      const double d2 = log_branch_pain(x - step, k) - 2.0 * log_branch_pain(x, k) +
                        log_branch_pain(x + step, k);
      if (d2 > worst_max) {
        worst_max = d2;
        worst_max_at = "k=" + std::to_string(k) + ", " + at("x", x);
      }
      if (d2 < worst_min) {
        worst_min = d2;
        worst_min_at = "k=" + std::to_string(k) + ", " + at("x", x);
      }
    }
  }
  cert.checks.push_back(make_check("(a) max second difference, k=1..9", worst_max,
                                   Relation::kLessEqual, 1e-7, worst_max_at));
  cert.notes.push_back(make_check("(a) min second difference (convex orientation), k=1..9",
                                  worst_min, Relation::kGreaterEqual, -1e-7, worst_min_at));

  // (b) slope of log f from table rows, log f = log W - log p + log(1 - p) + const.
  const int size = table.grid_size();
  const int cells = std::max(1, static_cast<int>(std::lround(step * size)));
  const auto log_f = [&](int m) {
    const double p = m / double(size);
    return std::log(table.at(m)) - std::log(p) + std::log1p(-p);
  };
  double slope_min = std::numeric_limits<double>::infinity();
  double slope_max = -std::numeric_limits<double>::infinity();
  double slope_min_at = 0.0, slope_max_at = 0.0;
  const double h = cells / double(size);
  for (int m = 1 + cells; m + cells <= size - 1; ++m) {
    const double slope = (log_f(m + cells) - log_f(m - cells)) / (2.0 * h);
    if (slope < slope_min) {
      slope_min = slope;
      slope_min_at = m / double(size);
    }
    if (slope > slope_max) {
      slope_max = slope;
      slope_max_at = m / double(size);
    }
  }
  cert.checks.push_back(make_check("(b) min slope of log f", slope_min, Relation::kGreaterEqual,
                                   1.0 / 6.0 - 1e-3, at("x", slope_min_at)));
  cert.checks.push_back(make_check("(b) max slope of log f", slope_max, Relation::kLessEqual,
                                   5.0 / 9.0 + 1e-3, at("x", slope_max_at)));

  // (c) convexity of p W(p), in table units m W[m].
  double conv_min = std::numeric_limits<double>::infinity();
  int conv_at = 0;
  for (int m = 2; m <= size - 2; ++m) {
    const double d2 = (m + 1) * table.at(m + 1) - 2.0 * m * table.at(m) + (m - 1) * table.at(m - 1);
    if (d2 < conv_min) {
      conv_min = d2;
      conv_at = m;
    }
  }
  cert.checks.push_back(make_check("(c) min second difference of m W[m]", conv_min,
                                   Relation::kGreaterEqual, -1e-9 * size,
                                   at("p", conv_at / double(size))));

  // Range of f = w (1-p)/p on the grid against the claimed [4/5, 8/5].
  double f_min = std::numeric_limits<double>::infinity();
  double f_max = -f_min;
  for (int m = 1; m <= size - 1; ++m) {
    const double p = m / double(size);
    const double f = table.at(m) / WTable::kScaleFactor * (1.0 - p) / p;
    f_min = std::min(f_min, f);
    f_max = std::max(f_max, f);
  }
  cert.notes.push_back(make_check("f minimum on grid", f_min, Relation::kGreaterEqual, 0.8));
  cert.notes.push_back(make_check("f maximum on grid", f_max, Relation::kLessEqual, 1.6));
  return cert;
}

Certificate check_termination_constant(QHat qhat) {
  Certificate cert;
  cert.name = "termination_constant";
  const double value = 36.0 * std::pow(1.0 - 0.5 * qhat.value, 8);
  cert.checks.push_back(make_check("36 (1 - q/2)^8", value, Relation::kLess, 1.0 / 6.0));
  return cert;
}

}  // namespace paincert
