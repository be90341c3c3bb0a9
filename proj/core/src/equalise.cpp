#include "paincert/equalise.hpp"

#include <algorithm>
#include <cmath>

#include "paincert/bisection.hpp"
#include "paincert/errors.hpp"

namespace paincert {

double direction_pain_smooth(const WTable& table, int branches, double q) {
  const double x = (1.0 - q) / branches;
  if (x >= 1.0) return kPainSentinel;
  return table.interpolate(x) / q;
}

namespace {

// Far outside anything round-off can produce; only a broken solve lands here.
constexpr double kBudgetFailureFactor = 1e3;

// The q_i land on a dyadic lattice of spacing ~ inner accuracy. With four
// equal degrees they move in lockstep, so at the outer accuracy the sum can
// straddle the budget without ever hitting it; a finer inner lattice fixes that.
constexpr double kInnerAccuracyDivisor = 16.0;

}  // namespace

EqualisationResult equalise(int p_index, const DegreeConfig& config, const WTable& table,
                            double accuracy) {
  const int size = table.grid_size();
  if (p_index < 1 || p_index > size - 1)
    throw PreconditionError("equalise: p_index must lie in [1, M-1]");
  if (!(accuracy > 0.0)) throw ConfigurationError("equalise: accuracy must be positive");

  EqualisationResult result;
  result.p_index = p_index;
  const double p = p_index / static_cast<double>(size);
  const double budget = 1.0 - p;

  const double inner_accuracy = accuracy / kInnerAccuracyDivisor;
  double lb = kCommonValueLower;
  double ub = kCommonValueUpper;
  double sum = 0.0;
  do {
    const double target = 0.5 * (lb + ub);
    sum = 0.0;
    for (std::size_t i = 0; i < kDirections; ++i) {
      const int j = config[i];
      result.q[i] = bisect_root([&](double q) { return direction_pain(table, j, q); }, target, 0.0,
                                1.0, inner_accuracy);
      sum += result.q[i];
    }
    if (budget - sum >= accuracy)
      ub = target;
    else if (sum - budget > accuracy)
      lb = target;
    else
      break;
  } while (ub - lb >= accuracy);

  result.budget_residual = std::abs(sum - budget);
  result.saturated = result.budget_residual > accuracy && kCommonValueUpper - lb < 1.0;
  if (!result.saturated && !(result.budget_residual <= kBudgetFailureFactor * accuracy))
    throw SolverFailure("equalise: budget not met at p_index " + std::to_string(p_index) +
                            ", config " + config.to_string(),
                        p_index, config.to_string());

  result.common_value = direction_pain(table, config[0], result.q[0]);
  result.drift_increment = std::log(p * result.common_value) - std::log(table.at(p_index));
  return result;
}

DirectionWeights direction_weights(const EqualisationResult& result, const DegreeConfig& config,
                                   const WTable& table) {
  std::array<double, kDirections> t{};
  double total = 0.0;
  for (std::size_t i = 0; i < kDirections; ++i) {
    const double q = result.q[i];
    // capped so q - h stays positive for the tiny weights near p = 1
    const double h = std::min(std::max(1e-7, 1e-4 * q), 0.5 * q);
    const auto log_pain = [&](double x) {
      return std::log(direction_pain_smooth(table, config[i], x));
    };
    const double slope = (log_pain(q + h) - log_pain(q - h)) / (2.0 * h);
    if (!(slope < 0.0))
      throw NumericalDegeneracy("direction_weights: non-negative slope in direction " +
                                std::to_string(i) + " for " + config.to_string());
    t[i] = -1.0 / slope;
    total += t[i];
  }
  DirectionWeights w;
  for (std::size_t i = 0; i < kDirections; ++i) w.s[i] = t[i] / total;
  return w;
}

}  // namespace paincert
