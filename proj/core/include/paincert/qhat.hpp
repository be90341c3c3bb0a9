#pragma once

namespace paincert {

/// Probability that a chain is non-terminating: the largest root below one
/// of q = (1 - (1 - q/2)^9)^4.
struct QHat {
  double value = 0.0;
};

/// Right-hand side of the fixed-point equation, (1 - (1 - q/2)^9)^4.
double qhat_map(double q);

inline constexpr double kDefaultAccuracy = 1e-11;

/// Bisection for the root of qhat_map(q) - q on [lower, upper].
/// Requires 0 < accuracy < 1e-6 and a sign change (positive at lower,
/// negative at upper); throws ConfigurationError otherwise.
QHat solve_qhat(double accuracy = kDefaultAccuracy, double lower = 0.9, double upper = 1.0);

/// Non-termination probability when the chain is cut off after `depth`
/// rounds: q_0 = 1, q_{d+1} = qhat_map(q_d). Requires depth <= 10^4.
double qhat_by_depth(int depth);

}  // namespace paincert
