#pragma once

#include <array>

#include "paincert/degree_config.hpp"
#include "paincert/qhat.hpp"
#include "paincert/weight_table.hpp"

namespace paincert {

/// Bracket for the common pain value searched by equalise().
inline constexpr double kCommonValueLower = 0.0;
inline constexpr double kCommonValueUpper = 1e8;

/// Pain seen through one direction: W((1 - q) / j) / q, step lookup.
inline double direction_pain(const WTable& table, int branches, double q) {
  return table.lookup((1.0 - q) / branches) / q;
}

/// Same quantity with the interpolated table; smooth enough to differentiate.
double direction_pain_smooth(const WTable& table, int branches, double q);

struct EqualisationResult {
  int p_index = 0;
  std::array<double, kDirections> q{};
  /// Shared value of W((1 - q_i)/j_i)/q_i, table scale (4w).
  double common_value = 0.0;
  /// log(p * common_value) - log(W[p_index]).
  double drift_increment = 0.0;
  /// Common value pinned at the upper bracket (pain effectively unbounded).
  bool saturated = false;
  /// |p + sum q - 1| at exit.
  double budget_residual = 0.0;
};

/// Weights q_1..q_4 with equal direction pains and p + sum q = 1, for
/// p = p_index / M. Outer bisection on the common value over [0, 1e8],
/// inner bisection of each q_i over [0, 1] at accuracy / 16.
///
/// Throws PreconditionError for p_index outside [1, M-1] and SolverFailure
/// if the budget is missed by a wide margin without saturating the bracket.
EqualisationResult equalise(int p_index, const DegreeConfig& config, const WTable& table,
                            double accuracy = kDefaultAccuracy);

/// Probabilities of following each direction, proportional to the
/// reciprocal negative slopes of q -> log(direction pain) at the solution.
struct DirectionWeights {
  std::array<double, kDirections> s{};
};

/// Central finite difference with h = min(max(1e-7, 1e-4 q_i), q_i / 2) on the smooth
/// direction pain. Throws NumericalDegeneracy on a non-negative slope.
DirectionWeights direction_weights(const EqualisationResult& result, const DegreeConfig& config,
                                   const WTable& table);

}  // namespace paincert
