#pragma once

#include "paincert/certificate.hpp"
#include "paincert/qhat.hpp"
#include "paincert/sweep.hpp"
#include "paincert/weight_table.hpp"

namespace paincert {

/// Global bounds on equalised weights:
/// (a) adjacent-degree difference <= 1/4, (b) larger-degree weight < 1/3,
/// (c) tail p + q3 + q4 > 2/9.
Certificate check_weight_bounds(const SweepReport& report);

/// Drift rate s >= 1/1000.
Certificate check_drift_rate(const SweepReport& report);

/// Finite-difference scans of the weight function with spacing `step`
/// (1e-5 <= step <= 1e-3; otherwise ConfigurationError):
///  (a) second differences of -log(1 - (1-x)/k) + log f((1-x)/k) are <= 1e-7
///      for k = 1..9 (concavity); the opposite orientation (>= -1e-7,
///      convexity) is recorded as a note;
///  (b) slope of log f within [1/6 - 1e-3, 5/9 + 1e-3];
///  (c) p W(p) has second differences >= -1e-9 M.
/// The range of f on the grid is recorded as a note.
Certificate check_weight_shape(const WTable& table, double step = 1e-4);

/// 36 (1 - q/2)^8 < 1/6.
Certificate check_termination_constant(QHat qhat);

}  // namespace paincert
