#pragma once

#include <concepts>

namespace paincert {

/// Bisection for f(x) = target with f non-increasing on [lb, ub].
///
/// Assumes f(lb) >= target >= f(ub) and keeps that bracket: a midpoint with
/// f(mid) >= target replaces lb, anything else replaces ub. Stops once
/// ub - lb < accuracy and returns the last midpoint. A violated bracket
/// yields a value next to one of the ends.
template <std::invocable<double> F>
double bisect_root(F&& f, double target, double lb, double ub, double accuracy) {
  double mid;
  do {
    mid = 0.5 * (lb + ub);
    if (f(mid) >= target)
      lb = mid;
    else
      ub = mid;
  } while (ub - lb >= accuracy);
  return mid;
}

}  // namespace paincert
