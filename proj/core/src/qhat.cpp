#include "paincert/qhat.hpp"

#include <cmath>

#include "paincert/errors.hpp"

namespace paincert {

double qhat_map(double q) {
  const double all_terminating = std::pow(1.0 - 0.5 * q, 9);
  return std::pow(1.0 - all_terminating, 4);
}

QHat solve_qhat(double accuracy, double lower, double upper) {
  if (!(accuracy > 0.0 && accuracy < 1e-6))
    throw ConfigurationError("solve_qhat: accuracy must lie in (0, 1e-6)");
  if (!(lower < upper)) throw ConfigurationError("solve_qhat: empty bracket");
  const auto residual = [](double q) { return qhat_map(q) - q; };
  if (!(residual(lower) > 0.0 && residual(upper) < 0.0))
    throw ConfigurationError("solve_qhat: bracket does not straddle the fixed point");

  double mid;
  do {
    mid = 0.5 * (lower + upper);
    if (residual(mid) >= 0.0)
      lower = mid;
    else
      upper = mid;
  } while (upper - lower >= accuracy);
  return QHat{mid};
}

double qhat_by_depth(int depth) {
  if (depth < 0 || depth > 10000) throw DomainError("qhat_by_depth: depth must lie in [0, 10^4]");
  double q = 1.0;
  for (int d = 0; d < depth; ++d) q = qhat_map(q);
  return q;
}

}  // namespace paincert
