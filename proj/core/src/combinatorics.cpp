#include "paincert/combinatorics.hpp"

#include <cmath>

#include "paincert/errors.hpp"

namespace paincert {

int binom(int n, int k) {
  if (n < 0 || n > kMaxBranches || k < 0 || k > n)
    throw DomainError("binom: requires 0 <= k <= n <= 9");
  int result = 1;
  for (int i = 1; i <= k; ++i) result = result * (n - k + i) / i;
  return result;
}

int noperm(const DegreeConfig& config) {
  if (!config.is_sorted()) throw PreconditionError("noperm: config must be sorted");
  static constexpr int kFactorial[] = {1, 1, 2, 6, 24};
  int count = kFactorial[kDirections];
  int run = 1;
  for (int i = 1; i < kDirections; ++i) {
    if (config[static_cast<std::size_t>(i)] == config[static_cast<std::size_t>(i - 1)]) {
      ++run;
    } else {
      count /= kFactorial[run];
      run = 1;
    }
  }
  return count / kFactorial[run];
}

double config_prob(const DegreeConfig& config, QHat qhat) {
  double result = 1.0;
  for (int j : config.values()) result *= binom(kMaxBranches, j);
  const int total = config.total();
  result *= std::pow(0.5 * qhat.value, total);
  result *= std::pow(1.0 - 0.5 * qhat.value, kDirections * kMaxBranches - total);
  return result;
}

}  // namespace paincert
