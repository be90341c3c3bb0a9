#pragma once

#include "paincert/degree_config.hpp"
#include "paincert/qhat.hpp"

namespace paincert {

/// Binomial coefficient for 0 <= k <= n <= 9; DomainError otherwise.
int binom(int n, int k);

/// Number of distinct orderings of a sorted config: 4! / prod(multiplicity!).
/// Throws PreconditionError if the config is not sorted.
int noperm(const DegreeConfig& config);

/// Probability of one ordered config of non-terminating branch counts:
/// prod_i C(9, j_i) (q/2)^{sum j} (1 - q/2)^{36 - sum j}.
double config_prob(const DegreeConfig& config, QHat qhat);

}  // namespace paincert
