#pragma once

#include "paincert/errors.hpp"

namespace paincert {

/// Discretisation of weights p = m / grid_size for m in [1, grid_size - 1].
struct GridParams {
  int grid_size = 20000;

  constexpr int min_index() const { return 1; }
  constexpr int max_index() const { return grid_size - 1; }
  constexpr double weight(int m) const { return m / static_cast<double>(grid_size); }

  void validate() const {
    if (grid_size < 2) throw ConfigurationError("grid_size must be at least 2");
  }
};

inline constexpr int kReferenceGridSize = 20000;

}  // namespace paincert
