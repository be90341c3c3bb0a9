#pragma once

#include <span>
#include <vector>

#include "paincert/grid.hpp"

namespace paincert {

/// Coefficients of the cubic that replaces the tail of the infinite product
/// in wtilde (all factors beyond the third, expanded around t = 0).
struct SeriesCoeffs {
  static constexpr double c0 = 1.0;
  static constexpr double c1 = 5.0 / 3072.0;
  static constexpr double c2 = 100.0 / (9.0 * 17.0 * 1048576.0);  // 16^5 = 2^20
  static constexpr double c3 = 125.0 / 4398046511104.0;           // 2^42
};

/// Weight function in the shifted variable t = p - 1/5, scaled so that
/// wtilde(0) = 1. Equals 4 * p/(1-p) * (uncorrected product part of f).
/// Throws DomainError for t outside [-1/5, 4/5).
double wtilde(double t);

/// Smooth damping of w at the extremes: exp(-(20/27)(1/5-p)^3) below 1/5,
/// exp(-(1/4)(p-1/2)^3) above 1/2, one in between.
double end_correction(double p);

/// Continuous (off-grid) value of the table function, 4*w(p).
inline double weight_function(double p) { return wtilde(p - 0.2) * end_correction(p); }

/// Returned by lookups whose argument reaches 1 (unbounded pain).
inline constexpr double kPainSentinel = 1e10;

/// Lookup arguments within this many grid cells below a grid point are
/// snapped onto it, so that an exact grid weight perturbed by solver
/// round-off still reads its own row.
inline constexpr double kGridSnap = 1e-6;

/// The discretised weight function W[m] = 4 w(m / M), m in [1, M - 1].
///
/// Row 0 is never read: every lookup clamps its index into [1, M - 1].
/// Immutable after construction; safe for concurrent reads.
class WTable {
 public:
  explicit WTable(GridParams grid);

  const GridParams& grid() const noexcept { return grid_; }
  int grid_size() const noexcept { return grid_.grid_size; }

  /// W at a grid index, clamped into [1, M - 1].
  double at(int m) const noexcept {
    if (m < 1) m = 1;
    if (m > grid_.grid_size - 1) m = grid_.grid_size - 1;
    return values_[static_cast<std::size_t>(m)];
  }

  /// Grid row read by lookup(x): floor(M x) (with snap), clamped.
  int index_of(double x) const noexcept {
    double scaled = x * grid_.grid_size + kGridSnap;
    int m = scaled < 1.0 ? 1 : static_cast<int>(scaled);
    return m > grid_.grid_size - 1 ? grid_.grid_size - 1 : m;
  }

  /// Step-function lookup of W at an arbitrary weight; x >= 1 returns the
  /// sentinel 1e10.
  double lookup(double x) const noexcept {
    if (x >= 1.0) return kPainSentinel;
    return values_[static_cast<std::size_t>(index_of(x))];
  }

  /// Piecewise-linear interpolation between grid rows, for derivative
  /// estimates where the step lookup has no useful slope.
  double interpolate(double x) const noexcept;

  /// W = 4 w: every consumer uses log differences or argmins.
  static constexpr double kScaleFactor = 4.0;

  std::span<const double> values() const noexcept { return values_; }

 private:
  GridParams grid_;
  std::vector<double> values_;
};

WTable build_wtable(GridParams grid);

}  // namespace paincert
