#include "paincert/weight_table.hpp"

#include <cmath>

#include "paincert/errors.hpp"

namespace paincert {

double wtilde(double t) {
  if (!(t >= -0.2 && t < 0.8)) throw DomainError("wtilde: t must lie in [-1/5, 4/5)");
  // Tail factors beyond the third, as a cubic in t (Horner).
  double series = SeriesCoeffs::c3;
  series = series * t + SeriesCoeffs::c2;
  series = series * t + SeriesCoeffs::c1;
  series = series * t + SeriesCoeffs::c0;
  const double num = (1.0 + 5.0 * t) * (1.0 + 5.0 * t / 16.0) * (1.0 + 5.0 * t / 256.0);
  const double den = (1.0 - 5.0 * t / 4.0) * (1.0 - 5.0 * t / 64.0) * (1.0 - 5.0 * t / 1024.0);
  return series * num / den;
}

double end_correction(double p) {
  if (p < 0.2) {
    const double d = 0.2 - p;
    return std::exp(-(20.0 / 27.0) * d * d * d);
  }
  if (p > 0.5) {
    const double d = p - 0.5;
    return std::exp(-0.25 * d * d * d);
  }
  return 1.0;
}

WTable::WTable(GridParams grid) : grid_(grid) {
  grid_.validate();
  const int size = grid_.grid_size;
  values_.assign(static_cast<std::size_t>(size), 0.0);
  for (int m = 1; m < size; ++m) {
    const double p = grid_.weight(m);
    double value = wtilde(p - 0.2);
    // Gates compare grid indices strictly: m < M/5 or m > M/2.
    if (5 * m < size || 2 * m > size) value *= end_correction(p);
    values_[static_cast<std::size_t>(m)] = value;
  }
}

double WTable::interpolate(double x) const noexcept {
  const double scaled = x * grid_.grid_size;
  const int last = grid_.grid_size - 1;
  if (scaled <= 1.0) return values_[1];
  if (scaled >= last) return values_[static_cast<std::size_t>(last)];
  const int m = static_cast<int>(scaled);
  const double frac = scaled - m;
  const double lo = values_[static_cast<std::size_t>(m)];
  const double hi = values_[static_cast<std::size_t>(m + 1)];
  return lo + frac * (hi - lo);
}

WTable build_wtable(GridParams grid) { return WTable(grid); }

}  // namespace paincert
