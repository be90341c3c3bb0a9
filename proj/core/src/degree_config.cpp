#include "paincert/degree_config.hpp"

#include <algorithm>

#include "paincert/errors.hpp"

namespace paincert {

DegreeConfig::DegreeConfig(std::array<int, kDirections> j) : j_(j) {
  for (int v : j_)
    if (v < kMinBranches || v > kMaxBranches)
      throw DomainError("DegreeConfig: branch counts must lie in [1, 9]");
}

bool DegreeConfig::is_sorted() const noexcept { return std::is_sorted(j_.begin(), j_.end()); }

DegreeConfig DegreeConfig::sorted() const {
  auto j = j_;
  std::sort(j.begin(), j.end());
  return DegreeConfig(j);
}

std::string DegreeConfig::to_string() const {
  std::string s = "(";
  for (int i = 0; i < kDirections; ++i) {
    if (i) s += ',';
    s += std::to_string(j_[static_cast<std::size_t>(i)]);
  }
  return s + ")";
}

const std::vector<DegreeConfig>& all_sorted_configs() {
  static const std::vector<DegreeConfig> configs = [] {
    std::vector<DegreeConfig> out;
    out.reserve(kSortedConfigCount);
    for (int a = kMinBranches; a <= kMaxBranches; ++a)
      for (int b = a; b <= kMaxBranches; ++b)
        for (int c = b; c <= kMaxBranches; ++c)
          for (int d = c; d <= kMaxBranches; ++d) out.emplace_back(a, b, c, d);
    return out;
  }();
  return configs;
}

std::size_t sorted_config_index(const DegreeConfig& config) {
  const auto& all = all_sorted_configs();
  auto it = std::lower_bound(all.begin(), all.end(), config);
  if (it == all.end() || *it != config)
    throw PreconditionError("sorted_config_index: config is not sorted");
  return static_cast<std::size_t>(it - all.begin());
}

}  // namespace paincert
