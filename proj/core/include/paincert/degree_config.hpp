#pragma once

#include <array>
#include <string>
#include <vector>

namespace paincert {

inline constexpr int kMinBranches = 1;
inline constexpr int kMaxBranches = 9;
inline constexpr int kDirections = 4;
inline constexpr int kSortedConfigCount = 495;

/// Forward branch counts (degree - 1) of the four passive points reached
/// from an active point. Each entry lies in [1, 9]; the order is free, but
/// sweep statistics are defined on the sorted form.
class DegreeConfig {
 public:
  /// Throws DomainError when an entry is outside [1, 9].
  explicit DegreeConfig(std::array<int, kDirections> j);
  DegreeConfig(int j1, int j2, int j3, int j4) : DegreeConfig(std::array{j1, j2, j3, j4}) {}

  int operator[](std::size_t i) const { return j_[i]; }
  const std::array<int, kDirections>& values() const noexcept { return j_; }
  int total() const noexcept { return j_[0] + j_[1] + j_[2] + j_[3]; }

  bool is_sorted() const noexcept;
  DegreeConfig sorted() const;

  /// "(j1,j2,j3,j4)"
  std::string to_string() const;

  friend bool operator==(const DegreeConfig&, const DegreeConfig&) = default;
  friend auto operator<=>(const DegreeConfig&, const DegreeConfig&) = default;

 private:
  std::array<int, kDirections> j_;
};

/// All 495 non-decreasing configs in lexicographic order.
const std::vector<DegreeConfig>& all_sorted_configs();

/// Position of a sorted config in all_sorted_configs().
std::size_t sorted_config_index(const DegreeConfig& config);

}  // namespace paincert
