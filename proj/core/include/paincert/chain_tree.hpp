#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "paincert/philox.hpp"

namespace paincert {

enum class NodeRole : std::uint8_t { kActive, kPassive };

/// One vertex of a sampled chain. Active vertices send weight to four
/// passive children; a passive vertex of degree d has d - 1 active children
/// (the other points directing weight at it).
struct ChainNode {
  NodeRole role = NodeRole::kActive;
  /// Passive vertices only: number of inward arrows, in [1, 10].
  std::uint8_t degree = 0;
  std::uint8_t child_count = 0;
  /// Distance from the root active vertex (root = 0, actives even).
  std::uint8_t depth = 0;
  std::uint32_t first_child = 0;
  std::uint32_t parent = 0;
};

/// A chain truncated at an even depth, stored breadth-first so that children
/// always follow their parent. Node 0 is the root x of the edge x -> y; the
/// vertex y itself is not stored. Active vertices at the horizon depth have
/// no children and count as non-terminating.
struct DegreeTree {
  std::vector<ChainNode> nodes;
  int depth = 0;

  const ChainNode& root() const { return nodes.front(); }
  bool at_horizon(std::size_t i) const {
    return nodes[i].role == NodeRole::kActive && nodes[i].depth == depth;
  }
};

inline constexpr int kMaxTreeDepth = 16;
inline constexpr std::size_t kMaxTreeNodes = std::size_t{1} << 26;

/// Each passive vertex draws degree - 1 ~ Binomial(9, 1/2). Requires an even
/// depth in [0, 16] (DomainError); throws std::length_error if the tree
/// outgrows kMaxTreeNodes.
DegreeTree sample_tree(int depth, PhiloxStream& rng);

/// Terminating level per node, nullopt for non-terminating within the horizon.
using TerminationLabels = std::vector<std::optional<int>>;

/// Bottom-up labelling: a degree-1 passive vertex is level 0; an active
/// vertex is one more than its lowest-level child; a passive vertex whose
/// children are all terminating is one more than its highest-level child.
TerminationLabels classify_terminating(const DegreeTree& tree);

inline bool root_terminating(const TerminationLabels& labels) { return labels.front().has_value(); }

struct ZeroPainCheck {
  bool ok = true;
  /// First vertex where the routed colouring leaves positive pain.
  std::optional<std::size_t> witness;
};

/// Builds the inductive colouring for a terminating root: each terminating
/// active vertex sends all its weight to a child one level below it, other
/// active vertices spread weight evenly. Checks that no routed passive
/// vertex receives more than 1 + 2^-11 (so has no passive pain) and hence
/// that every terminating active vertex, the root included, has zero active
/// pain. PreconditionError if the root is not terminating.
ZeroPainCheck verify_terminating_zero_pain(const DegreeTree& tree, const TerminationLabels& labels);
ZeroPainCheck verify_terminating_zero_pain(const DegreeTree& tree);

}  // namespace paincert
