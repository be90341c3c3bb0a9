#include "paincert/chain_tree.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

#include "paincert/errors.hpp"

namespace paincert {

namespace {

constexpr int kActiveFanout = 4;
// A passive vertex is crowded, and so in passive pain, above this inflow.
constexpr double kCrowdingThreshold = 1.0 + 1.0 / 2048.0;

}  // namespace

DegreeTree sample_tree(int depth, PhiloxStream& rng) {
  if (depth < 0 || depth > kMaxTreeDepth || depth % 2 != 0)
    throw DomainError("sample_tree: depth must be even and in [0, 16]");

  DegreeTree tree;
  tree.depth = depth;
  tree.nodes.push_back(ChainNode{});

  // Breadth-first: children are appended after every node of the current
  // level, so first_child/child_count describe a contiguous block.
  for (std::size_t i = 0; i < tree.nodes.size(); ++i) {
    const ChainNode node = tree.nodes[i];
    if (node.role == NodeRole::kActive && node.depth == depth) continue;

    int children = 0;
    NodeRole child_role = NodeRole::kPassive;
    if (node.role == NodeRole::kActive) {
      children = kActiveFanout;
    } else {
      children = node.degree - 1;
      child_role = NodeRole::kActive;
    }
    if (tree.nodes.size() + static_cast<std::size_t>(children) > kMaxTreeNodes)
      throw std::length_error("sample_tree: tree exceeds the node budget");

    tree.nodes[i].first_child = static_cast<std::uint32_t>(tree.nodes.size());
    tree.nodes[i].child_count = static_cast<std::uint8_t>(children);
    for (int c = 0; c < children; ++c) {
      ChainNode child;
      child.role = child_role;
      child.depth = static_cast<std::uint8_t>(node.depth + 1);
      child.parent = static_cast<std::uint32_t>(i);
      if (child_role == NodeRole::kPassive) {
        // degree - 1 ~ Binomial(9, 1/2): nine fair coin flips.
        child.degree = static_cast<std::uint8_t>(1 + std::popcount(rng() & 0x1FFu));
      }
      tree.nodes.push_back(child);
    }
  }
  return tree;
}

TerminationLabels classify_terminating(const DegreeTree& tree) {
  TerminationLabels labels(tree.nodes.size());
  for (std::size_t i = tree.nodes.size(); i-- > 0;) {
    const ChainNode& node = tree.nodes[i];
    const std::size_t first = node.first_child;
    const std::size_t last = first + node.child_count;

    if (node.role == NodeRole::kPassive) {
      if (node.degree == 1) {
        labels[i] = 0;
        continue;
      }
      int highest = -1;
      bool all = true;
      for (std::size_t c = first; c < last && all; ++c) {
        if (labels[c])
          highest = std::max(highest, *labels[c]);
        else
          all = false;
      }
      if (all) labels[i] = highest + 1;
    } else {
      std::optional<int> lowest;
      for (std::size_t c = first; c < last; ++c)
        if (labels[c] && (!lowest || *labels[c] < *lowest)) lowest = *labels[c];
      if (lowest) labels[i] = *lowest + 1;
    }
  }
  return labels;
}

ZeroPainCheck verify_terminating_zero_pain(const DegreeTree& tree, const TerminationLabels& labels) {
  if (labels.size() != tree.nodes.size())
    throw PreconditionError("verify_terminating_zero_pain: labels do not match the tree");
  if (!root_terminating(labels))
    throw PreconditionError("verify_terminating_zero_pain: root is not terminating");

  const std::size_t n = tree.nodes.size();
  // Weight received by each passive vertex.
  std::vector<double> inflow(n, 0.0);
  // Child chosen by each terminating active vertex.
  std::vector<std::optional<std::size_t>> routed(n);

  for (std::size_t i = 0; i < n; ++i) {
    const ChainNode& node = tree.nodes[i];
    if (node.role != NodeRole::kActive) continue;
    const std::size_t first = node.first_child;
    const std::size_t last = first + node.child_count;

    if (labels[i]) {
      for (std::size_t c = first; c < last; ++c) {
        if (labels[c] && *labels[c] == *labels[i] - 1) {
          routed[i] = c;
          break;
        }
      }
      if (!routed[i]) return {false, i};
      inflow[*routed[i]] += 1.0;
    } else {
      // Five directions: the parent plus the children present in the tree.
      const double share = 1.0 / (kActiveFanout + 1);
      if (i != 0) inflow[node.parent] += share;
      for (std::size_t c = first; c < last; ++c) inflow[c] += share;
    }
  }

  for (std::size_t i = 0; i < n; ++i) {
    if (!routed[i]) continue;
    const std::size_t target = *routed[i];
    const bool crowded = inflow[target] > kCrowdingThreshold;
    // Active pain = weight sent times the receiver's passive pain.
    if (crowded) return {false, i};
  }
  return {};
}

ZeroPainCheck verify_terminating_zero_pain(const DegreeTree& tree) {
  return verify_terminating_zero_pain(tree, classify_terminating(tree));
}

}  // namespace paincert
