// Basic identifiers and small set utilities shared across the library.
#pragma once

#include <algorithm>
#include <cstdint>
#include <span>
#include <vector>

namespace revmax {

using NodeId = std::uint32_t;
using EdgeId = std::uint32_t;

// A seed set: node indices kept sorted and duplicate-free.
using NodeSet = std::vector<NodeId>;

// Bitmask over nodes; usable whenever the instance has at most 64 nodes.
using NodeMask = std::uint64_t;

inline bool contains(std::span<const NodeId> set, NodeId v) {
  return std::binary_search(set.begin(), set.end(), v);
}

// Returns a copy of `set` with `v` inserted (no-op if already present).
inline NodeSet with_node(std::span<const NodeId> set, NodeId v) {
  NodeSet out(set.begin(), set.end());
  auto it = std::lower_bound(out.begin(), out.end(), v);
  if (it == out.end() || *it != v) out.insert(it, v);
  return out;
}

inline NodeSet set_from_mask(NodeMask mask) {
  NodeSet out;
  for (NodeId v = 0; mask != 0; ++v, mask >>= 1)
    if (mask & 1u) out.push_back(v);
  return out;
}

inline NodeMask mask_from_set(std::span<const NodeId> set) {
  NodeMask mask = 0;
  for (NodeId v : set) mask |= NodeMask(1) << v;
  return mask;
}

}  // namespace revmax
