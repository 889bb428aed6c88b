#pragma once

#include <cstdint>
#include <numeric>
#include <utility>
#include <vector>

namespace levelrank {

/// Disjoint sets with union by depth and path compression.
class UnionFind {
public:
  explicit UnionFind(std::int32_t n) : parent_(n), depth_(n, 1) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }

  std::int32_t find(std::int32_t x) {
    std::int32_t root = x;
    while (parent_[root] != root) root = parent_[root];
    while (parent_[x] != root) {
      std::int32_t next = parent_[x];
      parent_[x] = root;
      x = next;
    }
    return root;
  }

  /// Merges the sets of a and b; returns the surviving representative.
  std::int32_t unite(std::int32_t a, std::int32_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return a;
    if (depth_[a] < depth_[b]) std::swap(a, b);
    parent_[b] = a;
    if (depth_[a] == depth_[b]) ++depth_[a];
    return a;
  }

  /// Direct parent link, exposed so tests can observe compression.
  [[nodiscard]] std::int32_t parent(std::int32_t x) const { return parent_[x]; }

private:
  std::vector<std::int32_t> parent_;
  std::vector<std::int32_t> depth_;
};

}  // namespace levelrank
