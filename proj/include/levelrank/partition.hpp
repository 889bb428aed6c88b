#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "levelrank/graph.hpp"

namespace levelrank {

enum class ComponentKind : std::uint8_t { Scc, Cac };

/// Decomposition of a digraph into strongly connected components and
/// connected acyclic components, with longest-path levels (minimum 0).
/// Size-1 components are always CACs.
struct Partition {
  std::vector<VertexId> comp_of;     // vertex -> dense component id
  std::vector<ComponentKind> kinds;  // per component
  std::vector<std::int32_t> levels;  // per component
  std::vector<VertexId> sizes;       // per component
  std::int32_t max_level = -1;

  [[nodiscard]] std::size_t component_count() const noexcept { return kinds.size(); }
};

/// Work counters for the one-pass partitioner. Explore touches each edge
/// exactly once, absorption scans add at most one more visit per edge, and
/// every vertex finishes once.
struct PartitionStats {
  EdgeId explore_edge_visits = 0;
  EdgeId merge_scan_edge_visits = 0;
  VertexId finish_calls = 0;
};

/// One-pass partition: iterative Tarjan DFS with level tracking; each fresh
/// single-vertex component is absorbed into the CACs one level below it
/// unless a size >= 2 SCC sits at that level. Self-loops are ignored.
Partition find_components(const Graph& g, PartitionStats* stats = nullptr);

/// Plain SCC partition (no absorption), same level convention.
Partition find_components_scc_only(const Graph& g);

/// Independent reference built the slow way: textbook SCCs, longest-path
/// levels, then single-vertex CAC heads merged bottom level first with full
/// recomputation after every merge.
Partition reference_partition(const Graph& g);

/// Definition-level consistency checks. Returns human-readable violations,
/// empty when the partition is sound. Quadratic-ish, meant for small inputs.
std::vector<std::string> validate_partition(const Graph& g, const Partition& p);

/// Label-independent form: per component the sorted members plus kind and
/// level, components ordered by member list.
struct CanonicalComponent {
  std::vector<VertexId> members;
  ComponentKind kind = ComponentKind::Cac;
  std::int32_t level = 0;
  auto operator<=>(const CanonicalComponent&) const = default;
};
std::vector<CanonicalComponent> canonical_components(const Partition& p);

/// flags[v] = 1 iff v's component is a size >= 2 SCC.
std::vector<std::uint8_t> big_scc_flags(const Partition& p);

struct PartitionCensus {
  std::int64_t components = 0;
  std::int64_t scc_components = 0;
  std::int64_t cac_components = 0;
  std::int64_t singleton_cacs = 0;
  VertexId largest_component = 0;
  ComponentKind largest_kind = ComponentKind::Cac;
  std::int32_t max_level = -1;
  std::int32_t level_count = 0;
  std::vector<std::int64_t> components_per_level;
  // Count of components with size in (previous bound, bound], bounds 1,2,4,...
  std::vector<std::pair<VertexId, std::int64_t>> size_histogram;
};
PartitionCensus census(const Partition& p);

}  // namespace levelrank
