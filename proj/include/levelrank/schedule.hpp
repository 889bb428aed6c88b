#pragma once

#include <cstdint>
#include <iosfwd>
#include <utility>
#include <vector>

#include "levelrank/graph.hpp"
#include "levelrank/partition.hpp"

namespace levelrank {

enum class UnitKind : std::uint8_t { SingletonGroup, Cac, SccSmall, SccLarge };

/// One solvable block: a multi-vertex component, or all single-vertex
/// components of a level batched together.
struct SolveUnit {
  UnitKind kind = UnitKind::SingletonGroup;
  std::int32_t level = 0;
  std::vector<VertexId> global_ids;                  // ascending; local id = position
  std::vector<std::pair<VertexId, VertexId>> edges;  // local (src, dst)

  [[nodiscard]] VertexId size() const noexcept {
    return static_cast<VertexId>(global_ids.size());
  }
};

/// Edge leaving its component, kept in global ids. The stored out-degree is
/// the source's walk out-degree, the denominator of the edge weight.
struct CrossEdge {
  VertexId src = 0;
  VertexId dst = 0;
  VertexId src_out_degree = 0;
};

struct ScheduleLevel {
  std::int32_t level = 0;
  std::vector<SolveUnit> units;        // non-increasing size
  std::vector<CrossEdge> cross_edges;  // edges whose source lives on this level
};

/// Level-major solve plan, highest level first. Every graph edge lands in
/// exactly one unit's intra list or one level's cross list; self-loops follow
/// the loop policy and are counted when dropped.
struct Schedule {
  std::vector<ScheduleLevel> levels;
  std::vector<VertexId> permutation;  // vertex -> row in the reordered matrix
  EdgeId intra_edge_count = 0;
  EdgeId cross_edge_count = 0;
  EdgeId dropped_loop_count = 0;
};

/// SCCs of size < small_threshold become SccSmall units, the rest SccLarge.
Schedule build_schedule(const Graph& g, const Partition& p, VertexId small_threshold);

/// Writes "row<TAB>col" per walk edge under the schedule permutation.
void export_reordered(const Graph& g, const Schedule& s, std::ostream& out);

}  // namespace levelrank
