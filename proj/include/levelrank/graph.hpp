#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace levelrank {

using VertexId = std::int32_t;
using EdgeId = std::int64_t;

/// Largest representable vertex id; one below the VertexId maximum so that
/// n = max id + 1 still fits.
inline constexpr VertexId kMaxVertexId = 2147483646;

/// How self-loops enter the random walk. Ignore drops them from out-degrees
/// and weights; Keep treats them as ordinary edges.
enum class LoopPolicy { Ignore, Keep };

/// Malformed edge-list input. The message names the offending line.
class ParseError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// A file could not be opened or written.
class IoError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Directed graph in compressed out-adjacency form. Vertex ids are dense
/// 0..n-1, each row of targets is sorted and duplicate-free.
class Graph {
public:
  Graph() = default;

  /// Builds from an edge list; duplicate edges collapse to one.
  /// Throws std::invalid_argument if an endpoint is outside [0, n).
  static Graph from_edges(VertexId n, std::vector<std::pair<VertexId, VertexId>> edges,
                          LoopPolicy policy = LoopPolicy::Ignore);

  [[nodiscard]] VertexId vertex_count() const noexcept { return n_; }
  [[nodiscard]] EdgeId edge_count() const noexcept { return static_cast<EdgeId>(targets_.size()); }
  [[nodiscard]] LoopPolicy loop_policy() const noexcept { return policy_; }

  [[nodiscard]] std::span<const VertexId> out_neighbors(VertexId u) const {
    return {targets_.data() + offsets_[u], targets_.data() + offsets_[u + 1]};
  }
  [[nodiscard]] VertexId out_degree(VertexId u) const {
    return static_cast<VertexId>(offsets_[u + 1] - offsets_[u]);
  }
  [[nodiscard]] bool has_loop(VertexId u) const { return has_loop_[u] != 0; }

  /// Out-degree as the walk sees it: the self-loop is excluded under Ignore.
  [[nodiscard]] VertexId walk_out_degree(VertexId u) const {
    VertexId d = out_degree(u);
    if (policy_ == LoopPolicy::Ignore && has_loop(u)) --d;
    return d;
  }

  /// Graph with every edge flipped, same vertex set and loop policy.
  [[nodiscard]] Graph reversed() const;

private:
  VertexId n_ = 0;
  std::vector<EdgeId> offsets_ = {0};
  std::vector<VertexId> targets_;
  std::vector<std::uint8_t> has_loop_;
  LoopPolicy policy_ = LoopPolicy::Ignore;
};

/// Reads "src<TAB>dst" lines, '#' comments, LF or CRLF. With dense_ids the
/// vertex count is max id + 1; otherwise distinct ids are compacted in sorted
/// order. Throws ParseError on malformed lines or empty input.
Graph parse_edge_list(std::istream& in, bool dense_ids, LoopPolicy policy = LoopPolicy::Ignore);

/// parse_edge_list on a file; throws IoError if it cannot be opened.
Graph load_edge_list(const std::string& path, bool dense_ids, LoopPolicy policy = LoopPolicy::Ignore);

/// Writes "src<TAB>dst" lines, LF, rows in ascending order. Inverse of
/// parse_edge_list on the edge set.
void serialize(const Graph& g, std::ostream& out);

/// Weight of edge (u, v): 1 / walk_out_degree(u). Empty if the edge is absent
/// or is a self-loop under the Ignore policy.
std::optional<double> edge_weight(const Graph& g, VertexId u, VertexId v);

/// Structural role of a vertex, self-loops ignored.
enum class VertexGroup : std::uint8_t {
  Isolated,  // no in- or out-edges
  Leaf,      // in-edges only
  Root,      // out-edges only
  Middle,    // both, on no cycle
  Cycle,     // member of a size >= 2 strongly connected set
};

/// in_big_scc[v] marks vertices on some non-loop cycle (size >= 2 SCC).
std::vector<VertexGroup> classify_vertices(const Graph& g,
                                           std::span<const std::uint8_t> in_big_scc);

}  // namespace levelrank
