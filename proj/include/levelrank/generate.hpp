#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "levelrank/graph.hpp"

namespace levelrank {

/// Preferential-attachment digraph recipe. An undirected scale-free graph is
/// grown from a connected random seed, then each vertex keeps a rule-driven
/// share of its incident edges as out-edges; an edge can be claimed by at
/// most one endpoint, unclaimed edges are dropped.
struct GeneratorConfig {
  VertexId n = 0;
  int m = 12;  // attachment targets per new vertex
  enum class KeepRule { Log2, Fixed, All };
  KeepRule rule = KeepRule::Log2;
  int fixed_k = 0;  // for KeepRule::Fixed
  std::uint64_t seed = 1;
  VertexId seed_size = 20;
  double seed_mean_degree = 5.0;
};

/// Out-edges granted to a vertex of the given undirected degree.
VertexId keep_count(const GeneratorConfig& config, VertexId undirected_degree);

/// Deterministic in the seed, byte-for-byte across platforms.
std::vector<std::pair<VertexId, VertexId>> generate_ba(const GeneratorConfig& config);

/// generate_ba assembled into a Graph.
Graph ba_graph(const GeneratorConfig& config);

/// Disjoint union of `copies` copies of g plus `bridges` distinct random
/// edges between different copies.
Graph replicate(const Graph& g, int copies, std::int64_t bridges, std::uint64_t seed);

}  // namespace levelrank
