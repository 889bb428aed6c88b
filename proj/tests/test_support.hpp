#pragma once

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "levelrank/graph.hpp"

namespace testsupport {

using levelrank::Graph;
using levelrank::LoopPolicy;
using levelrank::VertexId;

Graph make_graph(VertexId n, std::vector<std::pair<VertexId, VertexId>> edges,
                 LoopPolicy policy = LoopPolicy::Ignore);

/// 8-vertex fixture used across the suite (vertices a..h as 0..7):
/// two 2-cycles {b,d} and {g,h}, a path cluster {c,e,f}, and a root a.
const std::vector<std::pair<VertexId, VertexId>>& fixture8_edges();
Graph fixture8(LoopPolicy policy = LoopPolicy::Ignore);

std::vector<std::pair<VertexId, VertexId>> random_edge_list(std::mt19937_64& rng, VertexId n,
                                                            double p, bool allow_loops = false);
Graph random_digraph(std::mt19937_64& rng, VertexId n, double p, bool allow_loops = false);
/// Acyclic by construction: edges only run from lower to higher id.
Graph random_dag(std::mt19937_64& rng, VertexId n, double p);
/// One n-cycle plus random extra edges; strongly connected by construction.
Graph random_strong(std::mt19937_64& rng, VertexId n, double extra_p);

std::vector<VertexId> random_permutation(std::mt19937_64& rng, VertexId n);
Graph relabeled(const Graph& g, const std::vector<VertexId>& perm);

/// Direct solve of (I - c A^T) r = w by Gaussian elimination with partial
/// pivoting; deliberately avoids the library's linear algebra path.
std::vector<double> dense_rank_reference(const Graph& g, const std::vector<double>& w, double c);

/// Flags vertices lying on some cycle of length >= 2, by reachability closure.
std::vector<std::uint8_t> cycle_vertices_brute(const Graph& g);

/// Strongly-connected-component id per vertex via reachability closure,
/// numbered by first member in vertex order.
std::vector<int> scc_ids_brute(const Graph& g);

}  // namespace testsupport
