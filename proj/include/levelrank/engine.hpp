#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "levelrank/graph.hpp"
#include "levelrank/partition.hpp"
#include "levelrank/schedule.hpp"
#include "levelrank/solvers.hpp"

namespace levelrank {

enum class ExecutionMode { Sequential, Parallel };

struct UnitRecord {
  UnitKind kind = UnitKind::SingletonGroup;
  std::int32_t level = 0;
  VertexId size = 0;
  EdgeId edges = 0;
  std::int64_t iterations = 0;  // 0 for single-pass solvers
  double wall_ms = 0.0;
};

/// Everything a run wants to tell about itself: parameters, partition census,
/// error bound, work accounting, per-unit records.
struct SolveReport {
  std::string method = "partitioned";
  std::string mode = "sequential";
  double c = 0.85;
  double tol = 1e-9;
  bool keep_loops = false;
  VertexId small_threshold = 100;
  int threads = 1;

  std::int64_t vertices = 0;
  EdgeId edges = 0;
  std::int64_t components = 0;
  std::int64_t scc_components = 0;
  std::int64_t cac_components = 0;
  std::int64_t singleton_cacs = 0;
  VertexId largest_component = 0;
  std::string largest_component_kind = "cac";
  std::int32_t max_level = -1;
  std::int32_t level_count = 0;

  std::int64_t large_scc_vertices = 0;
  double eps_tot = 0.0;
  double eps_avg = 0.0;

  std::int64_t total_iterations = 0;
  std::int64_t iterative_edge_work = 0;    // sum of iterations * intra edges, iterative units
  std::int64_t iterative_edges = 0;        // intra edges of iterative units
  std::int64_t single_pass_edge_work = 0;  // one-pass intra edges plus cross edges
  std::int64_t cross_edge_count = 0;
  std::int64_t total_edge_work = 0;
  double mean_iterations_per_edge = 0.0;
  bool all_weights_zero = false;
  double wall_ms = 0.0;
  std::vector<UnitRecord> units;

  void write_text(std::ostream& out) const;
  void write_json(std::ostream& out) const;
};

struct ErrorBound {
  double eps_tot = 0.0;
  double eps_avg = 0.0;
};

/// Worst-case truncation error of the partitioned run: every vertex of an
/// iteratively solved SCC contributes at most tol * c / (1 - c).
ErrorBound error_bound(std::int64_t large_scc_vertices, std::int64_t vertex_count,
                       const SolverParams& params);

/// Folds solved ranks into downstream start weights along cross edges:
/// weights[dst] += c * ranks[src] / src_out_degree.
void propagate_weights(std::span<const CrossEdge> cross, const Eigen::VectorXd& ranks, double c,
                       Eigen::VectorXd& weights);

struct EngineResult {
  Eigen::VectorXd ranks;
  SolveReport report;
};

/// Level-by-level partitioned solve. Parallel mode distributes each level's
/// units over a thread pool, largest first; weight propagation stays serial,
/// so both modes produce identical ranks. threads = 0 means hardware count.
EngineResult compute_pagerank(const Graph& g, const Eigen::VectorXd& weights,
                              const SolverParams& params,
                              ExecutionMode mode = ExecutionMode::Sequential,
                              VertexId small_threshold = 100, int threads = 0);

/// Whole-graph power series with the same reporting shape.
EngineResult compute_baseline(const Graph& g, const Eigen::VectorXd& weights,
                              const SolverParams& params);

}  // namespace levelrank
