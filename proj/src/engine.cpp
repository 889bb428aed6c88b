#include "levelrank/engine.hpp"

#include <atomic>
#include <chrono>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <thread>

namespace levelrank {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

EdgeId walk_edge_count(const Graph& g) {
  EdgeId total = 0;
  for (VertexId u = 0; u < g.vertex_count(); ++u) total += g.walk_out_degree(u);
  return total;
}

UnitRecord solve_unit(const Graph& g, const SolveUnit& unit, const Eigen::VectorXd& weights,
                      Eigen::VectorXd& ranks, const SolverParams& params) {
  const auto start = Clock::now();
  Eigen::VectorXd w_local(unit.size());
  for (VertexId i = 0; i < unit.size(); ++i) w_local[i] = weights[unit.global_ids[i]];

  std::int64_t iterations = 0;
  Eigen::VectorXd r_local;
  switch (unit.kind) {
    case UnitKind::SingletonGroup:
      r_local = solve_singletons(g, unit, w_local, params);
      break;
    case UnitKind::Cac:
      r_local = solve_cac(g, unit, w_local, params);
      break;
    case UnitKind::SccSmall:
      r_local = solve_small_scc(g, unit, w_local, params);
      break;
    case UnitKind::SccLarge:
      r_local = solve_large_scc(g, unit, w_local, params, iterations);
      break;
  }
  for (VertexId i = 0; i < unit.size(); ++i) ranks[unit.global_ids[i]] = r_local[i];

  UnitRecord rec;
  rec.kind = unit.kind;
  rec.level = unit.level;
  rec.size = unit.size();
  rec.edges = static_cast<EdgeId>(unit.edges.size());
  rec.iterations = iterations;
  rec.wall_ms = ms_since(start);
  return rec;
}

void fill_partition_census(SolveReport& rep, const Partition& p) {
  const PartitionCensus pc = census(p);
  rep.components = pc.components;
  rep.scc_components = pc.scc_components;
  rep.cac_components = pc.cac_components;
  rep.singleton_cacs = pc.singleton_cacs;
  rep.largest_component = pc.largest_component;
  rep.largest_component_kind = pc.largest_kind == ComponentKind::Scc ? "scc" : "cac";
  rep.max_level = pc.max_level;
  rep.level_count = pc.level_count;
}

}  // namespace

ErrorBound error_bound(std::int64_t large_scc_vertices, std::int64_t vertex_count,
                       const SolverParams& params) {
  ErrorBound b;
  b.eps_tot =
      static_cast<double>(large_scc_vertices) * params.tol * params.c / (1.0 - params.c);
  b.eps_avg = vertex_count > 0 ? b.eps_tot / static_cast<double>(vertex_count) : 0.0;
  return b;
}

void propagate_weights(std::span<const CrossEdge> cross, const Eigen::VectorXd& ranks, double c,
                       Eigen::VectorXd& weights) {
  for (const CrossEdge& e : cross)
    weights[e.dst] += c * ranks[e.src] / static_cast<double>(e.src_out_degree);
}

EngineResult compute_pagerank(const Graph& g, const Eigen::VectorXd& weights,
                              const SolverParams& params, ExecutionMode mode,
                              VertexId small_threshold, int threads) {
  validate_params(params);
  const VertexId n = g.vertex_count();
  if (weights.size() != static_cast<Eigen::Index>(n))
    throw std::invalid_argument("weight vector does not match the vertex count");
  if (n > 0 && weights.minCoeff() < 0.0)
    throw std::invalid_argument("weights must be non-negative");

  const auto run_start = Clock::now();
  EngineResult res;
  SolveReport& rep = res.report;
  rep.method = "partitioned";
  rep.mode = mode == ExecutionMode::Parallel ? "parallel" : "sequential";
  rep.c = params.c;
  rep.tol = params.tol;
  rep.keep_loops = g.loop_policy() == LoopPolicy::Keep;
  rep.small_threshold = small_threshold;
  rep.vertices = n;
  rep.edges = g.edge_count();
  res.ranks = Eigen::VectorXd::Zero(n);
  if (n == 0) return res;
  rep.all_weights_zero = weights.maxCoeff() == 0.0;

  const Partition p = find_components(g);
  const Schedule s = build_schedule(g, p, small_threshold);
  fill_partition_census(rep, p);

  int pool_size = 1;
  if (mode == ExecutionMode::Parallel) {
    pool_size = threads > 0 ? threads : static_cast<int>(std::thread::hardware_concurrency());
    if (pool_size < 1) pool_size = 1;
  }
  rep.threads = pool_size;

  Eigen::VectorXd work_w = weights;
  for (const ScheduleLevel& level : s.levels) {
    std::vector<UnitRecord> records(level.units.size());
    if (mode == ExecutionMode::Sequential || pool_size == 1 || level.units.size() <= 1) {
      for (std::size_t i = 0; i < level.units.size(); ++i)
        records[i] = solve_unit(g, level.units[i], work_w, res.ranks, params);
    } else {
      std::atomic<std::size_t> next{0};
      std::mutex error_lock;
      std::exception_ptr error;
      auto worker = [&] {
        for (;;) {
          const std::size_t i = next.fetch_add(1);
          if (i >= level.units.size()) return;
          try {
            records[i] = solve_unit(g, level.units[i], work_w, res.ranks, params);
          } catch (...) {
            const std::lock_guard<std::mutex> hold(error_lock);
            if (!error) error = std::current_exception();
            return;
          }
        }
      };
      std::vector<std::thread> pool;
      const std::size_t spawn =
          std::min<std::size_t>(static_cast<std::size_t>(pool_size), level.units.size());
      pool.reserve(spawn);
      for (std::size_t t = 0; t < spawn; ++t) pool.emplace_back(worker);
      for (auto& t : pool) t.join();
      if (error) std::rethrow_exception(error);
    }
    propagate_weights(level.cross_edges, res.ranks, params.c, work_w);
    for (auto& rec : records) rep.units.push_back(rec);
  }

  rep.cross_edge_count = s.cross_edge_count;
  for (const UnitRecord& rec : rep.units) {
    rep.total_iterations += rec.iterations;
    if (rec.kind == UnitKind::SccLarge) {
      rep.iterative_edge_work += rec.iterations * rec.edges;
      rep.iterative_edges += rec.edges;
    } else {
      rep.single_pass_edge_work += rec.edges;
    }
    if (rec.kind == UnitKind::SccLarge) rep.large_scc_vertices += rec.size;
  }
  rep.single_pass_edge_work += s.cross_edge_count;
  rep.total_edge_work = rep.iterative_edge_work + rep.single_pass_edge_work;
  rep.mean_iterations_per_edge =
      rep.iterative_edges > 0
          ? static_cast<double>(rep.iterative_edge_work) / static_cast<double>(rep.iterative_edges)
          : 0.0;
  const ErrorBound b = error_bound(rep.large_scc_vertices, n, params);
  rep.eps_tot = b.eps_tot;
  rep.eps_avg = b.eps_avg;
  rep.wall_ms = ms_since(run_start);
  return res;
}

EngineResult compute_baseline(const Graph& g, const Eigen::VectorXd& weights,
                              const SolverParams& params) {
  validate_params(params);
  const VertexId n = g.vertex_count();
  if (weights.size() != static_cast<Eigen::Index>(n))
    throw std::invalid_argument("weight vector does not match the vertex count");
  if (n > 0 && weights.minCoeff() < 0.0)
    throw std::invalid_argument("weights must be non-negative");

  const auto run_start = Clock::now();
  EngineResult res;
  SolveReport& rep = res.report;
  rep.method = "baseline";
  rep.c = params.c;
  rep.tol = params.tol;
  rep.keep_loops = g.loop_policy() == LoopPolicy::Keep;
  rep.vertices = n;
  rep.edges = g.edge_count();
  if (n == 0) {
    res.ranks = Eigen::VectorXd();
    return res;
  }
  rep.all_weights_zero = weights.maxCoeff() == 0.0;

  std::int64_t iterations = 0;
  res.ranks = solve_baseline(g, weights, params, iterations);
  const EdgeId walk_edges = walk_edge_count(g);
  rep.total_iterations = iterations;
  rep.iterative_edge_work = iterations * walk_edges;
  rep.iterative_edges = walk_edges;
  rep.total_edge_work = rep.iterative_edge_work;
  rep.mean_iterations_per_edge = static_cast<double>(iterations);
  rep.wall_ms = ms_since(run_start);
  return res;
}

}  // namespace levelrank
