#include "levelrank/solvers.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace levelrank {

void validate_params(const SolverParams& params) {
  if (!(params.c > 0.0) || !(params.c < 1.0))
    throw std::invalid_argument("continuation probability must lie in (0, 1)");
  if (!(params.tol > 0.0)) throw std::invalid_argument("tolerance must be positive");
}

std::int64_t iteration_cap(const SolverParams& params) {
  const double steps = std::log(params.tol) / std::log(params.c);
  const double capped = 10.0 * std::ceil(std::max(1.0, steps));
  return std::max<std::int64_t>(static_cast<std::int64_t>(capped), 16);
}

Eigen::VectorXd solve_singletons(const Graph& g, const SolveUnit& unit,
                                 const Eigen::VectorXd& w_local, const SolverParams& params) {
  validate_params(params);
  Eigen::VectorXd rank = w_local;
  if (g.loop_policy() == LoopPolicy::Keep) {
    for (VertexId i = 0; i < unit.size(); ++i) {
      const VertexId v = unit.global_ids[i];
      if (g.has_loop(v))
        rank[i] /= 1.0 - params.c / static_cast<double>(g.walk_out_degree(v));
    }
  }
  return rank;
}

Eigen::VectorXd solve_cac(const Graph& g, const SolveUnit& unit, const Eigen::VectorXd& w_local,
                          const SolverParams& params, EdgeId* edge_visits) {
  validate_params(params);
  const VertexId m = unit.size();
  Eigen::VectorXd rank = w_local;

  // Local out-adjacency, self-loops covered by the dequeue factor instead.
  std::vector<VertexId> offset(static_cast<std::size_t>(m) + 1, 0);
  std::vector<VertexId> target(unit.edges.size());
  std::vector<VertexId> indeg(m, 0);
  for (const auto& [a, b] : unit.edges) {
    if (a == b) continue;
    ++offset[a + 1];
    ++indeg[b];
  }
  for (VertexId i = 0; i < m; ++i) offset[i + 1] += offset[i];
  {
    std::vector<VertexId> cursor(offset.begin(), offset.end() - 1);
    for (const auto& [a, b] : unit.edges) {
      if (a == b) continue;
      target[cursor[a]++] = b;
    }
  }

  std::vector<VertexId> queue;
  queue.reserve(m);
  for (VertexId i = 0; i < m; ++i)
    if (indeg[i] == 0) queue.push_back(i);
  EdgeId visits = 0;
  const bool keep_loops = g.loop_policy() == LoopPolicy::Keep;
  std::size_t head = 0;
  while (head < queue.size()) {
    const VertexId u = queue[head++];
    const VertexId gu = unit.global_ids[u];
    if (keep_loops && g.has_loop(gu)) {
      rank[u] /= 1.0 - params.c / static_cast<double>(g.walk_out_degree(gu));
      ++visits;
    }
    if (offset[u] == offset[u + 1]) continue;
    const double share = rank[u] * params.c / static_cast<double>(g.walk_out_degree(gu));
    for (VertexId e = offset[u]; e < offset[u + 1]; ++e) {
      const VertexId b = target[e];
      rank[b] += share;
      ++visits;
      if (--indeg[b] == 0) queue.push_back(b);
    }
  }
  if (static_cast<VertexId>(queue.size()) != m)
    throw std::logic_error("cycle inside an acyclic component");
  if (edge_visits) *edge_visits = visits;
  return rank;
}

namespace {

Eigen::VectorXd solve_dense_system(const Graph& g, const std::vector<VertexId>& global_ids,
                                   const std::vector<std::pair<VertexId, VertexId>>& edges,
                                   const Eigen::VectorXd& w, double c) {
  const auto m = static_cast<Eigen::Index>(global_ids.size());
  Eigen::MatrixXd system = Eigen::MatrixXd::Identity(m, m);
  const bool keep_loops = g.loop_policy() == LoopPolicy::Keep;
  for (const auto& [a, b] : edges) {
    if (a == b && !keep_loops) continue;
    system(b, a) -= c / static_cast<double>(g.walk_out_degree(global_ids[a]));
  }
  Eigen::VectorXd rank = system.partialPivLu().solve(w);
  const double residual = (system * rank - w).cwiseAbs().maxCoeff();
  const double scale = 1.0 + w.cwiseAbs().maxCoeff() + rank.cwiseAbs().maxCoeff();
  if (!(residual <= 1e-8 * scale))
    throw std::runtime_error("dense solve degenerated numerically");
  return rank;
}

}  // namespace

Eigen::VectorXd solve_small_scc(const Graph& g, const SolveUnit& unit,
                                const Eigen::VectorXd& w_local, const SolverParams& params) {
  validate_params(params);
  return solve_dense_system(g, unit.global_ids, unit.edges, w_local, params.c);
}

Eigen::VectorXd solve_dense_whole(const Graph& g, const Eigen::VectorXd& w, double c) {
  std::vector<VertexId> ids(g.vertex_count());
  std::iota(ids.begin(), ids.end(), 0);
  std::vector<std::pair<VertexId, VertexId>> edges;
  edges.reserve(static_cast<std::size_t>(g.edge_count()));
  for (VertexId u = 0; u < g.vertex_count(); ++u)
    for (const VertexId v : g.out_neighbors(u)) edges.emplace_back(u, v);
  return solve_dense_system(g, ids, edges, w, c);
}

Eigen::VectorXd solve_large_scc(const Graph& g, const SolveUnit& unit,
                                const Eigen::VectorXd& w_local, const SolverParams& params,
                                std::int64_t& iterations, PowerSeriesStats* stats) {
  validate_params(params);
  const VertexId m = unit.size();
  iterations = 0;
  if (m == 0) return Eigen::VectorXd();

  std::vector<double> push_factor(m);
  for (VertexId i = 0; i < m; ++i)
    push_factor[i] = params.c / static_cast<double>(g.walk_out_degree(unit.global_ids[i]));
  const bool keep_loops = g.loop_policy() == LoopPolicy::Keep;

  Eigen::VectorXd rank = w_local;
  Eigen::VectorXd inc = w_local;
  Eigen::VectorXd next(m);
  const std::int64_t cap = iteration_cap(params);
  if (stats) stats->min_increment_entry = std::numeric_limits<double>::infinity();
  do {
    next.setZero();
    for (const auto& [a, b] : unit.edges) {
      if (a == b && !keep_loops) continue;
      next[b] += push_factor[a] * inc[a];
    }
    inc.swap(next);
    rank += inc;
    ++iterations;
    if (stats) {
      stats->increment_l1_norms.push_back(inc.lpNorm<1>());
      stats->min_increment_entry = std::min(stats->min_increment_entry, inc.minCoeff());
    }
    if (iterations > cap) throw std::runtime_error("power series failed to converge");
  } while (inc.cwiseAbs().maxCoeff() >= params.tol);
  return rank;
}

Eigen::VectorXd solve_baseline(const Graph& g, const Eigen::VectorXd& w,
                               const SolverParams& params, std::int64_t& iterations) {
  validate_params(params);
  const VertexId n = g.vertex_count();
  iterations = 0;
  if (n == 0) return Eigen::VectorXd();

  std::vector<double> push_factor(n, 0.0);
  for (VertexId u = 0; u < n; ++u) {
    const VertexId d = g.walk_out_degree(u);
    if (d > 0) push_factor[u] = params.c / static_cast<double>(d);
  }
  const bool ignore_loops = g.loop_policy() == LoopPolicy::Ignore;

  Eigen::VectorXd rank = w;
  Eigen::VectorXd inc = w;
  Eigen::VectorXd next(n);
  const std::int64_t cap = iteration_cap(params);
  do {
    next.setZero();
    for (VertexId u = 0; u < n; ++u) {
      if (inc[u] == 0.0) continue;
      const double push = push_factor[u] * inc[u];
      for (const VertexId v : g.out_neighbors(u)) {
        if (u == v && ignore_loops) continue;
        next[v] += push;
      }
    }
    inc.swap(next);
    rank += inc;
    ++iterations;
    if (iterations > cap) throw std::runtime_error("power series failed to converge");
  } while (inc.cwiseAbs().maxCoeff() >= params.tol);
  return rank;
}

PageRankBridge oracle_r1_to_r3(const Graph& g, const Eigen::VectorXd& w, double c,
                               double power_tol) {
  if (!(c > 0.0) || !(c < 1.0))
    throw std::invalid_argument("continuation probability must lie in (0, 1)");
  const auto n = static_cast<Eigen::Index>(g.vertex_count());
  const double w_mass = w.sum();
  if (!(w_mass > 0.0)) throw std::invalid_argument("start weights must carry positive mass");

  const Eigen::VectorXd wn = w / w_mass;
  Eigen::MatrixXd adjacency = Eigen::MatrixXd::Zero(n, n);
  Eigen::VectorXd dangling = Eigen::VectorXd::Zero(n);
  for (VertexId u = 0; u < g.vertex_count(); ++u) {
    const VertexId d = g.walk_out_degree(u);
    if (d == 0) {
      dangling[u] = 1.0;
      continue;
    }
    const double share = 1.0 / static_cast<double>(d);
    for (const VertexId v : g.out_neighbors(u)) {
      if (u == v && g.loop_policy() == LoopPolicy::Ignore) continue;
      adjacency(u, v) = share;
    }
  }
  const Eigen::MatrixXd chain = c * (adjacency + dangling * wn.transpose()).transpose() +
                                (1.0 - c) * wn * Eigen::RowVectorXd::Ones(n);

  Eigen::VectorXd r = wn;
  const std::int64_t cap =
      10 * static_cast<std::int64_t>(std::ceil(std::log(power_tol) / std::log(c))) + 100;
  std::int64_t it = 0;
  while (true) {
    Eigen::VectorXd next = chain * r;
    next /= next.sum();
    const double delta = (next - r).cwiseAbs().maxCoeff();
    r = std::move(next);
    if (delta < power_tol) break;
    if (++it > cap) throw std::runtime_error("eigenvector iteration failed to converge");
  }

  PageRankBridge bridge;
  bridge.r1 = r;
  bridge.d = 1.0 - (c * adjacency.transpose() * r).sum();
  bridge.r3 = r * (w_mass / bridge.d);
  return bridge;
}

}  // namespace levelrank
