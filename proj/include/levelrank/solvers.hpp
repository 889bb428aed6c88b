#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "levelrank/graph.hpp"
#include "levelrank/schedule.hpp"

namespace levelrank {

struct SolverParams {
  double c = 0.85;    // continuation probability, in (0, 1)
  double tol = 1e-9;  // max-norm stop for the power series
};

/// Throws std::invalid_argument unless 0 < c < 1 and tol > 0.
void validate_params(const SolverParams& params);

/// Iteration budget before a power series is declared non-convergent.
std::int64_t iteration_cap(const SolverParams& params);

/// Optional capture of power-series behavior for analysis.
struct PowerSeriesStats {
  std::vector<double> increment_l1_norms;
  double min_increment_entry = 0.0;
};

/// Vertices with no walk edges keep their start weight; a kept self-loop
/// contributes its geometric factor 1 / (1 - c * a_ii).
Eigen::VectorXd solve_singletons(const Graph& g, const SolveUnit& unit,
                                 const Eigen::VectorXd& w_local, const SolverParams& params);

/// One topological pass over an acyclic unit. edge_visits, when given,
/// receives the number of edges relaxed. Throws std::logic_error if the
/// in-degree accounting finds a cycle.
Eigen::VectorXd solve_cac(const Graph& g, const SolveUnit& unit, const Eigen::VectorXd& w_local,
                          const SolverParams& params, EdgeId* edge_visits = nullptr);

/// Direct dense solve of (I - cA^T) r = w on the unit's submatrix, partial
/// pivoting. Throws std::runtime_error if the factorization degenerates.
Eigen::VectorXd solve_small_scc(const Graph& g, const SolveUnit& unit,
                                const Eigen::VectorXd& w_local, const SolverParams& params);

/// Accumulated power series r = sum_k (cA^T)^k w over the unit's submatrix.
/// Stops once the latest increment's max-norm drops below tol; iterations
/// reports the number of multiplies.
Eigen::VectorXd solve_large_scc(const Graph& g, const SolveUnit& unit,
                                const Eigen::VectorXd& w_local, const SolverParams& params,
                                std::int64_t& iterations, PowerSeriesStats* stats = nullptr);

/// Whole-graph power series, no partitioning.
Eigen::VectorXd solve_baseline(const Graph& g, const Eigen::VectorXd& w,
                               const SolverParams& params, std::int64_t& iterations);

/// Dense direct solve of the whole graph; exact reference for small inputs.
Eigen::VectorXd solve_dense_whole(const Graph& g, const Eigen::VectorXd& w, double c);

/// Classical eigenvector PageRank and its bridge to walk multiplicities:
/// r1 is the unit-l1 stationary vector of the dangling-corrected
/// teleportation chain, d the walk termination mass 1 - |cA^T r1|_1, and
/// r3 = r1 * |w|_1 / d.
struct PageRankBridge {
  Eigen::VectorXd r1;
  Eigen::VectorXd r3;
  double d = 0.0;
};
PageRankBridge oracle_r1_to_r3(const Graph& g, const Eigen::VectorXd& w, double c,
                               double power_tol = 1e-14);

}  // namespace levelrank
