#include <doctest.h>

#include <numeric>
#include <random>

#include "levelrank/partition.hpp"
#include "levelrank/schedule.hpp"
#include "levelrank/solvers.hpp"
#include "test_support.hpp"

using namespace levelrank;
using doctest::Approx;
using testsupport::make_graph;

namespace {

SolveUnit whole_graph_unit(const Graph& g, UnitKind kind) {
  SolveUnit unit;
  unit.kind = kind;
  unit.global_ids.resize(static_cast<std::size_t>(g.vertex_count()));
  std::iota(unit.global_ids.begin(), unit.global_ids.end(), 0);
  for (VertexId u = 0; u < g.vertex_count(); ++u)
    for (const VertexId v : g.out_neighbors(u)) unit.edges.emplace_back(u, v);
  return unit;
}

Eigen::VectorXd ones(VertexId n) { return Eigen::VectorXd::Ones(n); }

/// The single multi-vertex unit of a one-component graph.
SolveUnit only_unit(const Graph& g, VertexId threshold) {
  const Schedule s = build_schedule(g, find_components(g), threshold);
  REQUIRE(s.levels.size() >= 1);
  for (const auto& level : s.levels)
    for (const auto& unit : level.units)
      if (unit.kind != UnitKind::SingletonGroup) return unit;
  FAIL("no multi-vertex unit");
  return {};
}

}  // namespace

TEST_CASE("parameter validation") {
  CHECK_NOTHROW(validate_params({0.5, 1e-9}));
  CHECK_THROWS_AS(validate_params({0.0, 1e-9}), std::invalid_argument);
  CHECK_THROWS_AS(validate_params({1.0, 1e-9}), std::invalid_argument);
  CHECK_THROWS_AS(validate_params({-0.1, 1e-9}), std::invalid_argument);
  CHECK_THROWS_AS(validate_params({1.5, 1e-9}), std::invalid_argument);
  CHECK_THROWS_AS(validate_params({0.85, 0.0}), std::invalid_argument);
  CHECK_THROWS_AS(validate_params({0.85, -1e-9}), std::invalid_argument);
}

TEST_CASE("iteration cap scales with the convergence rate") {
  CHECK(iteration_cap({0.85, 1e-9}) == 1280);
  CHECK(iteration_cap({0.85, 0.9}) == 16);
  CHECK(iteration_cap({0.5, 1e-9}) == 300);
}

TEST_CASE("singleton solves") {
  SolverParams params;

  SUBCASE("no edges: rank equals the start weight") {
    const Graph g = make_graph(1, {});
    SolveUnit unit{UnitKind::SingletonGroup, 0, {0}, {}};
    Eigen::VectorXd w(1);
    w << 0.3;
    CHECK(solve_singletons(g, unit, w, params)(0) == 0.3);
  }

  SUBCASE("kept full-weight self-loop applies the geometric factor") {
    const Graph g = make_graph(1, {{0, 0}}, LoopPolicy::Keep);
    SolveUnit unit{UnitKind::SingletonGroup, 0, {0}, {{0, 0}}};
    CHECK(solve_singletons(g, unit, ones(1), params)(0) == Approx(1.0 / 0.15).epsilon(1e-12));
  }

  SUBCASE("kept half-weight self-loop") {
    const Graph g = make_graph(2, {{0, 0}, {0, 1}}, LoopPolicy::Keep);
    SolveUnit unit{UnitKind::SingletonGroup, 1, {0}, {{0, 0}}};
    CHECK(solve_singletons(g, unit, ones(1), params)(0) == Approx(40.0 / 23.0).epsilon(1e-12));
  }

  SUBCASE("ignored self-loop leaves the weight untouched") {
    const Graph g = make_graph(1, {{0, 0}}, LoopPolicy::Ignore);
    SolveUnit unit{UnitKind::SingletonGroup, 0, {0}, {}};
    CHECK(solve_singletons(g, unit, ones(1), params)(0) == 1.0);
  }
}

TEST_CASE("acyclic solve propagates in one pass") {
  SolverParams params;

  SUBCASE("single edge") {
    const Graph g = make_graph(2, {{0, 1}});
    const Eigen::VectorXd r = solve_cac(g, whole_graph_unit(g, UnitKind::Cac), ones(2), params);
    CHECK(r(0) == 1.0);
    CHECK(r(1) == Approx(1.85).epsilon(1e-15));
  }

  SUBCASE("chain accumulates geometrically") {
    const Graph g = make_graph(3, {{0, 1}, {1, 2}});
    EdgeId visits = 0;
    const Eigen::VectorXd r =
        solve_cac(g, whole_graph_unit(g, UnitKind::Cac), ones(3), params, &visits);
    CHECK(r(0) == 1.0);
    CHECK(r(1) == Approx(1.85).epsilon(1e-15));
    CHECK(r(2) == Approx(2.5725).epsilon(1e-15));
    CHECK(visits == 2);
  }

  SUBCASE("diamond splits and recombines mass") {
    const Graph g = make_graph(4, {{0, 1}, {0, 2}, {1, 3}, {2, 3}});
    const Eigen::VectorXd r = solve_cac(g, whole_graph_unit(g, UnitKind::Cac), ones(4), params);
    CHECK(r(1) == Approx(1.425).epsilon(1e-15));
    CHECK(r(3) == Approx(3.4225).epsilon(1e-15));
  }

  SUBCASE("cycle smuggled into an acyclic unit throws") {
    const Graph g = make_graph(2, {{0, 1}, {1, 0}});
    CHECK_THROWS_AS(solve_cac(g, whole_graph_unit(g, UnitKind::Cac), ones(2), params),
                    std::logic_error);
  }
}

TEST_CASE("acyclic solve matches dense elimination on random DAGs") {
  std::mt19937_64 rng(31415);
  SolverParams params;
  for (int trial = 0; trial < 100; ++trial) {
    const VertexId n = 2 + static_cast<VertexId>(rng() % 40);
    const Graph g = testsupport::random_dag(rng, n, 0.2);
    std::vector<double> w(static_cast<std::size_t>(n));
    Eigen::VectorXd we(n);
    for (VertexId v = 0; v < n; ++v) {
      w[static_cast<std::size_t>(v)] = 0.05 + static_cast<double>(rng() % 100) / 25.0;
      we(v) = w[static_cast<std::size_t>(v)];
    }
    params.c = (trial % 2 == 0) ? 0.85 : 0.5;
    EdgeId visits = 0;
    const Eigen::VectorXd got =
        solve_cac(g, whole_graph_unit(g, UnitKind::Cac), we, params, &visits);
    const auto want = testsupport::dense_rank_reference(g, w, params.c);
    INFO("trial ", trial, " n=", n);
    REQUIRE(visits == g.edge_count());
    for (VertexId v = 0; v < n; ++v)
      REQUIRE(got(v) == Approx(want[static_cast<std::size_t>(v)]).epsilon(1e-12));
  }
}

TEST_CASE("direct solve of small strong components") {
  SolverParams params;

  SUBCASE("two-cycle") {
    const Graph g = make_graph(2, {{0, 1}, {1, 0}});
    const Eigen::VectorXd r = solve_small_scc(g, only_unit(g, 100), ones(2), params);
    CHECK(r(0) == Approx(1.0 / 0.15).epsilon(1e-12));
    CHECK(r(1) == Approx(1.0 / 0.15).epsilon(1e-12));
  }

  SUBCASE("one-vertex system is the identity") {
    const Graph g = make_graph(1, {});
    SolveUnit unit{UnitKind::SccSmall, 0, {0}, {}};
    CHECK(solve_small_scc(g, unit, ones(1), params)(0) == Approx(1.0));
  }

  SUBCASE("three-cycle with a single seeded vertex") {
    const Graph g = make_graph(3, {{0, 1}, {1, 2}, {2, 0}});
    Eigen::VectorXd w(3);
    w << 1.0, 0.0, 0.0;
    const Eigen::VectorXd r = solve_small_scc(g, only_unit(g, 100), w, params);
    const double expected = 1.0 / (1.0 - 0.85 * 0.85 * 0.85);
    CHECK(r(0) == Approx(expected).epsilon(1e-12));
    CHECK(r(1) == Approx(0.85 * expected).epsilon(1e-12));
    CHECK(r(2) == Approx(0.85 * 0.85 * expected).epsilon(1e-12));
  }
}

TEST_CASE("power-series solve of large strong components") {
  SUBCASE("two-cycle iteration count at the default tolerance") {
    const Graph g = make_graph(2, {{0, 1}, {1, 0}});
    std::int64_t iterations = 0;
    const Eigen::VectorXd r =
        solve_large_scc(g, only_unit(g, 1), ones(2), {0.85, 1e-9}, iterations);
    CHECK(iterations == 128);
    CHECK(r(0) == Approx(1.0 / 0.15).epsilon(1e-8));
  }

  SUBCASE("loose tolerance stops after a single multiply") {
    const Graph g = make_graph(2, {{0, 1}, {1, 0}});
    std::int64_t iterations = 0;
    Eigen::VectorXd w(2);
    w << 0.5, 0.5;
    const Eigen::VectorXd r = solve_large_scc(g, only_unit(g, 1), w, {0.85, 1.0}, iterations);
    CHECK(iterations == 1);
    CHECK(r(0) == Approx(0.925).epsilon(1e-15));
    CHECK(r(1) == Approx(0.925).epsilon(1e-15));
  }

  SUBCASE("edges leaving the component speed up convergence") {
    const Graph g = make_graph(3, {{0, 1}, {1, 0}, {0, 2}, {1, 2}});
    const Schedule s = build_schedule(g, find_components(g), 1);
    const SolveUnit& unit = s.levels[0].units[0];
    REQUIRE(unit.kind == UnitKind::SccLarge);
    std::int64_t iterations = 0;
    solve_large_scc(g, unit, ones(2), {0.85, 1e-9}, iterations);
    CHECK(iterations == 25);
    CHECK(iterations < 128);
  }

  SUBCASE("increments decay geometrically and monotonically") {
    std::mt19937_64 rng(2718);
    for (int trial = 0; trial < 20; ++trial) {
      const VertexId n = 3 + static_cast<VertexId>(rng() % 18);
      const Graph g = testsupport::random_strong(rng, n, 0.1);
      const SolveUnit unit = whole_graph_unit(g, UnitKind::SccLarge);
      std::int64_t iterations = 0;
      PowerSeriesStats stats;
      solve_large_scc(g, unit, ones(n), {0.85, 1e-10}, iterations, &stats);
      INFO("trial ", trial, " n=", n);
      REQUIRE(stats.increment_l1_norms.size() == static_cast<std::size_t>(iterations));
      REQUIRE(stats.min_increment_entry >= 0.0);
      REQUIRE(stats.increment_l1_norms[0] <= 0.85 * static_cast<double>(n) * (1.0 + 1e-12));
      for (std::size_t k = 1; k < stats.increment_l1_norms.size(); ++k)
        REQUIRE(stats.increment_l1_norms[k] <=
                0.85 * stats.increment_l1_norms[k - 1] * (1.0 + 1e-12));
    }
  }
}

TEST_CASE("small and large solvers agree on strong components") {
  std::mt19937_64 rng(112358);
  for (int trial = 0; trial < 40; ++trial) {
    const VertexId n = 2 + static_cast<VertexId>(rng() % 48);
    const Graph g = testsupport::random_strong(rng, n, 0.08);
    const SolveUnit unit = whole_graph_unit(g, UnitKind::SccSmall);
    Eigen::VectorXd w(n);
    for (VertexId v = 0; v < n; ++v) w(v) = 0.1 + static_cast<double>(rng() % 50) / 10.0;
    const Eigen::VectorXd direct = solve_small_scc(g, unit, w, {0.85, 1e-9});
    std::int64_t iterations = 0;
    const Eigen::VectorXd series = solve_large_scc(g, unit, w, {0.85, 1e-14}, iterations);
    INFO("trial ", trial, " n=", n);
    REQUIRE((direct - series).cwiseAbs().maxCoeff() <= 1e-10);
  }
}

TEST_CASE("whole-graph baseline") {
  SUBCASE("edgeless graph returns the weights after one sweep") {
    const Graph g = make_graph(3, {});
    Eigen::VectorXd w(3);
    w << 0.5, 0.25, 1.0;
    std::int64_t iterations = 0;
    const Eigen::VectorXd r = solve_baseline(g, w, {0.85, 1e-9}, iterations);
    CHECK(iterations == 1);
    CHECK(r == w);
  }

  SUBCASE("matches the dense reference on the 8-vertex fixture") {
    const Graph g = testsupport::fixture8();
    std::int64_t iterations = 0;
    const Eigen::VectorXd r = solve_baseline(g, ones(8), {0.85, 1e-14}, iterations);
    const Eigen::VectorXd exact = solve_dense_whole(g, ones(8), 0.85);
    CHECK((r - exact).cwiseAbs().maxCoeff() <= 1e-10);
    CHECK(iterations > 1);
  }
}

TEST_CASE("eigenvector oracle bridges to walk multiplicities") {
  SUBCASE("two-cycle") {
    const Graph g = make_graph(2, {{0, 1}, {1, 0}});
    const PageRankBridge bridge = oracle_r1_to_r3(g, ones(2), 0.85);
    CHECK(bridge.r1(0) == Approx(0.5).epsilon(1e-10));
    CHECK(bridge.r1(1) == Approx(0.5).epsilon(1e-10));
    CHECK(bridge.d == Approx(0.15).epsilon(1e-10));
    CHECK(bridge.r3(0) == Approx(1.0 / 0.15 * 1.0).epsilon(1e-8));
  }

  SUBCASE("single vertex keeps all its mass") {
    const Graph g = make_graph(1, {});
    const PageRankBridge bridge = oracle_r1_to_r3(g, ones(1), 0.85);
    CHECK(bridge.r1(0) == Approx(1.0).epsilon(1e-12));
    CHECK(bridge.d == Approx(1.0).epsilon(1e-12));
    CHECK(bridge.r3(0) == Approx(1.0).epsilon(1e-10));
  }

  SUBCASE("r3 agrees with the dense solve on strong graphs") {
    std::mt19937_64 rng(6174);
    for (int trial = 0; trial < 25; ++trial) {
      const VertexId n = 2 + static_cast<VertexId>(rng() % 14);
      const Graph g = testsupport::random_strong(rng, n, 0.15);
      Eigen::VectorXd w(n);
      for (VertexId v = 0; v < n; ++v) w(v) = 0.2 + static_cast<double>(rng() % 40) / 20.0;
      const PageRankBridge bridge = oracle_r1_to_r3(g, w, 0.85);
      const Eigen::VectorXd exact = solve_dense_whole(g, w, 0.85);
      INFO("trial ", trial, " n=", n);
      REQUIRE(bridge.r1.sum() == Approx(1.0).epsilon(1e-12));
      for (VertexId v = 0; v < n; ++v)
        REQUIRE(bridge.r3(v) == Approx(exact(v)).epsilon(1e-8));
    }
  }

  SUBCASE("rejects zero start mass") {
    const Graph g = make_graph(2, {{0, 1}});
    CHECK_THROWS_AS(oracle_r1_to_r3(g, Eigen::VectorXd::Zero(2), 0.85), std::invalid_argument);
  }
}
