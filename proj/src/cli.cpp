#include "levelrank/cli.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "levelrank/engine.hpp"
#include "levelrank/generate.hpp"
#include "levelrank/graph.hpp"
#include "levelrank/partition.hpp"
#include "levelrank/schedule.hpp"
#include "levelrank/solvers.hpp"

namespace levelrank {

namespace {

Graph load_input(const std::string& path, LoopPolicy policy) {
  return load_edge_list(path, /*dense_ids=*/true, policy);
}

// One weight per line, '#' comments allowed; exactly one value per vertex.
Eigen::VectorXd load_weights(const std::string& path, VertexId n) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  std::vector<double> values;
  std::string line;
  std::int64_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    double v = 0.0;
    const char* first = line.data();
    const char* last = line.data() + line.size();
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last)
      throw ParseError(path + ":" + std::to_string(line_no) + ": expected one number per line");
    if (v < 0.0)
      throw ParseError(path + ":" + std::to_string(line_no) + ": weights must be non-negative");
    values.push_back(v);
  }
  if (static_cast<VertexId>(values.size()) != n)
    throw ParseError(path + ": expected " + std::to_string(n) + " weights, got " +
                     std::to_string(values.size()));
  return Eigen::Map<const Eigen::VectorXd>(values.data(), static_cast<Eigen::Index>(values.size()));
}

// Runs fn against the named file, or stdout when the path is empty.
template <typename Fn>
void with_output(const std::string& path, Fn&& fn) {
  if (path.empty()) {
    fn(std::cout);
    std::cout.flush();
    return;
  }
  std::ofstream out(path);
  if (!out) throw IoError("cannot open " + path + " for writing");
  fn(out);
  out.flush();
  if (!out) throw IoError("write to " + path + " failed");
}

std::string plural(std::int64_t count, const std::string& word) {
  std::string s = std::to_string(count) + " " + word;
  if (count != 1) s += "s";
  return s;
}

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

void write_ranks(std::ostream& out, const Eigen::VectorXd& ranks) {
  out << std::setprecision(12);
  for (Eigen::Index v = 0; v < ranks.size(); ++v) out << v << '\t' << ranks[v] << '\n';
}

void write_report(const SolveReport& report, const std::string& path) {
  if (path.empty()) {
    report.write_text(std::cerr);
    return;
  }
  with_output(path, [&](std::ostream& out) {
    if (ends_with(path, ".json"))
      report.write_json(out);
    else
      report.write_text(out);
  });
}

struct GenerateBaOptions {
  std::int64_t n = 0;
  int m = 12;
  std::string keep_rule = "log2";
  std::uint64_t seed = 1;
  std::string out;
};

struct GenerateReplicateOptions {
  std::string input;
  int copies = 1;
  std::int64_t bridges = 0;
  std::uint64_t seed = 1;
  std::string out;
};

struct PartitionOptions {
  std::string input;
  std::string out;
};

struct RankOptions {
  std::string input;
  std::string method = "partitioned";
  bool parallel = false;
  int threads = 0;
  double c = 0.85;
  double tol = 1e-9;
  VertexId small_threshold = 100;
  bool keep_loops = false;
  std::string weights;
  std::string out;
  std::string report;
};

struct BenchOptions {
  std::string input;
  std::string sweep;
  std::vector<double> values;
  double c = 0.85;
  double tol = 1e-10;
  VertexId small_threshold = 100;
  bool keep_loops = false;
  bool parallel = false;
  int threads = 0;
  std::string out;
};

struct SpyOptions {
  std::string input;
  VertexId small_threshold = 100;
  bool keep_loops = false;
  std::string out;
};

struct ValidateOptions {
  std::string input;
  double c = 0.85;
  double tol = 1e-12;
};

GeneratorConfig::KeepRule parse_keep_rule(const std::string& text, int& fixed_k) {
  if (text == "log2") return GeneratorConfig::KeepRule::Log2;
  if (text == "all") return GeneratorConfig::KeepRule::All;
  if (text.rfind("fixed:", 0) == 0) {
    const std::string k = text.substr(6);
    auto [ptr, ec] = std::from_chars(k.data(), k.data() + k.size(), fixed_k);
    if (ec == std::errc() && ptr == k.data() + k.size() && fixed_k >= 0)
      return GeneratorConfig::KeepRule::Fixed;
  }
  throw std::invalid_argument("keep rule must be log2, fixed:K, or all");
}

int cmd_generate_ba(const GenerateBaOptions& opt) {
  GeneratorConfig config;
  if (opt.n < 1 || opt.n > kMaxVertexId) throw std::invalid_argument("--n out of range");
  config.n = static_cast<VertexId>(opt.n);
  config.m = opt.m;
  config.rule = parse_keep_rule(opt.keep_rule, config.fixed_k);
  config.seed = opt.seed;
  const auto edges = generate_ba(config);
  with_output(opt.out, [&](std::ostream& out) {
    for (auto [u, v] : edges) out << u << '\t' << v << '\n';
  });
  return 0;
}

int cmd_generate_replicate(const GenerateReplicateOptions& opt) {
  const Graph g = load_input(opt.input, LoopPolicy::Ignore);
  const Graph big = replicate(g, opt.copies, opt.bridges, opt.seed);
  with_output(opt.out, [&](std::ostream& out) { serialize(big, out); });
  return 0;
}

int cmd_partition(const PartitionOptions& opt) {
  const Graph g = load_input(opt.input, LoopPolicy::Ignore);
  const Partition merged = find_components(g);
  const Partition plain = find_components_scc_only(g);
  const PartitionCensus stats = census(merged);
  with_output(opt.out, [&](std::ostream& out) {
    out << plural(stats.scc_components, "SCC") << ", " << plural(stats.cac_components, "CAC")
        << " (" << plural(stats.singleton_cacs, "singleton") << "), max level " << stats.max_level
        << '\n';
    out << "vertices: " << g.vertex_count() << '\n';
    out << "edges: " << g.edge_count() << '\n';
    out << "components: " << stats.components << '\n';
    out << "scc_components: " << stats.scc_components << '\n';
    out << "cac_components: " << stats.cac_components << '\n';
    out << "singleton_cacs: " << stats.singleton_cacs << '\n';
    out << "largest_component: " << stats.largest_component << " ("
        << (stats.largest_kind == ComponentKind::Scc ? "scc" : "cac") << ")\n";
    out << "levels: " << stats.level_count << '\n';
    out << "levels_plain_scc: " << (plain.max_level + 1) << '\n';
    out << "level_histogram:";
    for (std::size_t level = 0; level < stats.components_per_level.size(); ++level)
      out << ' ' << level << ':' << stats.components_per_level[level];
    out << '\n';
    out << "size_histogram:";
    for (auto [bound, count] : stats.size_histogram) out << ' ' << bound << ':' << count;
    out << '\n';
  });
  return 0;
}

int cmd_rank(const RankOptions& opt) {
  const LoopPolicy policy = opt.keep_loops ? LoopPolicy::Keep : LoopPolicy::Ignore;
  const Graph g = load_input(opt.input, policy);
  const Eigen::VectorXd w = opt.weights.empty()
                                ? Eigen::VectorXd::Ones(g.vertex_count()).eval()
                                : load_weights(opt.weights, g.vertex_count());
  const SolverParams params{opt.c, opt.tol};
  EngineResult result;
  if (opt.method == "baseline") {
    result = compute_baseline(g, w, params);
  } else {
    const ExecutionMode mode = opt.parallel ? ExecutionMode::Parallel : ExecutionMode::Sequential;
    result = compute_pagerank(g, w, params, mode, opt.small_threshold, opt.threads);
  }
  with_output(opt.out, [&](std::ostream& out) { write_ranks(out, result.ranks); });
  write_report(result.report, opt.report);
  return 0;
}

int cmd_bench(const BenchOptions& opt) {
  const LoopPolicy policy = opt.keep_loops ? LoopPolicy::Keep : LoopPolicy::Ignore;
  const Graph g = load_input(opt.input, policy);
  const Eigen::VectorXd w = Eigen::VectorXd::Ones(g.vertex_count());

  std::vector<double> values = opt.values;
  if (values.empty()) {
    if (opt.sweep == "tol") {
      for (int k = 1; k <= 20; ++k) values.push_back(std::pow(10.0, -k));
    } else {
      for (double c = 0.5; c < 0.951; c += 0.05) values.push_back(c);
      values.push_back(0.99);
    }
  }
  // Rows ordered by sweep value, following each protocol's direction: tol
  // from loose to tight, c from small to large.
  if (opt.sweep == "tol")
    std::sort(values.begin(), values.end(), std::greater<>());
  else
    std::sort(values.begin(), values.end());

  with_output(opt.out, [&](std::ostream& out) {
    out << "method,c,tol,total_iterations,iter_edge_work,wall_ms\n";
    out << std::setprecision(15);
    auto row = [&](const SolveReport& r) {
      out << r.method << (r.mode == "parallel" ? "_parallel" : "") << ',' << r.c << ',' << r.tol
          << ',' << r.total_iterations << ',' << r.iterative_edge_work << ',' << r.wall_ms << '\n';
    };
    for (double value : values) {
      SolverParams params{opt.c, opt.tol};
      if (opt.sweep == "tol")
        params.tol = value;
      else
        params.c = value;
      validate_params(params);
      row(compute_baseline(g, w, params).report);
      row(compute_pagerank(g, w, params, ExecutionMode::Sequential, opt.small_threshold).report);
      if (opt.parallel)
        row(compute_pagerank(g, w, params, ExecutionMode::Parallel, opt.small_threshold, opt.threads)
                .report);
    }
  });
  return 0;
}

int cmd_spy(const SpyOptions& opt) {
  const LoopPolicy policy = opt.keep_loops ? LoopPolicy::Keep : LoopPolicy::Ignore;
  const Graph g = load_input(opt.input, policy);
  const Partition p = find_components(g);
  const Schedule schedule = build_schedule(g, p, opt.small_threshold);
  with_output(opt.out, [&](std::ostream& out) { export_reordered(g, schedule, out); });
  return 0;
}

int cmd_validate(const ValidateOptions& opt) {
  const Graph g = load_input(opt.input, LoopPolicy::Ignore);
  if (g.vertex_count() > 1000)
    throw std::invalid_argument("validate is exhaustive; use an input with at most 1000 vertices");

  bool ok = true;
  const auto check = [&](bool pass, const std::string& name) {
    std::cout << (pass ? "PASS" : "FAIL") << ": " << name << '\n';
    ok = ok && pass;
  };

  const Partition p = find_components(g);
  const Partition ref = reference_partition(g);
  check(canonical_components(p) == canonical_components(ref),
        "partition matches the reference merge procedure");

  const auto violations = validate_partition(g, p);
  check(violations.empty(), "partition invariants");
  for (const auto& v : violations) std::cout << "  " << v << '\n';

  const SolverParams params{opt.c, opt.tol};
  validate_params(params);
  const Eigen::VectorXd w = Eigen::VectorXd::Ones(g.vertex_count());
  const Eigen::VectorXd dense = solve_dense_whole(g, w, params.c);
  const EngineResult seq = compute_pagerank(g, w, params, ExecutionMode::Sequential);
  const EngineResult par = compute_pagerank(g, w, params, ExecutionMode::Parallel);
  const EngineResult base = compute_baseline(g, w, params);
  const double rank_tol = std::max(1e-9, 10.0 * seq.report.eps_tot);
  check((seq.ranks - dense).cwiseAbs().maxCoeff() <= rank_tol,
        "partitioned ranks match the dense direct solve");
  check((par.ranks - seq.ranks).cwiseAbs().maxCoeff() <= 1e-10,
        "parallel ranks match sequential ranks");
  check((base.ranks - dense).cwiseAbs().maxCoeff() <= rank_tol,
        "baseline ranks match the dense direct solve");

  if (!ok) return 3;
  std::cout << "all checks passed\n";
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args) {
  CLI::App app{"Partitioned PageRank over SCC/CAC level schedules"};
  app.require_subcommand(1);

  auto* generate = app.add_subcommand("generate", "Create synthetic graphs");
  generate->require_subcommand(1);

  GenerateBaOptions ba_opt;
  auto* ba = generate->add_subcommand("ba", "Directed preferential-attachment graph");
  ba->add_option("--n", ba_opt.n, "vertex count")->required();
  ba->add_option("--m", ba_opt.m, "attachment targets per new vertex");
  ba->add_option("--keep-rule", ba_opt.keep_rule, "out-edge rule: log2, fixed:K, or all");
  ba->add_option("--seed", ba_opt.seed, "generator seed");
  ba->add_option("--out", ba_opt.out, "output edge list (default stdout)");

  GenerateReplicateOptions rep_opt;
  auto* rep = generate->add_subcommand("replicate", "Disjoint copies plus random bridge edges");
  rep->add_option("--input", rep_opt.input, "edge-list file")->required();
  rep->add_option("--copies", rep_opt.copies, "number of copies")->required();
  rep->add_option("--bridges", rep_opt.bridges, "random edges between copies");
  rep->add_option("--seed", rep_opt.seed, "generator seed");
  rep->add_option("--out", rep_opt.out, "output edge list (default stdout)");

  PartitionOptions part_opt;
  auto* part = app.add_subcommand("partition", "SCC/CAC partition census");
  part->add_option("--input", part_opt.input, "edge-list file")->required();
  part->add_option("--out", part_opt.out, "census file (default stdout)");

  RankOptions rank_opt;
  auto* rank = app.add_subcommand("rank", "Compute non-normalized PageRank");
  rank->add_option("--input", rank_opt.input, "edge-list file")->required();
  rank->add_option("--method", rank_opt.method, "baseline or partitioned")
      ->check(CLI::IsMember({"baseline", "partitioned"}));
  rank->add_flag("--parallel", rank_opt.parallel, "solve each level's units on worker threads");
  rank->add_option("--threads", rank_opt.threads, "worker count (0 = hardware)");
  rank->add_option("--c", rank_opt.c, "damping factor");
  rank->add_option("--tol", rank_opt.tol, "power-series stopping tolerance");
  rank->add_option("--small-threshold", rank_opt.small_threshold,
                   "SCCs below this size solve directly");
  rank->add_flag("--keep-loops", rank_opt.keep_loops, "treat self-loops as walk edges");
  rank->add_option("--weights", rank_opt.weights, "start weights, one per line (default all 1)");
  rank->add_option("--out", rank_opt.out, "ranks TSV (default stdout)");
  rank->add_option("--report", rank_opt.report, "solve report path (.json for JSON)");

  BenchOptions bench_opt;
  auto* bench = app.add_subcommand("bench", "Sweep tol or c, CSV of work counters");
  bench->add_option("--input", bench_opt.input, "edge-list file")->required();
  bench->add_option("--sweep", bench_opt.sweep, "swept parameter")
      ->required()
      ->check(CLI::IsMember({"tol", "c"}));
  bench->add_option("--values", bench_opt.values, "sweep values (default protocol list)")
      ->delimiter(',');
  bench->add_option("--c", bench_opt.c, "damping factor when sweeping tol");
  bench->add_option("--tol", bench_opt.tol, "tolerance when sweeping c");
  bench->add_option("--small-threshold", bench_opt.small_threshold,
                    "SCCs below this size solve directly");
  bench->add_flag("--keep-loops", bench_opt.keep_loops, "treat self-loops as walk edges");
  bench->add_flag("--parallel", bench_opt.parallel, "also run the parallel mode");
  bench->add_option("--threads", bench_opt.threads, "worker count (0 = hardware)");
  bench->add_option("--out", bench_opt.out, "CSV file (default stdout)");

  SpyOptions spy_opt;
  auto* spy = app.add_subcommand("spy", "Edge coordinates under the schedule ordering");
  spy->add_option("--input", spy_opt.input, "edge-list file")->required();
  spy->add_option("--small-threshold", spy_opt.small_threshold,
                  "SCCs below this size solve directly");
  spy->add_flag("--keep-loops", spy_opt.keep_loops, "treat self-loops as walk edges");
  spy->add_option("--out", spy_opt.out, "TSV file (default stdout)");

  ValidateOptions val_opt;
  auto* val = app.add_subcommand("validate", "Cross-check partition and ranks against oracles");
  val->add_option("--input", val_opt.input, "edge-list file (at most 1000 vertices)")->required();
  val->add_option("--c", val_opt.c, "damping factor");
  val->add_option("--tol", val_opt.tol, "power-series stopping tolerance");

  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  argv.push_back("levelrank");
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (ba->parsed()) return cmd_generate_ba(ba_opt);
    if (rep->parsed()) return cmd_generate_replicate(rep_opt);
    if (part->parsed()) return cmd_partition(part_opt);
    if (rank->parsed()) return cmd_rank(rank_opt);
    if (bench->parsed()) return cmd_bench(bench_opt);
    if (spy->parsed()) return cmd_spy(spy_opt);
    if (val->parsed()) return cmd_validate(val_opt);
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}

}  // namespace levelrank
