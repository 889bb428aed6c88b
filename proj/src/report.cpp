#include <iomanip>
#include <ostream>

#include <json.hpp>

#include "levelrank/engine.hpp"

namespace levelrank {

namespace {

const char* kind_name(UnitKind kind) {
  switch (kind) {
    case UnitKind::SingletonGroup: return "singleton_group";
    case UnitKind::Cac: return "cac";
    case UnitKind::SccSmall: return "scc_small";
    case UnitKind::SccLarge: return "scc_large";
  }
  return "unknown";
}

}  // namespace

void SolveReport::write_text(std::ostream& out) const {
  out << std::setprecision(15);
  out << "method: " << method << '\n';
  out << "mode: " << mode << '\n';
  out << "c: " << c << '\n';
  out << "tol: " << tol << '\n';
  out << "keep_loops: " << (keep_loops ? "true" : "false") << '\n';
  out << "small_threshold: " << small_threshold << '\n';
  out << "threads: " << threads << '\n';
  out << "vertices: " << vertices << '\n';
  out << "edges: " << edges << '\n';
  out << "components: " << components << '\n';
  out << "scc_components: " << scc_components << '\n';
  out << "cac_components: " << cac_components << '\n';
  out << "singleton_cacs: " << singleton_cacs << '\n';
  out << "largest_component: " << largest_component << '\n';
  out << "largest_component_kind: " << largest_component_kind << '\n';
  out << "max_level: " << max_level << '\n';
  out << "level_count: " << level_count << '\n';
  out << "large_scc_vertices: " << large_scc_vertices << '\n';
  out << "eps_tot: " << eps_tot << '\n';
  out << "eps_avg: " << eps_avg << '\n';
  out << "total_iterations: " << total_iterations << '\n';
  out << "iterative_edge_work: " << iterative_edge_work << '\n';
  out << "iterative_edges: " << iterative_edges << '\n';
  out << "single_pass_edge_work: " << single_pass_edge_work << '\n';
  out << "cross_edges: " << cross_edge_count << '\n';
  out << "total_edge_work: " << total_edge_work << '\n';
  out << "mean_iterations_per_edge: " << mean_iterations_per_edge << '\n';
  out << "all_weights_zero: " << (all_weights_zero ? "true" : "false") << '\n';
  out << "wall_ms: " << wall_ms << '\n';
  for (const UnitRecord& u : units) {
    out << "unit: kind=" << kind_name(u.kind) << " level=" << u.level << " size=" << u.size
        << " edges=" << u.edges << " iterations=" << u.iterations << " wall_ms=" << u.wall_ms
        << '\n';
  }
}

void SolveReport::write_json(std::ostream& out) const {
  nlohmann::json j;
  j["parameters"] = {
      {"method", method},
      {"mode", mode},
      {"c", c},
      {"tol", tol},
      {"keep_loops", keep_loops},
      {"small_threshold", small_threshold},
      {"threads", threads},
  };
  j["census"] = {
      {"vertices", vertices},
      {"edges", edges},
      {"components", components},
      {"scc_components", scc_components},
      {"cac_components", cac_components},
      {"singleton_cacs", singleton_cacs},
      {"largest_component", largest_component},
      {"largest_component_kind", largest_component_kind},
      {"max_level", max_level},
      {"level_count", level_count},
  };
  j["bound"] = {
      {"large_scc_vertices", large_scc_vertices},
      {"eps_tot", eps_tot},
      {"eps_avg", eps_avg},
  };
  j["work"] = {
      {"total_iterations", total_iterations},
      {"iterative_edge_work", iterative_edge_work},
      {"iterative_edges", iterative_edges},
      {"single_pass_edge_work", single_pass_edge_work},
      {"cross_edges", cross_edge_count},
      {"total_edge_work", total_edge_work},
      {"mean_iterations_per_edge", mean_iterations_per_edge},
  };
  j["all_weights_zero"] = all_weights_zero;
  j["wall_ms"] = wall_ms;
  auto& ju = j["units"] = nlohmann::json::array();
  for (const UnitRecord& u : units) {
    ju.push_back({
        {"kind", kind_name(u.kind)},
        {"level", u.level},
        {"size", u.size},
        {"edges", u.edges},
        {"iterations", u.iterations},
        {"wall_ms", u.wall_ms},
    });
  }
  out << j.dump(2) << '\n';
}

}  // namespace levelrank
