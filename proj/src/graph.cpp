#include "levelrank/graph.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>

namespace levelrank {

namespace {
}

Graph Graph::from_edges(VertexId n, std::vector<std::pair<VertexId, VertexId>> edges,
                        LoopPolicy policy) {
  for (const auto& [u, v] : edges) {
    if (u < 0 || u >= n || v < 0 || v >= n)
      throw std::invalid_argument("edge endpoint out of range");
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

  Graph g;
  g.n_ = n;
  g.policy_ = policy;
  g.offsets_.assign(static_cast<std::size_t>(n) + 1, 0);
  g.targets_.resize(edges.size());
  g.has_loop_.assign(static_cast<std::size_t>(n), 0);
  for (const auto& [u, v] : edges) ++g.offsets_[static_cast<std::size_t>(u) + 1];
  for (std::size_t i = 1; i < g.offsets_.size(); ++i) g.offsets_[i] += g.offsets_[i - 1];
  for (std::size_t i = 0; i < edges.size(); ++i) {
    g.targets_[i] = edges[i].second;
    if (edges[i].first == edges[i].second) g.has_loop_[edges[i].first] = 1;
  }
  return g;
}

Graph Graph::reversed() const {
  std::vector<std::pair<VertexId, VertexId>> flipped;
  flipped.reserve(targets_.size());
  for (VertexId u = 0; u < n_; ++u)
    for (VertexId v : out_neighbors(u)) flipped.emplace_back(v, u);
  return from_edges(n_, std::move(flipped), policy_);
}

namespace {

[[noreturn]] void fail_line(long long line_no, const std::string& what) {
  throw ParseError("line " + std::to_string(line_no) + ": " + what);
}

}  // namespace

Graph parse_edge_list(std::istream& in, bool dense_ids, LoopPolicy policy) {
  std::vector<std::pair<VertexId, VertexId>> edges;
  std::string line;
  long long line_no = 0;
  long long max_id = -1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    const char* begin = line.data();
    const char* end = begin + line.size();
    long long src = 0;
    long long dst = 0;
    auto first = std::from_chars(begin, end, src);
    if (first.ec != std::errc{} || first.ptr == end || *first.ptr != '\t')
      fail_line(line_no, "expected \"src<TAB>dst\"");
    auto second = std::from_chars(first.ptr + 1, end, dst);
    if (second.ec != std::errc{} || second.ptr != end)
      fail_line(line_no, "expected \"src<TAB>dst\"");
    if (src < 0 || dst < 0 || src > kMaxVertexId || dst > kMaxVertexId)
      fail_line(line_no, "vertex id out of range");
    edges.emplace_back(static_cast<VertexId>(src), static_cast<VertexId>(dst));
    max_id = std::max({max_id, src, dst});
  }
  if (edges.empty()) throw ParseError("empty input: no edges");

  if (!dense_ids) {
    std::vector<VertexId> ids;
    ids.reserve(edges.size() * 2);
    for (const auto& [u, v] : edges) {
      ids.push_back(u);
      ids.push_back(v);
    }
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    auto compact = [&](VertexId raw) {
      return static_cast<VertexId>(std::lower_bound(ids.begin(), ids.end(), raw) - ids.begin());
    };
    for (auto& [u, v] : edges) {
      u = compact(u);
      v = compact(v);
    }
    return Graph::from_edges(static_cast<VertexId>(ids.size()), std::move(edges), policy);
  }
  return Graph::from_edges(static_cast<VertexId>(max_id + 1), std::move(edges), policy);
}

Graph load_edge_list(const std::string& path, bool dense_ids, LoopPolicy policy) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  return parse_edge_list(in, dense_ids, policy);
}

void serialize(const Graph& g, std::ostream& out) {
  for (VertexId u = 0; u < g.vertex_count(); ++u)
    for (VertexId v : g.out_neighbors(u)) out << u << '\t' << v << '\n';
}

std::optional<double> edge_weight(const Graph& g, VertexId u, VertexId v) {
  auto row = g.out_neighbors(u);
  if (!std::binary_search(row.begin(), row.end(), v)) return std::nullopt;
  if (u == v && g.loop_policy() == LoopPolicy::Ignore) return std::nullopt;
  return 1.0 / static_cast<double>(g.walk_out_degree(u));
}

std::vector<VertexGroup> classify_vertices(const Graph& g,
                                           std::span<const std::uint8_t> in_big_scc) {
  const VertexId n = g.vertex_count();
  if (static_cast<VertexId>(in_big_scc.size()) != n)
    throw std::invalid_argument("scc membership size mismatch");
  std::vector<std::uint8_t> has_in(n, 0), has_out(n, 0);
  for (VertexId u = 0; u < n; ++u) {
    for (VertexId v : g.out_neighbors(u)) {
      if (v == u) continue;
      has_out[u] = 1;
      has_in[v] = 1;
    }
  }
  std::vector<VertexGroup> groups(n);
  for (VertexId v = 0; v < n; ++v) {
    if (in_big_scc[v])
      groups[v] = VertexGroup::Cycle;
    else if (has_in[v] && has_out[v])
      groups[v] = VertexGroup::Middle;
    else if (has_out[v])
      groups[v] = VertexGroup::Root;
    else if (has_in[v])
      groups[v] = VertexGroup::Leaf;
    else
      groups[v] = VertexGroup::Isolated;
  }
  return groups;
}

}  // namespace levelrank
