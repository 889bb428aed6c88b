#include "levelrank/generate.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <numeric>
#include <random>
#include <stdexcept>
#include <unordered_set>

#include "levelrank/union_find.hpp"

namespace levelrank {

namespace {

// std::uniform_int_distribution is not pinned across standard libraries, so
// sampling works on the raw mt19937_64 stream to keep output byte-stable.
std::uint64_t uniform_index(std::mt19937_64& rng, std::uint64_t n) {
  const std::uint64_t max = std::numeric_limits<std::uint64_t>::max();
  const std::uint64_t limit = max - max % n;
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return x % n;
}

// Uniform in [0, 1), 53 significant bits.
double uniform_real(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

bool connected(VertexId n, const std::vector<std::pair<VertexId, VertexId>>& edges) {
  UnionFind uf(static_cast<std::size_t>(n));
  for (auto [u, v] : edges) uf.unite(u, v);
  const VertexId root = uf.find(0);
  for (VertexId v = 1; v < n; ++v) {
    if (uf.find(v) != root) return false;
  }
  return true;
}

void validate(const GeneratorConfig& config) {
  if (config.seed_size < 2) throw std::invalid_argument("seed graph needs at least two vertices");
  if (config.n < config.seed_size) throw std::invalid_argument("n must be at least the seed size");
  if (config.m < 1 || config.m > config.seed_size)
    throw std::invalid_argument("m must be between 1 and the seed size");
  if (config.rule == GeneratorConfig::KeepRule::Fixed && config.fixed_k < 0)
    throw std::invalid_argument("fixed keep count must be non-negative");
}

}  // namespace

VertexId keep_count(const GeneratorConfig& config, VertexId undirected_degree) {
  switch (config.rule) {
    case GeneratorConfig::KeepRule::Log2:
      if (undirected_degree <= 1) return 0;
      // ceil(log2(d))
      return static_cast<VertexId>(std::bit_width(static_cast<std::uint32_t>(undirected_degree) - 1));
    case GeneratorConfig::KeepRule::Fixed:
      return std::min<VertexId>(config.fixed_k, undirected_degree);
    case GeneratorConfig::KeepRule::All:
      return undirected_degree;
  }
  return 0;
}

std::vector<std::pair<VertexId, VertexId>> generate_ba(const GeneratorConfig& config) {
  validate(config);
  std::mt19937_64 rng(config.seed);

  // Connected Erdos-Renyi seed; resample until connected.
  const VertexId s = config.seed_size;
  const double p = config.seed_mean_degree / static_cast<double>(s - 1);
  std::vector<std::pair<VertexId, VertexId>> und;
  do {
    und.clear();
    for (VertexId u = 0; u < s; ++u) {
      for (VertexId v = u + 1; v < s; ++v) {
        if (uniform_real(rng) < p) und.emplace_back(u, v);
      }
    }
  } while (!connected(s, und));

  // Preferential attachment: the pool lists every edge endpoint, so a vertex
  // is drawn with probability proportional to its degree.
  std::vector<VertexId> pool;
  pool.reserve(2 * und.size() + 2 * static_cast<std::size_t>(config.m) * (config.n - s));
  for (auto [u, v] : und) {
    pool.push_back(u);
    pool.push_back(v);
  }
  std::vector<VertexId> targets;
  for (VertexId x = s; x < config.n; ++x) {
    targets.clear();
    while (static_cast<int>(targets.size()) < config.m) {
      const VertexId t = pool[uniform_index(rng, pool.size())];
      if (std::find(targets.begin(), targets.end(), t) == targets.end()) targets.push_back(t);
    }
    for (VertexId t : targets) {
      und.emplace_back(x, t);
      pool.push_back(x);
      pool.push_back(t);
    }
  }

  // Direct the edges: vertices claim out-edges in ascending degree order, each
  // edge goes to the first claimant. Low-degree vertices rarely collide, so
  // nearly every vertex gets its full quota, and edges end up pointing from
  // low-degree toward high-degree endpoints, which keeps cycles scarce.
  std::vector<std::vector<std::pair<VertexId, std::size_t>>> incident(config.n);
  for (std::size_t e = 0; e < und.size(); ++e) {
    auto [u, v] = und[e];
    incident[u].emplace_back(v, e);
    incident[v].emplace_back(u, e);
  }
  std::vector<VertexId> order(config.n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](VertexId a, VertexId b) {
    return incident[a].size() < incident[b].size();
  });
  std::vector<std::uint8_t> taken(und.size(), 0);
  std::vector<std::pair<VertexId, VertexId>> edges;
  edges.reserve(und.size());
  std::vector<std::size_t> avail;
  for (VertexId v : order) {
    const auto deg = static_cast<VertexId>(incident[v].size());
    const VertexId keep = keep_count(config, deg);
    if (keep == 0) continue;
    avail.clear();
    for (std::size_t i = 0; i < incident[v].size(); ++i) {
      if (!taken[incident[v][i].second]) avail.push_back(i);
    }
    const auto take = std::min<std::size_t>(keep, avail.size());
    for (std::size_t i = 0; i < take; ++i) {
      const std::size_t j = i + uniform_index(rng, avail.size() - i);
      std::swap(avail[i], avail[j]);
      const auto [other, e] = incident[v][avail[i]];
      taken[e] = 1;
      edges.emplace_back(v, other);
    }
  }
  return edges;
}

Graph ba_graph(const GeneratorConfig& config) {
  return Graph::from_edges(config.n, generate_ba(config));
}

Graph replicate(const Graph& g, int copies, std::int64_t bridges, std::uint64_t seed) {
  if (copies < 1) throw std::invalid_argument("copies must be positive");
  if (bridges < 0) throw std::invalid_argument("bridges must be non-negative");
  if (bridges > 0 && copies < 2)
    throw std::invalid_argument("bridge edges need at least two copies");
  const VertexId n = g.vertex_count();
  if (n == 0) throw std::invalid_argument("cannot replicate an empty graph");
  if (static_cast<std::int64_t>(n) * copies > kMaxVertexId)
    throw std::invalid_argument("replicated graph too large");
  const VertexId total = n * copies;

  std::vector<std::pair<VertexId, VertexId>> edges;
  edges.reserve(static_cast<std::size_t>(g.edge_count()) * copies + static_cast<std::size_t>(bridges));
  for (int k = 0; k < copies; ++k) {
    const VertexId base = n * k;
    for (VertexId u = 0; u < n; ++u) {
      for (VertexId v : g.out_neighbors(u)) edges.emplace_back(base + u, base + v);
    }
  }

  std::mt19937_64 rng(seed);
  std::unordered_set<std::uint64_t> used;
  std::int64_t added = 0;
  while (added < bridges) {
    const auto u = static_cast<VertexId>(uniform_index(rng, total));
    const auto v = static_cast<VertexId>(uniform_index(rng, total));
    if (u / n == v / n) continue;  // same copy
    const std::uint64_t key =
        static_cast<std::uint64_t>(u) * static_cast<std::uint64_t>(total) + static_cast<std::uint64_t>(v);
    if (!used.insert(key).second) continue;
    edges.emplace_back(u, v);
    ++added;
  }
  return Graph::from_edges(total, edges, g.loop_policy());
}

}  // namespace levelrank
