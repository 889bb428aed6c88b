#include "levelrank/partition.hpp"

#include <algorithm>
#include <cassert>
#include <cstdint>
#include <limits>
#include <optional>

#include "levelrank/union_find.hpp"

namespace levelrank {

namespace {

struct Frame {
  VertexId v;
  EdgeId cursor;
};

// Dense component ids by first appearance, plus the final shift so the
// minimum level is 0. Metadata is read off union-find roots; every member
// carries the same values, which debug builds assert.
Partition assemble(const Graph& g, UnionFind& uf, const std::vector<std::int32_t>& level,
                   const std::vector<std::uint8_t>& is_scc) {
  const VertexId n = g.vertex_count();
  Partition p;
  p.comp_of.assign(n, -1);
  std::vector<VertexId> id_of_root(n, -1);
  VertexId counter = 0;
  for (VertexId v = 0; v < n; ++v) {
    const VertexId r = uf.find(v);
    if (id_of_root[r] < 0) {
      id_of_root[r] = counter++;
      p.kinds.push_back(is_scc[r] ? ComponentKind::Scc : ComponentKind::Cac);
      p.levels.push_back(level[r]);
      p.sizes.push_back(0);
    }
    const VertexId c = id_of_root[r];
    p.comp_of[v] = c;
    ++p.sizes[c];
    assert(level[v] == p.levels[c]);
    assert((is_scc[v] != 0) == (p.kinds[c] == ComponentKind::Scc));
  }
  if (counter > 0) {
    const std::int32_t min_level = *std::min_element(p.levels.begin(), p.levels.end());
    for (auto& l : p.levels) l -= min_level;
    p.max_level = *std::max_element(p.levels.begin(), p.levels.end());
  }
  return p;
}

Partition run_tarjan(const Graph& g, bool merge_cacs, PartitionStats* stats) {
  const VertexId n = g.vertex_count();
  std::vector<VertexId> order(n, -1);
  std::vector<VertexId> low(n, 0);
  std::vector<std::int32_t> level(n, 0);
  std::vector<std::uint8_t> assigned(n, 0);
  std::vector<std::uint8_t> is_scc(n, 0);
  UnionFind uf(n);
  std::vector<VertexId> pending;  // Tarjan stack
  std::vector<Frame> frames;
  std::vector<VertexId> absorb;
  VertexId next_order = 0;
  PartitionStats st;

  // Edge (v, w) with w finished crosses components; otherwise w is in v's SCC.
  auto update_from = [&](VertexId v, VertexId w) {
    if (assigned[w]) {
      level[v] = std::max(level[v], level[w] + 1);
    } else {
      level[v] = std::max(level[v], level[w]);
      low[v] = std::min(low[v], low[w]);
    }
  };

  auto finish = [&](VertexId v) {
    ++st.finish_calls;
    if (low[v] != order[v]) return;
    std::size_t first = pending.size();
    while (pending[--first] != v) {
    }
    const std::size_t members = pending.size() - first;
    for (std::size_t i = first; i < pending.size(); ++i) {
      const VertexId m = pending[i];
      assigned[m] = 1;
      is_scc[m] = 1;
      level[m] = level[v];
      uf.unite(v, m);
    }
    pending.resize(first);
    if (members != 1) return;
    is_scc[v] = 0;
    if (!merge_cacs) return;
    // Absorb the CACs one level down unless an SCC sits there. All
    // out-neighbors of a fresh single-vertex component are finished.
    absorb.clear();
    bool veto = false;
    for (const VertexId w : g.out_neighbors(v)) {
      ++st.merge_scan_edge_visits;
      if (w == v) continue;
      assert(assigned[w]);
      if (level[w] != level[v] - 1) continue;
      if (is_scc[w]) {
        veto = true;
        break;
      }
      absorb.push_back(w);
    }
    if (!veto && !absorb.empty()) {
      --level[v];
      for (const VertexId w : absorb) uf.unite(v, w);
    }
  };

  for (VertexId s = 0; s < n; ++s) {
    if (order[s] >= 0) continue;
    order[s] = low[s] = next_order++;
    level[s] = 1;
    pending.push_back(s);
    frames.push_back({s, 0});
    while (!frames.empty()) {
      const VertexId v = frames.back().v;
      const auto row = g.out_neighbors(v);
      if (frames.back().cursor < static_cast<EdgeId>(row.size())) {
        const VertexId w = row[frames.back().cursor++];
        ++st.explore_edge_visits;
        if (w == v) continue;
        if (order[w] < 0) {
          order[w] = low[w] = next_order++;
          level[w] = 1;
          pending.push_back(w);
          frames.push_back({w, 0});
        } else {
          update_from(v, w);
        }
      } else {
        frames.pop_back();
        finish(v);
        if (!frames.empty()) update_from(frames.back().v, v);
      }
    }
  }
  if (stats) *stats = st;
  return assemble(g, uf, level, is_scc);
}

std::pair<std::vector<VertexId>, VertexId> kosaraju_scc(const Graph& g) {
  const VertexId n = g.vertex_count();
  std::vector<VertexId> finish_order;
  finish_order.reserve(n);
  std::vector<std::uint8_t> seen(n, 0);
  std::vector<Frame> frames;
  for (VertexId s = 0; s < n; ++s) {
    if (seen[s]) continue;
    seen[s] = 1;
    frames.push_back({s, 0});
    while (!frames.empty()) {
      const VertexId v = frames.back().v;
      const auto row = g.out_neighbors(v);
      if (frames.back().cursor < static_cast<EdgeId>(row.size())) {
        const VertexId w = row[frames.back().cursor++];
        if (!seen[w]) {
          seen[w] = 1;
          frames.push_back({w, 0});
        }
      } else {
        finish_order.push_back(v);
        frames.pop_back();
      }
    }
  }
  const Graph rev = g.reversed();
  std::vector<VertexId> comp(n, -1);
  VertexId count = 0;
  std::vector<VertexId> stack;
  for (auto it = finish_order.rbegin(); it != finish_order.rend(); ++it) {
    if (comp[*it] >= 0) continue;
    comp[*it] = count;
    stack.push_back(*it);
    while (!stack.empty()) {
      const VertexId v = stack.back();
      stack.pop_back();
      for (const VertexId w : rev.out_neighbors(v)) {
        if (comp[w] < 0) {
          comp[w] = count;
          stack.push_back(w);
        }
      }
    }
    ++count;
  }
  return {std::move(comp), count};
}

struct Condensation {
  VertexId k = 0;
  std::vector<std::vector<VertexId>> out;
  std::vector<std::vector<VertexId>> in;
};

Condensation condense(const Graph& g, const std::vector<VertexId>& comp_of, VertexId k) {
  std::vector<std::pair<VertexId, VertexId>> pairs;
  for (VertexId u = 0; u < g.vertex_count(); ++u) {
    for (const VertexId v : g.out_neighbors(u)) {
      const VertexId a = comp_of[u];
      const VertexId b = comp_of[v];
      if (a != b) pairs.emplace_back(a, b);
    }
  }
  std::sort(pairs.begin(), pairs.end());
  pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
  Condensation c;
  c.k = k;
  c.out.resize(k);
  c.in.resize(k);
  for (const auto& [a, b] : pairs) {
    c.out[a].push_back(b);
    c.in[b].push_back(a);
  }
  return c;
}

// Length of the longest path leaving each node; empty if the digraph cycles.
std::optional<std::vector<std::int32_t>> longest_path_levels(const Condensation& c) {
  std::vector<std::int32_t> level(c.k, 0);
  std::vector<VertexId> remaining(c.k);
  std::vector<VertexId> queue;
  for (VertexId i = 0; i < c.k; ++i) {
    remaining[i] = static_cast<VertexId>(c.out[i].size());
    if (remaining[i] == 0) queue.push_back(i);
  }
  std::size_t head = 0;
  while (head < queue.size()) {
    const VertexId d = queue[head++];
    for (const VertexId p : c.in[d]) {
      level[p] = std::max(level[p], level[d] + 1);
      if (--remaining[p] == 0) queue.push_back(p);
    }
  }
  if (static_cast<VertexId>(queue.size()) != c.k) return std::nullopt;
  return level;
}

}  // namespace

Partition find_components(const Graph& g, PartitionStats* stats) {
  return run_tarjan(g, true, stats);
}

Partition find_components_scc_only(const Graph& g) { return run_tarjan(g, false, nullptr); }

Partition reference_partition(const Graph& g) {
  const VertexId n = g.vertex_count();
  Partition p;
  if (n == 0) return p;

  auto [comp, k] = kosaraju_scc(g);
  std::vector<VertexId> size(k, 0);
  for (VertexId v = 0; v < n; ++v) ++size[comp[v]];
  std::vector<ComponentKind> kind(k);
  for (VertexId c = 0; c < k; ++c)
    kind[c] = size[c] >= 2 ? ComponentKind::Scc : ComponentKind::Cac;

  // Merge one head at a time, lowest level first, recomputing levels from
  // scratch after every merge.
  while (true) {
    const Condensation cond = condense(g, comp, k);
    const auto levels = longest_path_levels(cond);
    VertexId best_vertex = -1;
    std::int32_t best_level = std::numeric_limits<std::int32_t>::max();
    std::vector<VertexId> best_targets;
    for (VertexId v = 0; v < n; ++v) {
      const VertexId c = comp[v];
      if (size[c] != 1 || kind[c] != ComponentKind::Cac) continue;
      const std::int32_t L = (*levels)[c];
      if (L < 1) continue;
      if (L > best_level || (L == best_level && best_vertex >= 0 && v > best_vertex)) continue;
      bool veto = false;
      std::vector<VertexId> targets;
      for (const VertexId w : g.out_neighbors(v)) {
        if (w == v) continue;
        const VertexId d = comp[w];
        if ((*levels)[d] != L - 1) continue;
        if (kind[d] == ComponentKind::Scc) {
          veto = true;
          break;
        }
        targets.push_back(d);
      }
      if (veto || targets.empty()) continue;
      best_vertex = v;
      best_level = L;
      best_targets = std::move(targets);
    }
    if (best_vertex < 0) break;

    std::sort(best_targets.begin(), best_targets.end());
    best_targets.erase(std::unique(best_targets.begin(), best_targets.end()),
                       best_targets.end());
    const VertexId hc = comp[best_vertex];
    for (VertexId v = 0; v < n; ++v) {
      if (std::binary_search(best_targets.begin(), best_targets.end(), comp[v])) comp[v] = hc;
    }
    // Compact ids and rebuild sizes/kinds; merged components are CACs.
    std::vector<VertexId> remap(k, -1);
    VertexId next = 0;
    std::vector<VertexId> new_size;
    std::vector<ComponentKind> new_kind;
    for (VertexId v = 0; v < n; ++v) {
      const VertexId c = comp[v];
      if (remap[c] < 0) {
        remap[c] = next++;
        new_size.push_back(0);
        new_kind.push_back(kind[c]);
      }
      comp[v] = remap[c];
      ++new_size[comp[v]];
    }
    k = next;
    size = std::move(new_size);
    kind = std::move(new_kind);
  }

  const Condensation cond = condense(g, comp, k);
  const auto levels = longest_path_levels(cond);
  p.comp_of = std::move(comp);
  p.kinds = std::move(kind);
  p.levels = *levels;
  p.sizes = std::move(size);
  p.max_level = *std::max_element(p.levels.begin(), p.levels.end());
  return p;
}

std::vector<CanonicalComponent> canonical_components(const Partition& p) {
  std::vector<CanonicalComponent> cs(p.component_count());
  for (std::size_t c = 0; c < cs.size(); ++c) {
    cs[c].kind = p.kinds[c];
    cs[c].level = p.levels[c];
  }
  for (VertexId v = 0; v < static_cast<VertexId>(p.comp_of.size()); ++v)
    cs[p.comp_of[v]].members.push_back(v);
  std::sort(cs.begin(), cs.end());
  return cs;
}

std::vector<std::uint8_t> big_scc_flags(const Partition& p) {
  std::vector<std::uint8_t> flags(p.comp_of.size(), 0);
  for (std::size_t v = 0; v < p.comp_of.size(); ++v)
    flags[v] = p.kinds[p.comp_of[v]] == ComponentKind::Scc ? 1 : 0;
  return flags;
}

PartitionCensus census(const Partition& p) {
  PartitionCensus c;
  c.components = static_cast<std::int64_t>(p.component_count());
  c.max_level = p.max_level;
  c.level_count = p.max_level + 1;
  c.components_per_level.assign(static_cast<std::size_t>(p.max_level + 1), 0);
  VertexId largest = 0;
  for (std::size_t i = 0; i < p.component_count(); ++i) {
    if (p.kinds[i] == ComponentKind::Scc) {
      ++c.scc_components;
    } else {
      ++c.cac_components;
      if (p.sizes[i] == 1) ++c.singleton_cacs;
    }
    ++c.components_per_level[p.levels[i]];
    if (p.sizes[i] > largest) {
      largest = p.sizes[i];
      c.largest_kind = p.kinds[i];
    }
  }
  c.largest_component = largest;
  for (VertexId bound = 1; bound / 2 < largest && largest > 0; bound *= 2) {
    const VertexId lo = bound / 2;
    std::int64_t count = 0;
    for (const VertexId s : p.sizes)
      if (s > lo && s <= bound) ++count;
    c.size_histogram.emplace_back(bound, count);
  }
  return c;
}

std::vector<std::string> validate_partition(const Graph& g, const Partition& p) {
  std::vector<std::string> out;
  const VertexId n = g.vertex_count();
  const std::size_t k = p.component_count();
  auto note = [&out](std::string msg) { out.push_back(std::move(msg)); };

  if (static_cast<VertexId>(p.comp_of.size()) != n) {
    note("comp_of does not cover the vertex set");
    return out;
  }
  if (p.levels.size() != k || p.sizes.size() != k) {
    note("per-component arrays disagree on the component count");
    return out;
  }
  std::vector<VertexId> counted(k, 0);
  for (VertexId v = 0; v < n; ++v) {
    if (p.comp_of[v] < 0 || p.comp_of[v] >= static_cast<VertexId>(k)) {
      note("component id out of range for vertex " + std::to_string(v));
      return out;
    }
    ++counted[p.comp_of[v]];
  }
  std::vector<std::vector<VertexId>> members(k);
  for (VertexId v = 0; v < n; ++v) members[p.comp_of[v]].push_back(v);
  for (std::size_t c = 0; c < k; ++c) {
    if (counted[c] == 0) note("component " + std::to_string(c) + " is empty");
    if (counted[c] != p.sizes[c])
      note("recorded size wrong for component " + std::to_string(c));
    if (p.kinds[c] == ComponentKind::Scc && p.sizes[c] < 2)
      note("size-1 component " + std::to_string(c) + " labeled SCC");
    if (p.levels[c] < 0) note("negative level on component " + std::to_string(c));
  }

  const auto [scc_of, scc_k] = kosaraju_scc(g);
  std::vector<VertexId> scc_size(scc_k, 0);
  for (VertexId v = 0; v < n; ++v) ++scc_size[scc_of[v]];
  for (std::size_t c = 0; c < k; ++c) {
    if (members[c].empty()) continue;
    if (p.kinds[c] == ComponentKind::Scc) {
      const VertexId s0 = scc_of[members[c][0]];
      bool same = true;
      for (const VertexId v : members[c]) same = same && scc_of[v] == s0;
      if (!same || scc_size[s0] != p.sizes[c])
        note("component " + std::to_string(c) + " is not a maximal strongly connected set");
    } else {
      for (const VertexId v : members[c]) {
        if (scc_size[scc_of[v]] >= 2) {
          note("CAC member " + std::to_string(v) + " lies on a non-loop cycle");
          break;
        }
      }
    }
  }

  // Weak connectivity of multi-vertex CACs.
  const Graph rev = g.reversed();
  std::vector<VertexId> visit_stamp(n, -1);
  std::vector<VertexId> stack;
  for (std::size_t c = 0; c < k; ++c) {
    if (p.kinds[c] != ComponentKind::Cac || members[c].size() < 2) continue;
    const VertexId cid = static_cast<VertexId>(c);
    stack.assign(1, members[c][0]);
    visit_stamp[members[c][0]] = cid;
    std::size_t reached = 1;
    while (!stack.empty()) {
      const VertexId v = stack.back();
      stack.pop_back();
      auto touch = [&](VertexId w) {
        if (p.comp_of[w] == cid && visit_stamp[w] != cid) {
          visit_stamp[w] = cid;
          ++reached;
          stack.push_back(w);
        }
      };
      for (const VertexId w : g.out_neighbors(v)) touch(w);
      for (const VertexId w : rev.out_neighbors(v)) touch(w);
    }
    if (reached != members[c].size())
      note("CAC component " + std::to_string(c) + " is not weakly connected");
  }

  for (VertexId u = 0; u < n; ++u) {
    for (const VertexId v : g.out_neighbors(u)) {
      if (u == v || p.comp_of[u] == p.comp_of[v]) continue;
      if (p.levels[p.comp_of[u]] <= p.levels[p.comp_of[v]]) {
        note("edge " + std::to_string(u) + "->" + std::to_string(v) +
             " does not descend in level");
      }
    }
  }

  const Condensation cond = condense(g, p.comp_of, static_cast<VertexId>(k));
  const auto lp = longest_path_levels(cond);
  if (!lp) {
    note("component condensation contains a cycle");
  } else {
    for (std::size_t c = 0; c < k; ++c) {
      if (p.levels[c] != (*lp)[c])
        note("level of component " + std::to_string(c) + " is " + std::to_string(p.levels[c]) +
             ", longest path says " + std::to_string((*lp)[c]));
    }
  }
  if (k > 0) {
    const std::int32_t mx = *std::max_element(p.levels.begin(), p.levels.end());
    const std::int32_t mn = *std::min_element(p.levels.begin(), p.levels.end());
    if (mx != p.max_level) note("max_level field disagrees with component levels");
    if (mn != 0) note("levels are not grounded at 0");
    const Condensation scc_cond = condense(g, scc_of, scc_k);
    const auto scc_lp = longest_path_levels(scc_cond);
    if (scc_lp) {
      const std::int32_t scc_mx = *std::max_element(scc_lp->begin(), scc_lp->end());
      if (p.max_level > scc_mx)
        note("partition max level exceeds the plain SCC partition's max level");
    }
  }

  // A single-vertex CAC that could still absorb something below it means the
  // merge procedure was not run to completion.
  for (std::size_t c = 0; c < k; ++c) {
    if (p.kinds[c] != ComponentKind::Cac || p.sizes[c] != 1 || p.levels[c] < 1) continue;
    const VertexId v = members[c][0];
    const std::int32_t L = p.levels[c];
    bool veto = false;
    bool target = false;
    for (const VertexId w : g.out_neighbors(v)) {
      if (w == v) continue;
      const VertexId d = p.comp_of[w];
      if (p.levels[d] != L - 1) continue;
      if (p.kinds[d] == ComponentKind::Scc) {
        veto = true;
        break;
      }
      target = true;
    }
    if (!veto && target)
      note("single-vertex CAC " + std::to_string(c) + " (vertex " + std::to_string(v) +
           ") can still be absorbed downward");
  }
  return out;
}

}  // namespace levelrank
