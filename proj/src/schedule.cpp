#include "levelrank/schedule.hpp"

#include <algorithm>
#include <cassert>
#include <numeric>
#include <ostream>
#include <stdexcept>

namespace levelrank {

namespace {

// Stable counting sort of component ids, descending key, key in [0, max_key].
std::vector<VertexId> sort_desc_by(const std::vector<VertexId>& items,
                                   const std::vector<std::int32_t>& key,
                                   std::int32_t max_key) {
  std::vector<VertexId> count(static_cast<std::size_t>(max_key) + 1, 0);
  for (const VertexId it : items) ++count[key[it]];
  std::vector<VertexId> cursor(static_cast<std::size_t>(max_key) + 1, 0);
  VertexId acc = 0;
  for (std::int32_t k = max_key; k >= 0; --k) {
    cursor[k] = acc;
    acc += count[k];
  }
  std::vector<VertexId> out(items.size());
  for (const VertexId it : items) out[cursor[key[it]]++] = it;
  return out;
}

}  // namespace

Schedule build_schedule(const Graph& g, const Partition& p, VertexId small_threshold) {
  if (small_threshold < 1) throw std::invalid_argument("small_threshold must be at least 1");
  const VertexId n = g.vertex_count();
  const VertexId k = static_cast<VertexId>(p.component_count());
  Schedule s;
  if (n == 0) return s;

  std::vector<VertexId> comps(k);
  std::iota(comps.begin(), comps.end(), 0);
  std::vector<std::int32_t> size_key(k);
  for (VertexId c = 0; c < k; ++c) size_key[c] = p.sizes[c];
  comps = sort_desc_by(comps, size_key, n);
  comps = sort_desc_by(comps, p.levels, p.max_level);

  std::vector<std::vector<VertexId>> members(k);
  for (VertexId v = 0; v < n; ++v) members[p.comp_of[v]].push_back(v);

  s.permutation.assign(n, 0);
  VertexId pos = 0;
  for (const VertexId c : comps)
    for (const VertexId v : members[c]) s.permutation[v] = pos++;

  s.levels.resize(static_cast<std::size_t>(p.max_level) + 1);
  for (std::size_t i = 0; i < s.levels.size(); ++i)
    s.levels[i].level = p.max_level - static_cast<std::int32_t>(i);

  // Units: one per multi-vertex component, plus one group for a level's
  // single-vertex components, slotted so unit sizes stay non-increasing.
  std::vector<std::size_t> level_of_comp(k), unit_of_comp(k);
  std::vector<VertexId> local_of(n, 0);
  std::size_t walk = 0;
  while (walk < comps.size()) {
    const std::int32_t level = p.levels[comps[walk]];
    const std::size_t level_idx = static_cast<std::size_t>(p.max_level - level);
    ScheduleLevel& sl = s.levels[level_idx];
    std::vector<VertexId> singles;
    std::vector<std::vector<VertexId>> comps_of_unit;
    while (walk < comps.size() && p.levels[comps[walk]] == level) {
      const VertexId c = comps[walk++];
      if (p.sizes[c] == 1) {
        singles.push_back(members[c][0]);
        continue;
      }
      SolveUnit unit;
      unit.level = level;
      unit.global_ids = members[c];
      unit.kind = p.kinds[c] == ComponentKind::Cac ? UnitKind::Cac
                  : p.sizes[c] < small_threshold   ? UnitKind::SccSmall
                                                   : UnitKind::SccLarge;
      sl.units.push_back(std::move(unit));
      comps_of_unit.push_back({c});
    }
    if (!singles.empty()) {
      std::sort(singles.begin(), singles.end());
      std::vector<VertexId> single_comps;
      single_comps.reserve(singles.size());
      for (const VertexId v : singles) single_comps.push_back(p.comp_of[v]);
      SolveUnit group;
      group.kind = UnitKind::SingletonGroup;
      group.level = level;
      group.global_ids = std::move(singles);
      const auto at = std::find_if(sl.units.begin(), sl.units.end(), [&](const SolveUnit& u) {
        return u.size() < group.size();
      });
      const std::size_t slot = static_cast<std::size_t>(at - sl.units.begin());
      sl.units.insert(at, std::move(group));
      comps_of_unit.insert(comps_of_unit.begin() + static_cast<std::ptrdiff_t>(slot),
                           std::move(single_comps));
    }
    for (std::size_t u = 0; u < sl.units.size(); ++u) {
      for (const VertexId c : comps_of_unit[u]) {
        level_of_comp[c] = level_idx;
        unit_of_comp[c] = u;
      }
      const auto& ids = sl.units[u].global_ids;
      for (std::size_t i = 0; i < ids.size(); ++i)
        local_of[ids[i]] = static_cast<VertexId>(i);
    }
  }

  for (VertexId u = 0; u < n; ++u) {
    const VertexId cu = p.comp_of[u];
    for (const VertexId v : g.out_neighbors(u)) {
      if (u == v) {
        if (g.loop_policy() == LoopPolicy::Keep) {
          s.levels[level_of_comp[cu]].units[unit_of_comp[cu]].edges.emplace_back(local_of[u],
                                                                                 local_of[u]);
          ++s.intra_edge_count;
        } else {
          ++s.dropped_loop_count;
        }
        continue;
      }
      const VertexId cv = p.comp_of[v];
      if (cu == cv) {
        s.levels[level_of_comp[cu]].units[unit_of_comp[cu]].edges.emplace_back(local_of[u],
                                                                               local_of[v]);
        ++s.intra_edge_count;
      } else {
        s.levels[level_of_comp[cu]].cross_edges.push_back({u, v, g.walk_out_degree(u)});
        ++s.cross_edge_count;
      }
    }
  }
  return s;
}

void export_reordered(const Graph& g, const Schedule& s, std::ostream& out) {
  for (VertexId u = 0; u < g.vertex_count(); ++u) {
    for (const VertexId v : g.out_neighbors(u)) {
      if (u == v && g.loop_policy() == LoopPolicy::Ignore) continue;
      out << s.permutation[u] << '\t' << s.permutation[v] << '\n';
    }
  }
}

}  // namespace levelrank
