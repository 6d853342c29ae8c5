#pragma once

#include <limits>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "drfsp/instance.hpp"
#include "drfsp/route_generation.hpp"

namespace drfsp {

// A bundle of m routes (one per scenario) for one agent type. Purchasing the
// set means buying one agent of that type able to run the scenario's member
// route whichever scenario occurs. member_route[k] indexes into the pool's
// (t, k) collection, -1 meaning the agent idles in that scenario.
struct RouteSet {
  int type_id = 0;
  int set_index = 0;
  std::vector<int> member_route;           // size m, -1 = empty route
  std::map<int, std::vector<int>> covered; // scenario -> entry ids of the member route
};

struct RouteSetCollection {
  std::map<int, std::vector<RouteSet>> sets_by_type;

  int total_sets() const {
    int n = 0;
    for (const auto& [t, v] : sets_by_type) n += static_cast<int>(v.size());
    return n;
  }
};

// Greedy route-set construction: per type, keep opening a new set while some
// compatible entry is uncovered; each set takes, scenario by scenario, the
// route covering the most entries that no set of this type covers yet.
// Uncovered-ness is tracked against all sets built so far plus the one under
// construction, which guarantees strict progress. A scenario whose pool has
// routes always contributes its best route even when nothing new is covered;
// only a scenario with no routes at all contributes the empty route.
inline RouteSetCollection construct_route_sets(const RoutePool& pool, const DrfspInstance& inst) {
  RouteSetCollection out;
  const int m = inst.scenario_count();

  for (const auto& type : inst.types) {
    std::vector<RouteSet>& sets = out.sets_by_type[type.id];
    // Uncovered compatible entry ids per scenario.
    std::vector<std::set<int>> uncovered(m);
    for (int k = 0; k < m; ++k)
      for (int idx : inst.compatible_entries(type.id, k))
        uncovered[k].insert(inst.scenarios[k].timetable[idx].entry_id);

    auto any_uncovered = [&] {
      for (const auto& u : uncovered)
        if (!u.empty()) return true;
      return false;
    };

    while (any_uncovered()) {
      RouteSet set;
      set.type_id = type.id;
      set.set_index = static_cast<int>(sets.size());
      set.member_route.assign(m, -1);

      for (int k = 0; k < m; ++k) {
        const auto& routes = pool.at(type.id, k);
        if (routes.empty()) continue; // no coverage possible; agent idles here

        int best = -1;
        std::size_t best_new = 0;
        int best_min_entry = std::numeric_limits<int>::max();
        for (int r = 0; r < static_cast<int>(routes.size()); ++r) {
          std::size_t fresh = 0;
          int min_entry = std::numeric_limits<int>::max();
          for (int id : routes[r].entry_ids(inst)) {
            if (uncovered[k].contains(id)) {
              ++fresh;
              min_entry = std::min(min_entry, id);
            }
          }
          if (best < 0 || fresh > best_new || (fresh == best_new && fresh > 0 && min_entry < best_min_entry)) {
            best = r;
            best_new = fresh;
            best_min_entry = min_entry;
          }
        }

        set.member_route[k] = best;
        auto ids = routes[best].entry_ids(inst);
        set.covered[k] = ids;
        for (int id : ids) uncovered[k].erase(id);
      }
      sets.push_back(std::move(set));
    }
  }
  return out;
}

// True when, for every scenario and entry, some set of a compatible type
// covers the entry. This is the well-posedness precondition of the set cover
// stage.
inline bool coverage_complete(const RouteSetCollection& collection, const DrfspInstance& inst) {
  for (const auto& s : inst.scenarios) {
    for (const auto& e : s.timetable) {
      bool covered = false;
      for (const auto& [t, sets] : collection.sets_by_type) {
        if (!e.compatible_with(t)) continue;
        for (const auto& set : sets) {
          auto it = set.covered.find(s.index);
          if (it == set.covered.end()) continue;
          for (int id : it->second)
            if (id == e.entry_id) {
              covered = true;
              break;
            }
          if (covered) break;
        }
        if (covered) break;
      }
      if (!covered) return false;
    }
  }
  return true;
}

inline std::string dump_route_sets(const RouteSetCollection& collection) {
  std::ostringstream out;
  for (const auto& [t, sets] : collection.sets_by_type) {
    for (const auto& set : sets) {
      out << "S^" << t << "_" << set.set_index << " :";
      for (int k = 0; k < static_cast<int>(set.member_route.size()); ++k) {
        out << " k" << k << "=[";
        auto it = set.covered.find(k);
        if (it != set.covered.end()) {
          for (std::size_t i = 0; i < it->second.size(); ++i) out << (i ? "," : "") << it->second[i];
        }
        out << "]";
      }
      out << "\n";
    }
  }
  return out.str();
}

} // namespace drfsp
