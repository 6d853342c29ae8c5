#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <map>
#include <stdexcept>
#include <vector>

#include "drfsp/drwsc.hpp"
#include "drfsp/instance.hpp"
#include "drfsp/route.hpp"

// Brute-force reference optima. These enumerate the raw decision spaces and
// share no search code with the solvers they certify.
namespace drfsp::oracle {

// Exhaustive DRWSC optimum: every first-stage subset is tried, and for each
// scenario the cheapest second-stage sub-collection covering the remainder is
// found by scanning all subsets. forced_in / forced_out restrict the
// first-stage subsets considered (bitmasks by set index), which lets tests
// replay branch-and-bound nodes; second-stage purchases are never restricted.
inline double drwsc_optimum(const DrwscInstance& inst, std::uint32_t forced_in = 0,
                            std::uint32_t forced_out = 0) {
  const int n = static_cast<int>(inst.sets.size());
  if (n > 20) throw std::invalid_argument("enumeration oracle limited to 20 sets");
  const int m = inst.scenario_count();
  if (inst.universe_size > 63) throw std::invalid_argument("enumeration oracle limited to 63 elements");

  // Per scenario: bit masks of required elements and of each set's coverage.
  std::vector<std::uint64_t> need(m, 0);
  std::vector<std::vector<std::uint64_t>> covers(m, std::vector<std::uint64_t>(n, 0));
  for (int k = 0; k < m; ++k) {
    for (int e : inst.scenario_elements[k]) need[k] |= std::uint64_t(1) << e;
    for (int s = 0; s < n; ++s)
      for (int e : inst.sets[s].elements_by_scenario[k]) covers[k][s] |= std::uint64_t(1) << e;
  }

  double best = std::numeric_limits<double>::infinity();
  for (std::uint32_t first = 0; first < (1u << n); ++first) {
    if ((first & forced_in) != forced_in) continue;
    if (first & forced_out) continue;
    double first_cost = 0;
    for (int s = 0; s < n; ++s)
      if (first & (1u << s)) first_cost += inst.sets[s].cost;
    if (first_cost >= best) continue;

    double z = 0;
    bool feasible = true;
    for (int k = 0; k < m && feasible; ++k) {
      std::uint64_t open = need[k];
      for (int s = 0; s < n; ++s)
        if (first & (1u << s)) open &= ~covers[k][s];
      double cheapest = std::numeric_limits<double>::infinity();
      if (open == 0) {
        cheapest = 0;
      } else {
        for (std::uint32_t second = 0; second < (1u << n); ++second) {
          std::uint64_t got = 0;
          double cost = 0;
          for (int s = 0; s < n; ++s)
            if (second & (1u << s)) {
              got |= covers[k][s];
              cost += inst.sets[s].cost;
            }
          if ((open & ~got) == 0) cheapest = std::min(cheapest, cost);
        }
      }
      if (cheapest == std::numeric_limits<double>::infinity()) {
        feasible = false;
        break;
      }
      z = std::max(z, first_cost + inst.inflations[k] * cheapest);
    }
    if (feasible) best = std::min(best, z);
  }
  return best;
}

namespace detail {

// Scenario-local entry group with an agent label. Stage 0 agents are shared
// across scenarios; stage 1 agents are bought per scenario.
struct Group {
  int type_id = 0;
  int stage = 0;
  std::vector<int> entries; // indices into the scenario timetable
};

// Does any visiting order of these entries meet every window? Answered by
// trying all permutations under earliest-start propagation; memoized per
// entry subset because the enumeration revisits groups constantly.
class FeasibilityMemo {
public:
  FeasibilityMemo(const DrfspInstance& inst, int k) : inst_(inst), k_(k) {}

  bool feasible(const std::vector<int>& entries) {
    std::uint64_t key = 0;
    for (int e : entries) key |= std::uint64_t(1) << e;
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    std::vector<int> perm = entries;
    std::sort(perm.begin(), perm.end());
    bool ok = false;
    do {
      if (propagate_order(inst_, k_, perm).feasible) {
        ok = true;
        break;
      }
    } while (std::next_permutation(perm.begin(), perm.end()));
    memo_[key] = ok;
    return ok;
  }

private:
  const DrfspInstance& inst_;
  int k_;
  std::map<std::uint64_t, bool> memo_;
};

// Per-scenario usage signature: agents of each type used in each stage.
struct Signature {
  std::vector<int> first;  // by type position
  std::vector<int> second; // by type position

  bool operator<(const Signature& o) const {
    if (first != o.first) return first < o.first;
    return second < o.second;
  }
};

inline void enumerate_assignments(const DrfspInstance& inst, int k, std::size_t pos,
                                  std::vector<Group>& groups, FeasibilityMemo& memo, int P,
                                  std::vector<Signature>& out) {
  const auto& g = inst.scenarios[k].timetable;
  if (pos == g.size()) {
    for (auto& grp : groups)
      if (!memo.feasible(grp.entries)) return;
    Signature sig;
    sig.first.assign(inst.type_count(), 0);
    sig.second.assign(inst.type_count(), 0);
    for (const auto& grp : groups) {
      for (int t = 0; t < inst.type_count(); ++t)
        if (inst.types[t].id == grp.type_id) (grp.stage == 0 ? sig.first : sig.second)[t]++;
    }
    out.push_back(std::move(sig));
    return;
  }

  const auto& entry = g[pos];
  // Join an existing group. Indexing instead of references: the recursion
  // appends to `groups` and may reallocate it.
  for (std::size_t i = 0; i < groups.size(); ++i) {
    if (!entry.compatible_with(groups[i].type_id)) continue;
    groups[i].entries.push_back(static_cast<int>(pos));
    enumerate_assignments(inst, k, pos + 1, groups, memo, P, out);
    groups[i].entries.pop_back();
  }
  // Open a new agent. Same-label agents are interchangeable, so opening one
  // only as the last of its label enumerates each grouping exactly once.
  for (int t : entry.compatible_types) {
    for (int stage = 0; stage < 2; ++stage) {
      int same = 0;
      for (const auto& grp : groups)
        if (grp.type_id == t && grp.stage == stage) ++same;
      if (same >= P) continue;
      groups.push_back(Group{t, stage, {static_cast<int>(pos)}});
      enumerate_assignments(inst, k, pos + 1, groups, memo, P, out);
      groups.pop_back();
    }
  }
}

} // namespace detail

// Exhaustive DRFSP optimum over assignments of every entry to an agent of a
// compatible type in either stage. First-stage agents of a type are
// interchangeable, so a plan is priced from per-scenario usage counts with
// the first-stage purchase covering the busiest scenario per type.
inline double drfsp_optimum(const DrfspInstance& inst) {
  inst.validate();
  const int m = inst.scenario_count();
  const int T = inst.type_count();
  const int P = inst.supply();
  for (const auto& s : inst.scenarios)
    if (s.timetable.size() > 8)
      throw std::invalid_argument("enumeration oracle limited to 8 entries per scenario");

  std::vector<std::vector<detail::Signature>> sigs(m);
  for (int k = 0; k < m; ++k) {
    detail::FeasibilityMemo memo(inst, k);
    std::vector<detail::Group> groups;
    detail::enumerate_assignments(inst, k, 0, groups, memo, P, sigs[k]);
    std::sort(sigs[k].begin(), sigs[k].end());
    sigs[k].erase(std::unique(sigs[k].begin(), sigs[k].end(),
                              [](const auto& a, const auto& b) {
                                return a.first == b.first && a.second == b.second;
                              }),
                  sigs[k].end());
    if (sigs[k].empty()) return std::numeric_limits<double>::infinity();
  }

  double best = std::numeric_limits<double>::infinity();
  std::vector<std::size_t> choice(m, 0);
  while (true) {
    std::vector<int> bought(T, 0);
    for (int k = 0; k < m; ++k)
      for (int t = 0; t < T; ++t) bought[t] = std::max(bought[t], sigs[k][choice[k]].first[t]);
    double purchase = 0;
    for (int t = 0; t < T; ++t) purchase += bought[t] * inst.types[t].first_stage_cost;
    double z = purchase;
    for (int k = 0; k < m; ++k) {
      double extra = 0;
      for (int t = 0; t < T; ++t)
        extra += inst.scenarios[k].inflation * inst.types[t].first_stage_cost *
                 sigs[k][choice[k]].second[t];
      z = std::max(z, purchase + extra);
    }
    best = std::min(best, z);

    int k = 0;
    while (k < m && ++choice[k] == sigs[k].size()) choice[k++] = 0;
    if (k == m) break;
  }
  return best;
}

// Minimum number of type-t routes covering scenario k's compatible entries,
// by enumerating entry groupings and checking each group by permutation.
inline int min_fleet(const DrfspInstance& inst, int k, int type_id) {
  const auto compatible = inst.compatible_entries(type_id, k);
  if (compatible.empty()) return 0;
  detail::FeasibilityMemo memo(inst, k);

  // Feasibility is only decided on complete groupings: with an explicit
  // non-metric matrix a group can become feasible again as entries are added,
  // so partial groups must not be pruned.
  int best = static_cast<int>(compatible.size()) + 1;
  std::vector<std::vector<int>> blocks;
  auto dfs = [&](auto&& self, std::size_t pos) -> void {
    if (static_cast<int>(blocks.size()) >= best) return;
    if (pos == compatible.size()) {
      for (const auto& b : blocks)
        if (!memo.feasible(b)) return;
      best = std::min(best, static_cast<int>(blocks.size()));
      return;
    }
    for (std::size_t i = 0; i < blocks.size(); ++i) {
      blocks[i].push_back(compatible[pos]);
      self(self, pos + 1);
      blocks[i].pop_back();
    }
    blocks.push_back({compatible[pos]});
    self(self, pos + 1);
    blocks.pop_back();
  };
  dfs(dfs, 0);
  if (best > static_cast<int>(compatible.size()))
    throw InfeasibleInstanceError("some compatible entry of scenario " + std::to_string(k) +
                                  " cannot be serviced alone");
  return best;
}

} // namespace drfsp::oracle
