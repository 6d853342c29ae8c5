#pragma once

#include <algorithm>
#include <chrono>
#include <limits>
#include <stdexcept>
#include <vector>

#include "drfsp/instance.hpp"
#include "drfsp/plan.hpp"
#include "drfsp/route.hpp"
#include "drfsp/route_generation.hpp"

namespace drfsp {

namespace detail {

// All feasible per-scenario fleet compositions: which per-type route counts
// can service the whole timetable. Only Pareto-minimal count vectors matter
// because the stage split prices them monotonically.
struct FrontierOption {
  std::vector<int> counts;   // by type position
  std::vector<Route> routes; // witness partition with start times
};

struct Frontier {
  bool complete = true;
  std::vector<FrontierOption> options;
};

class ExactSearch {
public:
  ExactSearch(const DrfspInstance& inst, long long node_limit, double time_limit_s)
      : inst_(inst), node_limit_(node_limit), deadline_(std::chrono::steady_clock::now() +
                                                        std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                                                            std::chrono::duration<double>(time_limit_s))) {}

  long long nodes = 0;
  bool aborted = false;

  bool tick() {
    if (++nodes >= node_limit_) aborted = true;
    if ((nodes & 0xff) == 0 && std::chrono::steady_clock::now() >= deadline_) aborted = true;
    return !aborted;
  }

  // Enumerates assignments of scenario k's entries to typed routes by
  // inserting entries, in deadline order, at every position of every open
  // route or into a fresh route. Each ordered partition is reached once.
  // With Euclidean travel an infeasible partial route can never recover, so
  // it is pruned; with an explicit matrix feasibility is only decided on
  // complete assignments.
  Frontier enumerate_scenario(int k, int per_type_cap) {
    const auto& g = inst_.scenarios[k].timetable;
    const int T = inst_.type_count();
    std::vector<int> order(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) order[i] = static_cast<int>(i);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
      if (g[a].window.l != g[b].window.l) return g[a].window.l < g[b].window.l;
      if (g[a].window.e != g[b].window.e) return g[a].window.e < g[b].window.e;
      return g[a].entry_id < g[b].entry_id;
    });

    Frontier frontier;
    const bool prune_partial = !inst_.travel.has_matrix();
    std::vector<std::pair<int, std::vector<int>>> open; // (type position, entry order)
    open.reserve(g.size() + 1);                         // recursion must never reallocate
    std::vector<int> counts(T, 0);

    auto dominated = [&](const std::vector<int>& c) {
      for (const auto& opt : frontier.options) {
        bool le = true;
        for (int t = 0; t < T; ++t)
          if (opt.counts[t] > c[t]) {
            le = false;
            break;
          }
        if (le) return true;
      }
      return false;
    };

    auto dfs = [&](auto&& self, std::size_t pos) -> void {
      if (!tick()) return;
      if (dominated(counts)) return;
      if (pos == order.size()) {
        FrontierOption opt;
        opt.counts = counts;
        for (const auto& [tpos, seq] : open) {
          const Propagation p = propagate_order(inst_, k, seq);
          if (!p.feasible) return; // only reachable without partial pruning
          Route r{inst_.types[tpos].id, k, {}};
          for (std::size_t i = 0; i < seq.size(); ++i) r.visits.push_back(Visit{seq[i], p.starts[i]});
          opt.routes.push_back(std::move(r));
        }
        frontier.options.push_back(std::move(opt));
        return;
      }
      const int entry = order[pos];

      for (std::size_t r = 0; r < open.size(); ++r) {
        if (!g[entry].compatible_with(inst_.types[open[r].first].id)) continue;
        for (std::size_t at = 0; at <= open[r].second.size(); ++at) {
          open[r].second.insert(open[r].second.begin() + at, entry);
          if (!prune_partial || propagate_order(inst_, k, open[r].second).feasible) self(self, pos + 1);
          open[r].second.erase(open[r].second.begin() + at);
          if (aborted) return;
        }
      }
      for (int tpos = 0; tpos < T; ++tpos) {
        if (!g[entry].compatible_with(inst_.types[tpos].id)) continue;
        if (counts[tpos] >= per_type_cap) continue;
        const int single[] = {entry};
        if (prune_partial && !propagate_order(inst_, k, single).feasible) continue;
        open.emplace_back(tpos, std::vector<int>{entry});
        counts[tpos]++;
        self(self, pos + 1);
        counts[tpos]--;
        open.pop_back();
        if (aborted) return;
      }
    };
    dfs(dfs, 0);
    frontier.complete = !aborted;

    // Keep only Pareto-minimal compositions, in a deterministic order.
    std::sort(frontier.options.begin(), frontier.options.end(),
              [](const FrontierOption& a, const FrontierOption& b) { return a.counts < b.counts; });
    std::vector<FrontierOption> minimal;
    for (auto& opt : frontier.options) {
      bool dominated_by_kept = false;
      for (const auto& kept : minimal) {
        bool le = true;
        for (std::size_t t = 0; t < kept.counts.size(); ++t)
          if (kept.counts[t] > opt.counts[t]) {
            le = false;
            break;
          }
        if (le) {
          dominated_by_kept = true;
          break;
        }
      }
      if (!dominated_by_kept) minimal.push_back(std::move(opt));
    }
    frontier.options = std::move(minimal);
    return frontier;
  }

private:
  const DrfspInstance& inst_;
  long long node_limit_;
  std::chrono::steady_clock::time_point deadline_;
};

} // namespace detail

// Exact min-max optimum of the full two-stage model by combinatorial branch
// and bound: per scenario, every assignment of entries to typed agent routes
// is enumerated under time-window propagation; first-stage purchase vectors
// (shared across scenarios) are then searched with incumbent pruning, each
// scenario contributing its cheapest composition given the free first-stage
// slots. Supply caps both the first-stage purchases of a type and the
// second-stage purchases of a type in one scenario. Returns matching bounds
// when the search completes; otherwise the incumbent plus a trivial valid
// lower bound.
inline FleetPlan solve_exact(const DrfspInstance& inst, long long node_limit = 2'000'000,
                             double time_limit_s = 600.0) {
  inst.validate();
  const int T = inst.type_count();
  const int m = inst.scenario_count();
  const int P = inst.supply();

  for (const auto& s : inst.scenarios)
    for (const auto& e : s.timetable)
      if (inst.travel(0, e.customer_id) > e.window.l)
        throw InfeasibleInstanceError("entry " + std::to_string(e.entry_id) + " of scenario " +
                                      std::to_string(s.index) +
                                      " cannot start service by its deadline even alone");

  detail::ExactSearch search(inst, node_limit, time_limit_s);
  std::vector<detail::Frontier> frontiers;
  bool all_complete = true;
  for (int k = 0; k < m; ++k) {
    frontiers.push_back(search.enumerate_scenario(k, 2 * P));
    all_complete = all_complete && frontiers.back().complete;
    if (frontiers.back().options.empty())
      throw std::runtime_error(
          "exact solver found no feasible assignment for scenario " + std::to_string(k) +
          (frontiers.back().complete ? " (supply too small)" : " (node or time limit too small)"));
  }

  std::vector<double> type_cost(T);
  for (int t = 0; t < T; ++t) type_cost[t] = inst.types[t].first_stage_cost;

  std::vector<int> cap(T, 0);
  for (const auto& f : frontiers)
    for (const auto& opt : f.options)
      for (int t = 0; t < T; ++t) cap[t] = std::max(cap[t], opt.counts[t]);
  for (int t = 0; t < T; ++t) cap[t] = std::min(cap[t], P);

  double best_z = std::numeric_limits<double>::infinity();
  std::vector<int> best_n;
  std::vector<int> best_option(m, -1);

  std::vector<int> n(T, 0);
  bool n_loop_done = false;
  while (!n_loop_done) {
    if (!search.tick()) break;
    double purchase = 0;
    for (int t = 0; t < T; ++t) purchase += type_cost[t] * n[t];
    if (purchase < best_z) {
      double z = purchase;
      std::vector<int> option(m, -1);
      bool feasible = true;
      for (int k = 0; k < m && feasible; ++k) {
        double extra_best = std::numeric_limits<double>::infinity();
        for (int o = 0; o < static_cast<int>(frontiers[k].options.size()); ++o) {
          const auto& v = frontiers[k].options[o].counts;
          double extra = 0;
          bool valid = true;
          for (int t = 0; t < T; ++t) {
            const int overflow = std::max(0, v[t] - n[t]);
            if (overflow > P) {
              valid = false;
              break;
            }
            extra += type_cost[t] * overflow;
          }
          if (valid && extra < extra_best) {
            extra_best = extra;
            option[k] = o;
          }
        }
        if (option[k] < 0) {
          feasible = false;
          break;
        }
        z = std::max(z, purchase + inst.scenarios[k].inflation * extra_best);
      }
      if (feasible && z < best_z) {
        best_z = z;
        best_n = n;
        best_option = option;
      }
    }
    // Odometer over the capped purchase box.
    int t = 0;
    while (t < T && ++n[t] > cap[t]) n[t++] = 0;
    if (t == T) n_loop_done = true;
  }

  if (best_n.empty())
    throw std::runtime_error("exact solver exhausted its limits before finding any plan");

  FleetPlan plan;
  for (int t = 0; t < T; ++t)
    if (best_n[t] > 0) plan.first_stage[inst.types[t].id] = best_n[t];
  for (int k = 0; k < m; ++k) {
    const auto& opt = frontiers[k].options[best_option[k]];
    std::vector<int> first_used(T, 0);
    for (const auto& r : opt.routes) {
      int tpos = 0;
      while (inst.types[tpos].id != r.type_id) ++tpos;
      PlanRoute pr;
      pr.scenario = k;
      pr.type_id = r.type_id;
      if (first_used[tpos] < best_n[tpos]) {
        pr.stage = 0;
        first_used[tpos]++;
      } else {
        pr.stage = 1;
        plan.second_stage[{k, r.type_id}]++;
      }
      for (std::size_t i = 0; i < r.visits.size(); ++i)
        pr.visits.push_back(PlanVisit{r.entry_at(inst, static_cast<int>(i)).entry_id, r.visits[i].start});
      plan.routes.push_back(std::move(pr));
    }
  }

  plan.objective = plan.recompute_objective(inst);
  plan.nodes_explored = search.nodes;
  plan.proved_optimal = all_complete && n_loop_done;
  plan.upper_bound = plan.objective;
  if (plan.proved_optimal) {
    plan.lower_bound = plan.objective;
  } else {
    // Trivial but valid: some agent must service the hardest entry of the
    // worst scenario, and no purchase is cheaper than the cheapest compatible
    // type's first-stage price.
    double lb = 0;
    for (const auto& s : inst.scenarios)
      for (const auto& e : s.timetable) {
        double cheapest = std::numeric_limits<double>::infinity();
        for (int t : e.compatible_types) cheapest = std::min(cheapest, inst.type_by_id(t).first_stage_cost);
        lb = std::max(lb, cheapest);
      }
    plan.lower_bound = lb;
  }
  return plan;
}

} // namespace drfsp
