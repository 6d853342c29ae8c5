#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "drfsp/instance.hpp"
#include "drfsp/route.hpp"

namespace drfsp {

class InfeasibleInstanceError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// The S^t_k collections: all routes generated for agent type t in scenario k.
struct RoutePool {
  std::map<std::pair<int, int>, std::vector<Route>> routes; // keyed by (type, scenario)

  const std::vector<Route>& at(int type_id, int k) const {
    auto it = routes.find({type_id, k});
    if (it == routes.end())
      throw std::logic_error("route pool has no collection for type " + std::to_string(type_id) +
                             ", scenario " + std::to_string(k));
    return it->second;
  }
};

struct InsertionEval {
  bool feasible = false;
  double objective = 0; // (1-phi) * delay of the next visit + phi * slack of the inserted entry
  double new_start = 0; // service start of the inserted entry
  // On a missed deadline: which stop broke, when service would start there,
  // and the deadline it missed. violating_entry_id is the timetable entry id.
  int violating_entry_id = -1;
  double violating_start = 0;
  double violating_deadline = 0;
  bool incompatible = false;
};

// Evaluates inserting `entry_index` before the visit currently at `position`
// (position == route length means before the depot return). The inserted
// entry starts at max(arrival, e_i); the insertion is feasible only if it and
// every downstream visit still meet their deadlines after the shift. The
// objective weighs the delay of the visit right after the insertion point
// (the depot return when appending) against the urgency of the new entry.
inline InsertionEval insertion_cost(const DrfspInstance& inst, const Route& route, int entry_index,
                                    int position, double phi) {
  const auto& g = inst.scenarios.at(route.scenario).timetable;
  const auto& entry = g.at(entry_index);
  InsertionEval eval;
  if (!entry.compatible_with(route.type_id)) {
    eval.incompatible = true;
    return eval;
  }
  const int len = static_cast<int>(route.visits.size());
  if (position < 0 || position > len) throw std::out_of_range("insertion position out of range");

  std::vector<int> order;
  order.reserve(route.visits.size() + 1);
  for (int i = 0; i < position; ++i) order.push_back(route.visits[i].entry_index);
  order.push_back(entry_index);
  for (int i = position; i < len; ++i) order.push_back(route.visits[i].entry_index);

  const Propagation p = propagate_order(inst, route.scenario, order);
  if (!p.feasible) {
    const auto& bad = g.at(order[p.violation_pos]);
    eval.violating_entry_id = bad.entry_id;
    eval.violating_start = p.starts[p.violation_pos];
    eval.violating_deadline = bad.window.l;
    return eval;
  }

  eval.feasible = true;
  eval.new_start = p.starts[position];
  const double next_before = position < len ? route.visits[position].start : depot_return_time(inst, route);
  const double next_after = position < len ? p.starts[position + 1] : p.depot_return;
  eval.objective = (1.0 - phi) * (next_after - next_before) + phi * (entry.window.l - eval.new_start);
  return eval;
}

namespace detail {

// Seed choice: the unrouted compatible entry with the smallest deadline,
// entry id breaking ties.
inline int pick_seed(const std::vector<TimetableEntry>& g, const std::vector<int>& unrouted) {
  int best = -1;
  for (int idx : unrouted) {
    if (best < 0 || g[idx].window.l < g[best].window.l ||
        (g[idx].window.l == g[best].window.l && g[idx].entry_id < g[best].entry_id))
      best = idx;
  }
  return best;
}

} // namespace detail

// Insertion heuristic for the per-type per-scenario fleet size problem:
// seed a route with the min-deadline entry, then repeatedly make the best
// feasible insertion over all remaining compatible entries and all positions
// until nothing fits, opening new routes until every compatible entry is
// routed. Ties go to the smaller entry id, then the earlier position.
inline std::vector<Route> generate_routes_for(const DrfspInstance& inst, int type_id, int k, double phi) {
  const auto& g = inst.scenarios.at(k).timetable;
  std::vector<int> unrouted = inst.compatible_entries(type_id, k);
  // Candidates are scanned in ascending entry id so strict-< objective
  // comparison realizes the documented tie-break.
  std::sort(unrouted.begin(), unrouted.end(),
            [&](int a, int b) { return g[a].entry_id < g[b].entry_id; });
  std::vector<Route> out;

  while (!unrouted.empty()) {
    const int seed = detail::pick_seed(g, unrouted);
    const int seed_order[] = {seed};
    const Propagation sp = propagate_order(inst, k, seed_order);
    if (!sp.feasible)
      throw InfeasibleInstanceError(
          "entry " + std::to_string(g[seed].entry_id) + " of scenario " + std::to_string(k) +
          " cannot start service by its deadline even alone (depot travel " +
          format_double(inst.travel(0, g[seed].customer_id)) + " > latest start " +
          format_double(g[seed].window.l) + ")");
    Route route{type_id, k, {Visit{seed, sp.starts[0]}}};
    std::erase(unrouted, seed);

    bool inserted = true;
    while (inserted && !unrouted.empty()) {
      inserted = false;
      int best_entry = -1;
      int best_pos = -1;
      InsertionEval best;
      for (int idx : unrouted) {
        for (int pos = 0; pos <= static_cast<int>(route.visits.size()); ++pos) {
          const InsertionEval eval = insertion_cost(inst, route, idx, pos, phi);
          if (!eval.feasible) continue;
          if (best_entry < 0 || eval.objective < best.objective) {
            best = eval;
            best_entry = idx;
            best_pos = pos;
          }
        }
      }
      if (best_entry >= 0) {
        std::vector<int> order;
        for (const auto& v : route.visits) order.push_back(v.entry_index);
        order.insert(order.begin() + best_pos, best_entry);
        const Propagation p = propagate_order(inst, k, order);
        route.visits.clear();
        for (std::size_t i = 0; i < order.size(); ++i) route.visits.push_back(Visit{order[i], p.starts[i]});
        std::erase(unrouted, best_entry);
        inserted = true;
      }
    }
    out.push_back(std::move(route));
  }
  return out;
}

inline RoutePool generate_routes(const DrfspInstance& inst, double phi) {
  RoutePool pool;
  for (const auto& t : inst.types)
    for (const auto& s : inst.scenarios)
      pool.routes[{t.id, s.index}] = generate_routes_for(inst, t.id, s.index, phi);
  return pool;
}

} // namespace drfsp
