#pragma once

#include <chrono>
#include <set>
#include <stdexcept>
#include <vector>

#include "drfsp/drwsc.hpp"
#include "drfsp/instance.hpp"
#include "drfsp/plan.hpp"
#include "drfsp/route_generation.hpp"
#include "drfsp/route_sets.hpp"
#include "drfsp/validate.hpp"

namespace drfsp {

struct ScmTiming {
  double generate_routes_s = 0;
  double construct_sets_s = 0;
  double map_s = 0;
  double solve_cover_s = 0;

  double total_s() const { return generate_routes_s + construct_sets_s + map_s + solve_cover_s; }
};

struct ScmResult {
  FleetPlan plan;
  DrwscSolution cover;
  ScmTiming timing;
};

namespace detail {

// Turns purchased route sets into one agent each and realizes its scenario
// routes. Overlapping coverage is deduplicated: agents are walked in a fixed
// order and each keeps only the entries nobody before it serves, so every
// entry is serviced exactly once. Dropping visits keeps a route feasible for
// metric travel times; the repropagation guards the general case.
inline void expand_purchase(const DrfspInstance& inst, const RoutePool& pool,
                            const RouteSetCollection& collection, const DrwscMapping& mapping,
                            int set_id, int stage, int only_scenario, FleetPlan& plan,
                            std::vector<std::set<int>>& assigned) {
  const auto& origin = mapping.origins.at(set_id);
  const auto& set = collection.sets_by_type.at(origin.type_id).at(origin.set_index);

  for (int k = 0; k < inst.scenario_count(); ++k) {
    if (only_scenario >= 0 && k != only_scenario) continue;
    PlanRoute pr;
    pr.scenario = k;
    pr.stage = stage;
    pr.type_id = origin.type_id;
    if (set.member_route[k] >= 0) {
      const Route& member = pool.at(origin.type_id, k)[set.member_route[k]];
      std::vector<int> kept;
      for (const auto& v : member.visits) {
        const int entry_id = inst.scenarios[k].timetable[v.entry_index].entry_id;
        if (!assigned[k].contains(entry_id)) {
          kept.push_back(v.entry_index);
          assigned[k].insert(entry_id);
        }
      }
      const Propagation p = propagate_order(inst, k, kept);
      if (!p.feasible)
        throw std::logic_error("route became infeasible after removing duplicated entries; "
                               "travel times violate the triangle inequality");
      for (std::size_t i = 0; i < kept.size(); ++i)
        pr.visits.push_back(PlanVisit{inst.scenarios[k].timetable[kept[i]].entry_id, p.starts[i]});
    }
    plan.routes.push_back(std::move(pr));
  }
}

} // namespace detail

// The full three-phase pipeline: generate routes per type and scenario,
// bundle them into route sets, solve the demand-robust weighted set cover,
// and expand the purchased sets back into a fleet plan. The returned plan
// always passes the independent validator.
inline ScmResult run_scm(const DrfspInstance& inst, double phi, long long cover_node_limit = 200'000) {
  inst.validate();
  ScmResult result;
  using clock = std::chrono::steady_clock;

  auto t0 = clock::now();
  const RoutePool pool = generate_routes(inst, phi);
  auto t1 = clock::now();
  const RouteSetCollection collection = construct_route_sets(pool, inst);
  auto t2 = clock::now();
  const DrwscMapping mapping = map_to_drwsc(collection, inst);
  auto t3 = clock::now();
  result.cover = solve_drwsc_exact(mapping.instance, cover_node_limit);
  auto t4 = clock::now();

  auto seconds = [](auto a, auto b) { return std::chrono::duration<double>(b - a).count(); };
  result.timing.generate_routes_s = seconds(t0, t1);
  result.timing.construct_sets_s = seconds(t1, t2);
  result.timing.map_s = seconds(t2, t3);
  result.timing.solve_cover_s = seconds(t3, t4);

  FleetPlan& plan = result.plan;
  std::vector<std::set<int>> assigned(inst.scenario_count());
  for (int id : result.cover.first_stage) {
    plan.first_stage[mapping.origins.at(id).type_id]++;
    detail::expand_purchase(inst, pool, collection, mapping, id, 0, -1, plan, assigned);
  }
  for (int k = 0; k < inst.scenario_count(); ++k) {
    for (int id : result.cover.second_stage[k]) {
      plan.second_stage[{k, mapping.origins.at(id).type_id}]++;
      detail::expand_purchase(inst, pool, collection, mapping, id, 1, k, plan, assigned);
    }
  }

  plan.objective = result.cover.objective;
  plan.lower_bound = 0;
  plan.upper_bound = plan.objective;
  plan.proved_optimal = false; // heuristic: optimal only for the mapped cover, not the full problem
  plan.nodes_explored = result.cover.nodes_explored;

  const ValidationReport report = validate_plan(plan, inst);
  if (!report.ok())
    throw std::logic_error("pipeline produced an invalid plan:\n" + report.summary());
  return result;
}

} // namespace drfsp
