#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "drfsp/instance.hpp"

namespace drfsp {

struct PlanVisit {
  int entry_id = 0;
  double start = 0;
};

struct PlanRoute {
  int scenario = 0;
  int stage = 0; // 0 = first-stage agent, 1 = second-stage agent
  int type_id = 0;
  std::vector<PlanVisit> visits; // empty means the agent idles in this scenario
};

// Final DRFSP answer: purchases per stage plus the realized routes, with the
// min-max objective and the solver's bound information.
struct FleetPlan {
  std::map<int, int> first_stage;                  // type -> count purchased up front
  std::map<std::pair<int, int>, int> second_stage; // (scenario, type) -> count
  std::vector<PlanRoute> routes;
  double objective = 0;
  double lower_bound = 0;
  double upper_bound = 0;
  bool proved_optimal = false;
  long long nodes_explored = 0;

  int first_stage_count(int type_id) const {
    auto it = first_stage.find(type_id);
    return it == first_stage.end() ? 0 : it->second;
  }

  int second_stage_count(int k, int type_id) const {
    auto it = second_stage.find({k, type_id});
    return it == second_stage.end() ? 0 : it->second;
  }

  double scenario_cost(const DrfspInstance& inst, int k) const {
    double cost = 0;
    for (const auto& [t, n] : first_stage) cost += inst.type_by_id(t).first_stage_cost * n;
    for (const auto& [key, n] : second_stage)
      if (key.first == k)
        cost += inst.scenarios.at(k).inflation * inst.type_by_id(key.second).first_stage_cost * n;
    return cost;
  }

  double recompute_objective(const DrfspInstance& inst) const {
    double z = 0;
    for (int k = 0; k < inst.scenario_count(); ++k) z = std::max(z, scenario_cost(inst, k));
    return z;
  }
};

inline nlohmann::json plan_to_json(const FleetPlan& plan) {
  nlohmann::json j;
  j["objective"] = plan.objective;
  j["lower_bound"] = plan.lower_bound;
  j["upper_bound"] = plan.upper_bound;
  j["proved_optimal"] = plan.proved_optimal;
  j["nodes_explored"] = plan.nodes_explored;
  j["first_stage"] = nlohmann::json::array();
  for (const auto& [t, n] : plan.first_stage) j["first_stage"].push_back({{"type", t}, {"count", n}});
  j["second_stage"] = nlohmann::json::array();
  for (const auto& [key, n] : plan.second_stage)
    j["second_stage"].push_back({{"scenario", key.first}, {"type", key.second}, {"count", n}});
  j["routes"] = nlohmann::json::array();
  for (const auto& r : plan.routes) {
    nlohmann::json jr;
    jr["scenario"] = r.scenario;
    jr["stage"] = r.stage;
    jr["type"] = r.type_id;
    jr["visits"] = nlohmann::json::array();
    for (const auto& v : r.visits) jr["visits"].push_back({{"entry", v.entry_id}, {"start", v.start}});
    j["routes"].push_back(std::move(jr));
  }
  return j;
}

inline FleetPlan plan_from_json(const nlohmann::json& j) {
  FleetPlan plan;
  plan.objective = j.at("objective").get<double>();
  plan.lower_bound = j.value("lower_bound", 0.0);
  plan.upper_bound = j.value("upper_bound", 0.0);
  plan.proved_optimal = j.value("proved_optimal", false);
  plan.nodes_explored = j.value("nodes_explored", 0LL);
  for (const auto& e : j.at("first_stage"))
    plan.first_stage[e.at("type").get<int>()] = e.at("count").get<int>();
  for (const auto& e : j.at("second_stage"))
    plan.second_stage[{e.at("scenario").get<int>(), e.at("type").get<int>()}] = e.at("count").get<int>();
  for (const auto& jr : j.at("routes")) {
    PlanRoute r;
    r.scenario = jr.at("scenario").get<int>();
    r.stage = jr.at("stage").get<int>();
    r.type_id = jr.at("type").get<int>();
    for (const auto& v : jr.at("visits"))
      r.visits.push_back({v.at("entry").get<int>(), v.at("start").get<double>()});
    plan.routes.push_back(std::move(r));
  }
  return plan;
}

} // namespace drfsp
