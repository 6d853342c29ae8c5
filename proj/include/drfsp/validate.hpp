#pragma once

#include <cmath>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "drfsp/format.hpp"
#include "drfsp/instance.hpp"
#include "drfsp/plan.hpp"

namespace drfsp {

struct Violation {
  std::string family; // constraint family tag, e.g. "compatibility (1e)"
  int scenario = -1;
  int entry_id = -1;
  std::string message;
};

struct ValidationReport {
  std::vector<Violation> violations;
  double recomputed_objective = 0;

  bool ok() const { return violations.empty(); }

  std::string summary() const {
    std::ostringstream out;
    if (ok()) {
      out << "plan valid, objective " << format_double(recomputed_objective) << "\n";
      return out.str();
    }
    for (const auto& v : violations) {
      out << v.family << " scenario=" << v.scenario;
      if (v.entry_id >= 0) out << " entry=" << v.entry_id;
      out << " : " << v.message << "\n";
    }
    return out.str();
  }
};

// Checks a fleet plan against every constraint family of the model without
// going through any solver code: service windows, travel/service time
// consistency along each route, compatibility, exactly-once coverage, purchase
// accounting between stages, the supply cap, and the claimed objective.
inline ValidationReport validate_plan(const FleetPlan& plan, const DrfspInstance& inst) {
  constexpr double tol = 1e-9;
  ValidationReport report;
  auto add = [&](const std::string& family, int k, int entry, const std::string& msg) {
    report.violations.push_back({family, k, entry, msg});
  };

  const int m = inst.scenario_count();
  const int P = inst.supply();

  // visit counts per (scenario, entry id)
  std::vector<std::map<int, int>> visit_count(m);

  for (const auto& r : plan.routes) {
    if (r.scenario < 0 || r.scenario >= m) {
      add("structure", r.scenario, -1, "route references unknown scenario");
      continue;
    }
    const auto& g = inst.scenarios[r.scenario].timetable;
    auto entry_by_id = [&](int id) -> const TimetableEntry* {
      for (const auto& e : g)
        if (e.entry_id == id) return &e;
      return nullptr;
    };
    if (r.stage != 0 && r.stage != 1) add("structure", r.scenario, -1, "route stage must be 0 or 1");

    double departure = 0;
    int prev_customer = 0;
    int prev_entry = -1;
    std::map<int, int> in_route;
    for (const auto& v : r.visits) {
      const TimetableEntry* e = entry_by_id(v.entry_id);
      if (!e) {
        add("structure", r.scenario, v.entry_id, "route visits unknown entry");
        break;
      }
      if (++in_route[v.entry_id] > 1)
        add("flow (1f)", r.scenario, v.entry_id, "entry visited twice by the same route");
      visit_count[r.scenario][v.entry_id]++;
      if (!e->compatible_with(r.type_id))
        add("compatibility (1e)", r.scenario, v.entry_id,
            "entry is not serviceable by type " + std::to_string(r.type_id));
      const double arrival = departure + inst.travel(prev_customer, e->customer_id);
      if (v.start + tol < arrival) {
        std::ostringstream msg;
        msg << "service starts at " << format_double(v.start) << " before arrival "
            << format_double(arrival);
        if (prev_entry >= 0)
          msg << " from entry " << prev_entry;
        else
          msg << " from the depot";
        add("time consistency (1g)", r.scenario, v.entry_id, msg.str());
      }
      if (v.start + tol < e->window.e)
        add("window lower (1h)", r.scenario, v.entry_id,
            "start " + format_double(v.start) + " precedes ready time " + format_double(e->window.e));
      if (v.start > e->window.l + tol)
        add("window upper (1i)", r.scenario, v.entry_id,
            "start " + format_double(v.start) + " exceeds due time " + format_double(e->window.l));
      departure = v.start + e->service_time;
      prev_customer = e->customer_id;
      prev_entry = v.entry_id;
    }
  }

  // Exactly-once coverage per scenario.
  for (int k = 0; k < m; ++k) {
    for (const auto& e : inst.scenarios[k].timetable) {
      auto it = visit_count[k].find(e.entry_id);
      const int n = it == visit_count[k].end() ? 0 : it->second;
      if (n == 0) add("coverage (1c)", k, e.entry_id, "entry is never serviced");
      if (n > 1)
        add("coverage (1c)", k, e.entry_id, "entry serviced " + std::to_string(n) + " times");
    }
  }

  // Purchase accounting. First-stage agents may idle; second-stage purchases
  // exist only through a route that leaves the depot.
  for (int k = 0; k < m; ++k) {
    for (const auto& t : inst.types) {
      int first_routes = 0;
      int second_routes = 0;
      for (const auto& r : plan.routes) {
        if (r.scenario != k || r.type_id != t.id || r.visits.empty()) continue;
        (r.stage == 0 ? first_routes : second_routes)++;
      }
      const int bought_first = plan.first_stage_count(t.id);
      const int bought_second = plan.second_stage_count(k, t.id);
      if (first_routes > bought_first)
        add("stage consistency (1j)", k, -1,
            std::to_string(first_routes) + " first-stage routes of type " + std::to_string(t.id) +
                " but only " + std::to_string(bought_first) + " purchased");
      if (second_routes != bought_second)
        add("purchase accounting (1b)", k, -1,
            std::to_string(second_routes) + " second-stage routes of type " + std::to_string(t.id) +
                " vs " + std::to_string(bought_second) + " declared purchases");
      if (bought_first + bought_second > P)
        add("supply (P)", k, -1,
            "type " + std::to_string(t.id) + " uses " + std::to_string(bought_first + bought_second) +
                " agents, supply is " + std::to_string(P));
    }
  }

  report.recomputed_objective = plan.recompute_objective(inst);
  if (std::abs(report.recomputed_objective - plan.objective) > tol)
    add("objective mismatch", -1, -1,
        "claimed " + format_double(plan.objective) + ", recomputed " +
            format_double(report.recomputed_objective));
  return report;
}

} // namespace drfsp
