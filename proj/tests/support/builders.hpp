#pragma once

// Small helpers for constructing instances and random cover problems in
// tests. Costs stay on a dyadic grid so objective comparisons are exact.

#include <vector>

#include "drfsp/drwsc.hpp"
#include "drfsp/instance.hpp"
#include "drfsp/rng.hpp"

namespace fixtures {

struct EntrySpec {
  int customer_id;
  double e;
  double l;
  double s;
  std::vector<int> types;
};

// One-scenario-per-list Euclidean instance; entry ids are assigned in order.
inline drfsp::DrfspInstance euclidean_instance(const std::vector<drfsp::SolomonCustomer>& customers,
                                               const std::vector<drfsp::AgentType>& types,
                                               const std::vector<std::vector<EntrySpec>>& scenarios,
                                               double sigma = 2.0) {
  drfsp::DrfspInstance inst;
  inst.customers = customers;
  inst.types = types;
  inst.travel = drfsp::TravelTime::euclidean(customers);
  for (const auto& c : customers)
    if (c.id == 0) inst.horizon = c.due_date;
  for (int k = 0; k < static_cast<int>(scenarios.size()); ++k) {
    drfsp::Scenario sc;
    sc.index = k;
    sc.inflation = sigma;
    int next_id = 0;
    for (const auto& e : scenarios[k])
      sc.timetable.push_back({next_id++, e.customer_id, {e.e, e.l}, e.s, e.types});
    inst.scenarios.push_back(std::move(sc));
  }
  inst.validate();
  return inst;
}

inline drfsp::SolomonCustomer customer(int id, double x, double y, double e = 0,
                                       double l = 10000, double s = 0) {
  return {id, x, y, 0.0, e, l, s};
}

// Random well-posed DRWSC instance: few sets, few elements, up to three
// scenarios, inflations in {1.5, 2, 3}, costs in {0.5, 1, ..., 4}.
inline drfsp::DrwscInstance random_drwsc(drfsp::Rng& rng, int max_sets = 6, int max_elements = 8,
                                         int max_scenarios = 3) {
  drfsp::DrwscInstance inst;
  const int m = 1 + static_cast<int>(rng.below(max_scenarios));
  inst.universe_size = 1 + static_cast<int>(rng.below(max_elements));
  const int n = 1 + static_cast<int>(rng.below(max_sets));
  const double sigmas[] = {1.5, 2.0, 3.0};
  inst.scenario_elements.resize(m);
  for (int k = 0; k < m; ++k) inst.inflations.push_back(sigmas[rng.below(3)]);

  for (int e = 0; e < inst.universe_size; ++e) {
    bool placed = false;
    while (!placed)
      for (int k = 0; k < m; ++k)
        if (rng.bernoulli(0.6)) {
          inst.scenario_elements[k].push_back(e);
          placed = true;
        }
  }

  for (int s = 0; s < n; ++s) {
    drfsp::DrwscSet set;
    set.set_id = s;
    set.cost = 0.5 * (1 + static_cast<int>(rng.below(8)));
    set.elements_by_scenario.resize(m);
    for (int k = 0; k < m; ++k)
      for (int e : inst.scenario_elements[k])
        if (rng.bernoulli(0.4)) set.elements_by_scenario[k].push_back(e);
    inst.sets.push_back(std::move(set));
  }

  // Patch well-posedness: any uncoverable element joins a random set.
  for (int k = 0; k < m; ++k) {
    for (int e : inst.scenario_elements[k]) {
      bool coverable = false;
      for (const auto& s : inst.sets) {
        const auto& els = s.elements_by_scenario[k];
        if (std::find(els.begin(), els.end(), e) != els.end()) {
          coverable = true;
          break;
        }
      }
      if (!coverable) inst.sets[rng.below(n)].elements_by_scenario[k].push_back(e);
    }
  }
  inst.validate_well_posed();
  return inst;
}

} // namespace fixtures
