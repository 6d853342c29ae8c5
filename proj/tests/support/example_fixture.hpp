#pragma once

// Shared two-scenario, two-type fixture with an explicit travel time matrix.
// Scenario 0 needs customers {2,3,4,7,8}, scenario 1 needs {1,2,4,5,9}; the
// matrix is chosen so the insertion heuristic yields the reference routes
//   type A, scenario 0: {0,2,8,4,0} and {0,3,0}
//   type B, scenario 0: {0,8,7,0}
//   type A, scenario 1: {0,5,9,1,0}
//   type B, scenario 1: {0,2,5,9,4,0}
// and the greedy set construction emits S^A_0, S^A_1, S^B_0 in that order.

#include "drfsp/instance.hpp"

namespace fixtures {

constexpr int kTypeA = 1;
constexpr int kTypeB = 2;

inline drfsp::DrfspInstance example_instance(double cost_a = 1.0, double cost_b = 1.0,
                                             double sigma = 2.0) {
  drfsp::DrfspInstance inst;
  inst.name = "example1";
  for (int id = 0; id <= 9; ++id)
    inst.customers.push_back({id, 0.0, 0.0, 0.0, 0.0, 10000.0, 0.0});
  inst.horizon = 10000.0;
  inst.types = {{kTypeA, cost_a}, {kTypeB, cost_b}};

  auto entry = [](int id, double e, double l, std::vector<int> types) {
    return drfsp::TimetableEntry{id, id, {e, l}, 10.0, std::move(types)};
  };
  drfsp::Scenario s0;
  s0.index = 0;
  s0.inflation = sigma;
  s0.timetable = {
      entry(2, 0.0, 193.0, {kTypeA}),
      entry(3, 673.0, 793.0, {kTypeA}),
      entry(4, 152.0, 272.0, {kTypeA}),
      entry(7, 644.0, 764.0, {kTypeB}),
      entry(8, 73.0, 193.0, {kTypeA, kTypeB}),
  };
  drfsp::Scenario s1;
  s1.index = 1;
  s1.inflation = sigma;
  s1.timetable = {
      entry(1, 0.0, 960.0, {kTypeA}),
      entry(2, 73.0, 193.0, {kTypeB}),
      entry(4, 644.0, 764.0, {kTypeB}),
      entry(5, 73.0, 193.0, {kTypeA, kTypeB}),
      entry(9, 371.0, 491.0, {kTypeA, kTypeB}),
  };
  inst.scenarios = {std::move(s0), std::move(s1)};

  // Unlisted pairs get a prohibitive distance.
  for (int a = 0; a <= 9; ++a)
    for (int b = a + 1; b <= 9; ++b) inst.travel.set_explicit_entry(a, b, 10000.0);
  auto d = [&](int a, int b, double v) { inst.travel.set_explicit_entry(a, b, v); };
  d(0, 1, 100);
  d(0, 2, 100);
  d(0, 3, 500);
  d(0, 4, 150);
  d(0, 5, 80);
  d(0, 7, 80);
  d(0, 8, 120);
  d(0, 9, 150);
  d(1, 5, 50);
  d(1, 9, 60);
  d(2, 3, 200);
  d(2, 4, 120);
  d(2, 5, 30);
  d(2, 8, 50);
  d(2, 9, 90);
  d(3, 4, 600);
  d(3, 8, 650);
  d(4, 5, 110);
  d(4, 8, 40);
  d(4, 9, 100);
  d(5, 9, 70);
  d(7, 8, 100);
  inst.validate();
  return inst;
}

// Scenario 0 of the fixture restricted to the 3-customer setup of the worked
// insertion calculation: route {0,2,0} with d(0,2)=100, d(2,3)=200, d(0,3)=500.
inline drfsp::DrfspInstance insertion_example_instance() { return example_instance(); }

} // namespace fixtures
