// Acceptance suite: one check per release criterion, one PASS/FAIL line each.
// Exits nonzero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "drfsp/bench.hpp"
#include "drfsp/exact.hpp"
#include "drfsp/generator.hpp"
#include "drfsp/oracle.hpp"
#include "drfsp/route_generation.hpp"
#include "drfsp/route_sets.hpp"
#include "drfsp/scm.hpp"
#include "drfsp/solomon.hpp"
#include "drfsp/validate.hpp"
#include "support/builders.hpp"
#include "support/example_fixture.hpp"

using namespace drfsp;
using clock_type = std::chrono::steady_clock;

namespace {

double seconds_since(clock_type::time_point t0) {
  return std::chrono::duration<double>(clock_type::now() - t0).count();
}

std::vector<SolomonCustomer> source_pool() {
  std::ifstream in(std::string(DRFSP_DATA_DIR) + "/RSYN101.txt");
  if (!in) throw std::runtime_error("missing data file RSYN101.txt");
  return parse_solomon(in).customers;
}

// 1. The worked insertion calculation reproduces exactly and instantly.
bool criterion_insertion_golden(std::string& detail) {
  DrfspInstance inst = fixtures::example_instance();
  Route route{fixtures::kTypeA, 0, {Visit{0, 100.0}}}; // {0,2,0} with t_2 = 100

  auto t0 = clock_type::now();
  const InsertionEval front = insertion_cost(inst, route, 1, 0, 0.5);
  const InsertionEval back = insertion_cost(inst, route, 1, 1, 0.5);
  const double elapsed = seconds_since(t0);

  const bool ok = !front.feasible && front.violating_entry_id == 2 &&
                  front.violating_start == 883.0 && front.violating_deadline == 193.0 &&
                  back.feasible && std::abs(back.objective - 546.5) <= 1e-9 &&
                  back.new_start == 673.0 && elapsed < 1e-3;
  std::ostringstream s;
  s << "front t'_2=" << front.violating_start << " rejected=" << !front.feasible
    << ", end objective=" << back.objective << ", " << elapsed * 1e6 << " us";
  detail = s.str();
  return ok;
}

// 2. Route sets come out in the reference order with the stated memberships.
bool criterion_route_set_order(std::string& detail) {
  DrfspInstance inst = fixtures::example_instance();
  RoutePool pool = generate_routes(inst, 0.5);

  auto t0 = clock_type::now();
  RouteSetCollection collection = construct_route_sets(pool, inst);
  const double elapsed = seconds_since(t0);

  const auto& sa = collection.sets_by_type.at(fixtures::kTypeA);
  const auto& sb = collection.sets_by_type.at(fixtures::kTypeB);
  const bool ok = sa.size() == 2 && sb.size() == 1 &&
                  sa[0].covered.at(0) == std::vector<int>{2, 8, 4} &&
                  sa[0].covered.at(1) == std::vector<int>{5, 9, 1} &&
                  sa[1].covered.at(0) == std::vector<int>{3} &&
                  sa[1].covered.at(1) == std::vector<int>{5, 9, 1} &&
                  sb[0].covered.at(0) == std::vector<int>{8, 7} &&
                  sb[0].covered.at(1) == std::vector<int>{2, 5, 9, 4} && elapsed < 1e-3;
  std::ostringstream s;
  s << "sets A=" << sa.size() << " B=" << sb.size() << ", " << elapsed * 1e6 << " us";
  detail = s.str();
  return ok;
}

// 3. The exact cover solver equals exhaustive enumeration on 500 random
//    well-posed instances.
bool criterion_drwsc_exactness(std::string& detail) {
  auto t0 = clock_type::now();
  Rng rng(20260810);
  int mismatches = 0;
  const int trials = 500;
  for (int i = 0; i < trials; ++i) {
    DrwscInstance inst = fixtures::random_drwsc(rng, 6, 8, 3);
    DrwscSolution sol = solve_drwsc_exact(inst);
    if (!sol.proved_optimal || sol.objective != oracle::drwsc_optimum(inst) ||
        !check_drwsc_solution(inst, sol).ok())
      ++mismatches;
  }
  const double elapsed = seconds_since(t0);
  std::ostringstream s;
  s << trials << " instances, " << mismatches << " mismatches, " << elapsed << " s";
  detail = s.str();
  return mismatches == 0 && elapsed < 30.0;
}

// 4. The exact baseline equals brute-force enumeration on 100 tiny instances
//    and every plan validates.
bool criterion_exact_oracle_equivalence(std::string& detail) {
  auto t0 = clock_type::now();
  auto pool = source_pool();
  const std::pair<int, int> shapes[] = {{1, 1}, {1, 2}, {2, 1}, {2, 2}, {1, 3}};
  int failures = 0;
  int count = 0;
  for (int i = 0; i < 100; ++i) {
    GenerationConfig cfg;
    cfg.N = shapes[i % 5].first;
    cfg.m = shapes[i % 5].second;
    cfg.T = 1 + (i % 2);
    cfg.rng_seed = 50'000 + i;
    DrfspInstance inst = generate_instance(cfg, pool);
    FleetPlan plan = solve_exact(inst);
    const double oracle_z = oracle::drfsp_optimum(inst);
    if (!plan.proved_optimal || plan.objective != oracle_z || !validate_plan(plan, inst).ok())
      ++failures;
    ++count;
  }
  const double elapsed = seconds_since(t0);
  std::ostringstream s;
  s << count << " instances, " << failures << " failures, " << elapsed << " s";
  detail = s.str();
  return failures == 0 && elapsed < 120.0;
}

// 5. The heuristic handles the largest benchmark settings, fast, and every
//    plan validates.
bool criterion_scale_feasibility(std::string& detail) {
  auto pool = source_pool();
  const std::tuple<int, int, int> settings[] = {
      {10, 3, 2}, {15, 5, 4}, {25, 3, 8}, {25, 5, 8},
  };
  int failures = 0;
  double worst = 0;
  for (auto [N, m, T] : settings) {
    for (std::uint64_t rep = 0; rep < 3; ++rep) {
      GenerationConfig cfg;
      cfg.N = N;
      cfg.m = m;
      cfg.T = T;
      cfg.rng_seed = 70'000 + N * 100 + m * 10 + T + rep;
      DrfspInstance inst = generate_instance(cfg, pool);
      auto t0 = clock_type::now();
      ScmResult result = run_scm(inst, 0.5);
      const double elapsed = seconds_since(t0);
      worst = std::max(worst, elapsed);
      if (!validate_plan(result.plan, inst).ok() || elapsed >= 60.0) ++failures;
    }
  }
  std::ostringstream s;
  s << "12 runs up to N=25 m=5 T=8, worst wall time " << worst << " s, " << failures << " failures";
  detail = s.str();
  return failures == 0;
}

// 6. Desk-scale approximation quality: median heuristic/optimal ratio at most
//    2 and the heuristic never beats a proven optimum.
bool criterion_desk_scale_quality(std::string& detail) {
  auto pool = source_pool();
  BenchLimits limits;
  limits.with_timing = false;
  std::vector<double> ratios;
  int proven = 0;
  int alpha_violations = 0;
  for (int N : {4, 5, 6})
    for (int m : {1, 2})
      for (int T : {1, 2}) {
        GenerationConfig cfg;
        cfg.N = N;
        cfg.m = m;
        cfg.T = T;
        cfg.rng_seed = 90'000 + N * 100 + m * 10 + T;
        cfg.replications = 10;
        ExperimentResult result = run_experiment(cfg, pool, limits);
        for (const auto& rec : result.records) {
          if (!rec.ok || !rec.exact_optimal) continue;
          ++proven;
          ratios.push_back(rec.z_scm / rec.exact_ub);
          if (rec.z_scm / rec.exact_ub < 1.0 - 1e-9) ++alpha_violations;
        }
      }
  if (ratios.empty()) {
    detail = "no instance was proven optimal";
    return false;
  }
  std::sort(ratios.begin(), ratios.end());
  const std::size_t n = ratios.size();
  const double median = n % 2 ? ratios[n / 2] : 0.5 * (ratios[n / 2 - 1] + ratios[n / 2]);
  std::ostringstream s;
  s << proven << "/120 proven optimal, median ratio " << median << ", max "
    << ratios.back() << ", alpha_ub violations " << alpha_violations;
  detail = s.str();
  return median <= 2.0 && alpha_violations == 0 && proven > 0;
}

// 7. The bench pipeline is bit-reproducible for a fixed seed.
bool criterion_determinism(std::string& detail) {
  auto pool = source_pool();
  BenchLimits limits;
  limits.with_timing = false;
  auto render = [&] {
    std::vector<ExperimentRow> rows;
    for (int T : {1, 2}) {
      GenerationConfig cfg;
      cfg.source_instance = "RSYN101";
      cfg.N = 3;
      cfg.m = 2;
      cfg.T = T;
      cfg.rng_seed = 123'456;
      cfg.replications = 3;
      rows.push_back(run_experiment(cfg, pool, limits).row);
    }
    std::ostringstream csv;
    emit_report_csv(csv, rows, limits.with_timing);
    return csv.str();
  };
  const std::string a = render();
  const std::string b = render();
  detail = a == b ? "two runs byte-identical (" + std::to_string(a.size()) + " bytes)"
                  : "runs differ";
  return a == b;
}

// 8. With full compatibility and uniform costs the exact optimum buys the
//    worst scenario's minimum fleet up front.
bool criterion_remark_sanity(std::string& detail) {
  auto pool = source_pool();
  int failures = 0;
  for (int i = 0; i < 20; ++i) {
    GenerationConfig cfg;
    cfg.N = 4;
    cfg.m = 2;
    cfg.T = 1;
    cfg.compatibility_prob = 1.0;
    cfg.rng_seed = 30'000 + i;
    DrfspInstance inst = generate_instance(cfg, pool);
    FleetPlan plan = solve_exact(inst);
    const int fleet = std::max(oracle::min_fleet(inst, 0, 1), oracle::min_fleet(inst, 1, 1));
    if (!plan.proved_optimal || plan.objective != 1.0 * fleet) ++failures;
  }
  std::ostringstream s;
  s << "20 instances, " << failures << " mismatches";
  detail = s.str();
  return failures == 0;
}

} // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<bool(std::string&)> run;
  };
  const Criterion criteria[] = {
      {"golden insertion calculation", criterion_insertion_golden},
      {"route-set construction order", criterion_route_set_order},
      {"cover solver exactness vs enumeration", criterion_drwsc_exactness},
      {"exact baseline vs enumeration + validation", criterion_exact_oracle_equivalence},
      {"heuristic feasibility and speed at scale", criterion_scale_feasibility},
      {"desk-scale approximation quality", criterion_desk_scale_quality},
      {"bit-reproducible bench pipeline", criterion_determinism},
      {"full-compatibility first-stage optimum", criterion_remark_sanity},
  };

  int failures = 0;
  int index = 0;
  for (const auto& c : criteria) {
    ++index;
    std::string detail;
    bool ok = false;
    try {
      ok = c.run(detail);
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    if (!ok) ++failures;
    std::cout << (ok ? "[PASS] " : "[FAIL] ") << index << ". " << c.name
              << (detail.empty() ? "" : " -- " + detail) << "\n";
  }
  return failures == 0 ? 0 : 1;
}
