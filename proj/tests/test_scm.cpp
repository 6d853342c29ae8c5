#include <catch_amalgamated.hpp>

#include <fstream>

#include "drfsp/exact.hpp"
#include "drfsp/generator.hpp"
#include "drfsp/oracle.hpp"
#include "drfsp/scm.hpp"
#include "drfsp/solomon.hpp"
#include "support/builders.hpp"
#include "support/example_fixture.hpp"

using namespace drfsp;
using fixtures::kTypeA;
using fixtures::kTypeB;

TEST_CASE("pipeline on the reference instance buys 2 A and 1 B up front") {
  DrfspInstance inst = fixtures::example_instance();
  ScmResult result = run_scm(inst, 0.5);
  REQUIRE(result.plan.objective == 3.0);
  REQUIRE(result.plan.first_stage_count(kTypeA) == 2);
  REQUIRE(result.plan.first_stage_count(kTypeB) == 1);
  REQUIRE(result.plan.second_stage.empty());
  REQUIRE(validate_plan(result.plan, inst).ok());
  REQUIRE(result.cover.proved_optimal);
  // SCM lands on the true optimum here
  REQUIRE(result.plan.objective == oracle::drfsp_optimum(inst));
}

TEST_CASE("empty scenarios give an empty plan") {
  std::vector<SolomonCustomer> cs = {fixtures::customer(0, 0, 0), fixtures::customer(1, 3, 4)};
  DrfspInstance inst = fixtures::euclidean_instance(cs, {{1, 1.0}}, {{}, {}});
  ScmResult result = run_scm(inst, 0.5);
  REQUIRE(result.plan.objective == 0.0);
  REQUIRE(result.plan.first_stage.empty());
  REQUIRE(result.plan.routes.empty());
  REQUIRE(validate_plan(result.plan, inst).ok());
}

TEST_CASE("single scenario and type: objective is the route count") {
  std::ifstream in(std::string(DRFSP_DATA_DIR) + "/RSYN101.txt");
  auto customers = parse_solomon(in).customers;
  GenerationConfig cfg;
  cfg.N = 6;
  cfg.m = 1;
  cfg.T = 1;
  cfg.compatibility_prob = 1.0;
  cfg.rng_seed = 31;
  DrfspInstance inst = generate_instance(cfg, customers);
  RoutePool pool = generate_routes(inst, 0.5);
  ScmResult result = run_scm(inst, 0.5);
  REQUIRE(result.plan.objective == 1.0 * pool.at(1, 0).size());
  REQUIRE(result.plan.second_stage.empty());
}

TEST_CASE("every pipeline plan validates and dominates the exact optimum") {
  std::ifstream in(std::string(DRFSP_DATA_DIR) + "/RSYN101.txt");
  auto customers = parse_solomon(in).customers;
  for (std::uint64_t seed : {41ull, 42ull, 43ull, 44ull}) {
    GenerationConfig cfg;
    cfg.N = 4;
    cfg.m = 2;
    cfg.T = 2;
    cfg.rng_seed = seed;
    DrfspInstance inst = generate_instance(cfg, customers);
    ScmResult scm = run_scm(inst, 0.5);
    REQUIRE(validate_plan(scm.plan, inst).ok());

    inst.agent_supply = [&] {
      int p = 1;
      for (const auto& t : inst.types) {
        int worst = 0;
        for (int k = 0; k < inst.scenario_count(); ++k)
          worst = std::max(worst, scm.plan.second_stage_count(k, t.id));
        p = std::max(p, scm.plan.first_stage_count(t.id) + worst);
      }
      return p;
    }();
    FleetPlan exact = solve_exact(inst);
    REQUIRE(exact.proved_optimal);
    REQUIRE(scm.plan.objective >= exact.objective);
  }
}

TEST_CASE("phase timings are populated") {
  DrfspInstance inst = fixtures::example_instance();
  ScmResult result = run_scm(inst, 0.5);
  REQUIRE(result.timing.total_s() >= 0.0);
  REQUIRE(result.timing.total_s() ==
          result.timing.generate_routes_s + result.timing.construct_sets_s + result.timing.map_s +
              result.timing.solve_cover_s);
}

TEST_CASE("plans serialize to json and back") {
  DrfspInstance inst = fixtures::example_instance();
  FleetPlan plan = run_scm(inst, 0.5).plan;
  FleetPlan again = plan_from_json(plan_to_json(plan));
  REQUIRE(again.objective == plan.objective);
  REQUIRE(again.first_stage == plan.first_stage);
  REQUIRE(again.second_stage == plan.second_stage);
  REQUIRE(again.routes.size() == plan.routes.size());
  REQUIRE(validate_plan(again, inst).ok());
}
