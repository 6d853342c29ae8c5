#include <catch_amalgamated.hpp>

#include <fstream>
#include <set>

#include "drfsp/generator.hpp"
#include "drfsp/solomon.hpp"

using namespace drfsp;

namespace {

std::vector<SolomonCustomer> source_pool() {
  std::ifstream in(std::string(DRFSP_DATA_DIR) + "/RSYN101.txt");
  return parse_solomon(in).customers;
}

} // namespace

TEST_CASE("config files round-trip and reject unknown keys") {
  GenerationConfig cfg;
  cfg.source_instance = "RSYN101";
  cfg.N = 5;
  cfg.T = 2;
  cfg.m = 3;
  cfg.sigma = 2.0;
  cfg.phi = 0.5;
  cfg.compatibility_prob = 0.25;
  cfg.rng_seed = 77;
  cfg.replications = 4;
  std::ostringstream out;
  write_config(out, cfg);
  GenerationConfig again = parse_config(out.str());
  REQUIRE(again.N == 5);
  REQUIRE(again.T == 2);
  REQUIRE(again.m == 3);
  REQUIRE(again.compatibility_prob == 0.25);
  REQUIRE(again.rng_seed == 77);
  REQUIRE_THROWS_AS(parse_config(std::string("bogus_key=1\n")), ParseError);
  REQUIRE_THROWS_AS(parse_config(std::string("no equals sign")), ParseError);
}

TEST_CASE("compatibility probability defaults follow the type count") {
  GenerationConfig cfg;
  cfg.N = 1;
  cfg.T = 2;
  REQUIRE(cfg.effective_compatibility_prob() == 0.10);
  cfg.T = 4;
  REQUIRE(cfg.effective_compatibility_prob() == 0.40);
  cfg.T = 8;
  REQUIRE(cfg.effective_compatibility_prob() == 0.80);
  cfg.compatibility_prob = 0.9;
  REQUIRE(cfg.effective_compatibility_prob() == 0.9);
}

TEST_CASE("forced full compatibility yields every type on the single entry") {
  GenerationConfig cfg;
  cfg.N = 1;
  cfg.T = 3;
  cfg.m = 1;
  cfg.compatibility_prob = 1.0;
  cfg.rng_seed = 5;
  DrfspInstance inst = generate_instance(cfg, source_pool());
  REQUIRE(inst.scenario_count() == 1);
  REQUIRE(inst.scenarios[0].timetable.size() == 1);
  REQUIRE(inst.scenarios[0].timetable[0].compatible_types == std::vector<int>{1, 2, 3});
}

TEST_CASE("generated scenarios have N entries, nonempty types, and no depot") {
  auto pool = source_pool();
  for (std::uint64_t seed : {1ull, 2ull, 3ull, 9ull}) {
    GenerationConfig cfg;
    cfg.N = 7;
    cfg.T = 2;
    cfg.m = 3;
    cfg.rng_seed = seed;
    DrfspInstance inst = generate_instance(cfg, pool);
    REQUIRE(inst.scenario_count() == 3);
    for (const auto& s : inst.scenarios) {
      REQUIRE(s.timetable.size() == 7);
      REQUIRE(s.inflation == 2.0);
      std::set<int> ids;
      for (const auto& e : s.timetable) {
        REQUIRE_FALSE(e.compatible_types.empty());
        REQUIRE(e.customer_id != 0);
        REQUIRE(e.window.e <= e.window.l);
        ids.insert(e.entry_id);
      }
      REQUIRE(ids.size() == 7);
    }
  }
}

TEST_CASE("equal seeds give identical instances, different seeds differ") {
  auto pool = source_pool();
  GenerationConfig cfg;
  cfg.N = 6;
  cfg.T = 2;
  cfg.m = 2;
  cfg.rng_seed = 1234;
  const std::string a = write_instance(generate_instance(cfg, pool));
  const std::string b = write_instance(generate_instance(cfg, pool));
  REQUIRE(a == b);
  cfg.rng_seed = 1235;
  REQUIRE(write_instance(generate_instance(cfg, pool)) != a);
}

TEST_CASE("invalid configurations are rejected") {
  auto pool = source_pool();
  GenerationConfig cfg;
  cfg.N = 0;
  REQUIRE_THROWS_AS(generate_instance(cfg, pool), ConfigError);
  cfg.N = 1;
  cfg.phi = 1.5;
  REQUIRE_THROWS_AS(cfg.validate(), ConfigError);
  cfg.phi = 0.5;
  cfg.sigma = 1.0;
  REQUIRE_THROWS_AS(cfg.validate(), ConfigError);
  cfg.sigma = 2.0;
  std::vector<SolomonCustomer> depot_only = {{0, 35, 35, 0, 0, 230, 0}};
  REQUIRE_THROWS_AS(generate_instance(cfg, depot_only), ConfigError);
}
