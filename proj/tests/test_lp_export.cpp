#include <catch_amalgamated.hpp>

#include <sstream>

#include "drfsp/lp_export.hpp"
#include "support/builders.hpp"

using namespace drfsp;

namespace {

DrfspInstance tiny_instance() {
  std::vector<SolomonCustomer> cs = {fixtures::customer(0, 0, 0), fixtures::customer(1, 3, 4),
                                     fixtures::customer(2, 6, 0)};
  DrfspInstance inst = fixtures::euclidean_instance(
      cs, {{1, 2.0}}, {{{1, 0.0, 100.0, 7.0, {1}}, {2, 0.0, 150.0, 3.0, {1}}}});
  inst.agent_supply = 1;
  return inst;
}

int count_occurrences(const std::string& text, const std::string& needle) {
  int n = 0;
  std::size_t pos = 0;
  while ((pos = text.find(needle, pos)) != std::string::npos) {
    ++n;
    pos += needle.size();
  }
  return n;
}

} // namespace

TEST_CASE("lp export structure matches the model") {
  DrfspInstance inst = tiny_instance();
  const std::string lp = write_lp(inst);

  REQUIRE(lp.find("Minimize\n obj: z") != std::string::npos);
  REQUIRE(lp.find("Subject To") != std::string::npos);
  REQUIRE(lp.find("Bounds") != std::string::npos);
  REQUIRE(lp.find("Binaries") != std::string::npos);
  REQUIRE(lp.rfind("End\n") == lp.size() - 4);

  // Binary variable count: per stage/scenario/type/agent the arcs are
  // 0->j (W), 0->N, i->j (W(W-1)), i->N (W); plus the y purchases.
  const int W = 2, m = 1, T = 1, P = 1;
  const int arcs_per_block = W + 1 + W * (W - 1) + W;
  const int expected_binaries = 2 * m * T * P * arcs_per_block + T * P;
  // every binary is listed once on its own line under Binaries
  const auto binaries_at = lp.find("Binaries");
  const std::string binaries = lp.substr(binaries_at);
  REQUIRE(count_occurrences(binaries, "\n ") == expected_binaries);

  // one min-max row per scenario, with the inflated second-stage coefficient
  REQUIRE(count_occurrences(lp, "c1b_") == m);
  REQUIRE(lp.find("+ 4 x_1_0_1_0_0_0") != std::string::npos); // sigma * c = 2 * 2
  REQUIRE(lp.find("+ 2 y_1_0") != std::string::npos);

  // coverage row for each entry
  REQUIRE(count_occurrences(lp, "c1c_") == 2);
  // compatibility and flow per stage/entry
  REQUIRE(count_occurrences(lp, "c1e_") == 2 * 2);
  REQUIRE(count_occurrences(lp, "c1f_") == 2 * 2);
  // one 1g row per ordered entry pair, stage and agent
  REQUIRE(count_occurrences(lp, "c1g_") == 2 * W * (W - 1));
  // first-stage coupling per entry
  REQUIRE(count_occurrences(lp, "c1j_") == 2);

  // big-M row between entry 0 (service 7) and entry 1, customer distance 5
  const double M = BigMConfig::derive(inst).M;
  std::ostringstream row;
  row << " c1g_0_0_1_0_0_1: + t_0_0_1_0_0 - t_0_0_1_0_1 + " << format_double(M)
      << " x_0_0_1_0_0_1 <= " << format_double(M - 7.0 - 5.0);
  REQUIRE(lp.find(row.str()) != std::string::npos);

  // window bounds on the start variables
  REQUIRE(lp.find(" 0 <= t_0_0_1_0_0 <= 100") != std::string::npos);
  REQUIRE(lp.find(" 0 <= t_1_0_1_0_1 <= 150") != std::string::npos);
}

TEST_CASE("big-M covers the worst chain") {
  DrfspInstance inst = tiny_instance();
  const BigMConfig bigm = BigMConfig::derive(inst);
  // horizon (10000 from the builder) + max service (7) + max distance (d(1,2)=5... depot legs are 5 and 6)
  REQUIRE(bigm.M >= 10000.0);
  REQUIRE(bigm.M == 10000.0 + 7.0 + 6.0);
}
