// Command-line front end: generate instances, run the heuristic and the
// exact baseline, validate plans, reproduce benchmark tables, and query the
// enumeration oracle. Exit codes: 0 success, 1 infeasibility or validation
// failure, 2 usage error.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "drfsp/bench.hpp"
#include "drfsp/exact.hpp"
#include "drfsp/generator.hpp"
#include "drfsp/lp_export.hpp"
#include "drfsp/oracle.hpp"
#include "drfsp/scm.hpp"
#include "drfsp/solomon.hpp"
#include "drfsp/validate.hpp"

namespace fs = std::filesystem;

namespace {

drfsp::SolomonData load_solomon(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open Solomon file " + path);
  return drfsp::parse_solomon(in);
}

drfsp::DrfspInstance load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open instance file " + path);
  return drfsp::parse_instance(in);
}

drfsp::GenerationConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file " + path);
  return drfsp::parse_config(in);
}

drfsp::FleetPlan load_plan(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open plan file " + path);
  nlohmann::json j;
  in >> j;
  return drfsp::plan_from_json(j);
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << content;
}

std::vector<int> parse_int_list(const std::string& csv) {
  std::vector<int> out;
  std::size_t pos = 0;
  while (pos < csv.size()) {
    auto comma = csv.find(',', pos);
    if (comma == std::string::npos) comma = csv.size();
    out.push_back(std::stoi(csv.substr(pos, comma - pos)));
    pos = comma + 1;
  }
  return out;
}

nlohmann::json phase_event(const char* name, double seconds) {
  return {{"event", "phase"}, {"name", name}, {"seconds", seconds}};
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Demand-robust fleet sizing: set-cover-mapping heuristic, exact baseline, benchmarks"};
  app.require_subcommand(1);

  // ---- generate ----
  auto* gen = app.add_subcommand("generate", "Generate instance files from a config");
  std::string gen_config, gen_solomon, gen_out = ".";
  std::optional<std::uint64_t> gen_seed;
  std::optional<double> gen_sigma, gen_phi;
  gen->add_option("--config", gen_config, "key=value generation config")->required();
  gen->add_option("--solomon", gen_solomon, "Solomon benchmark source file")->required();
  gen->add_option("--out", gen_out, "output directory")->envname("DRFSP_OUT");
  gen->add_option("--seed", gen_seed, "override rng_seed")->envname("DRFSP_SEED");
  gen->add_option("--sigma", gen_sigma, "override sigma");
  gen->add_option("--phi", gen_phi, "override phi");

  // ---- solve-scm ----
  auto* scm = app.add_subcommand("solve-scm", "Run the 3-phase heuristic on an instance file");
  std::string scm_instance, scm_out;
  double scm_phi = 0.5;
  long long scm_nodes = 200'000;
  scm->add_option("--instance", scm_instance, "instance file")->required();
  scm->add_option("--out", scm_out, "plan JSON output path")->required();
  scm->add_option("--phi", scm_phi, "insertion objective weight")->envname("DRFSP_PHI");
  scm->add_option("--node-limit", scm_nodes, "cover solve node limit")->envname("DRFSP_NODE_LIMIT");

  // ---- solve-exact ----
  auto* exact = app.add_subcommand("solve-exact", "Run the exact baseline on an instance file");
  std::string exact_instance, exact_out, exact_lp;
  long long exact_nodes = 50'000'000;
  double exact_time = 600.0;
  std::optional<int> exact_supply;
  exact->add_option("--instance", exact_instance, "instance file")->required();
  exact->add_option("--out", exact_out, "plan JSON output path")->required();
  exact->add_option("--node-limit", exact_nodes, "search node limit")->envname("DRFSP_NODE_LIMIT");
  exact->add_option("--time-limit", exact_time, "wall time limit in seconds")->envname("DRFSP_TIME_LIMIT");
  exact->add_option("--supply", exact_supply, "override the agent supply P");
  exact->add_option("--export-lp", exact_lp, "also write the MILP in LP format to this path");

  // ---- validate ----
  auto* val = app.add_subcommand("validate", "Check a plan against an instance");
  std::string val_instance, val_plan;
  val->add_option("--instance", val_instance, "instance file")->required();
  val->add_option("--plan", val_plan, "plan JSON file")->required();

  // ---- bench ----
  auto* bench = app.add_subcommand("bench", "Run the replicated benchmark protocol");
  std::string bench_config, bench_solomon, bench_out, bench_records;
  std::string bench_N, bench_m, bench_T;
  std::optional<std::uint64_t> bench_seed;
  drfsp::BenchLimits limits;
  bool no_timing = false;
  bench->add_option("--config", bench_config, "base key=value config")->required();
  bench->add_option("--solomon", bench_solomon, "Solomon benchmark source file")->required();
  bench->add_option("--out", bench_out, "CSV report path")->required()->envname("DRFSP_OUT");
  bench->add_option("--records", bench_records, "raw per-replication JSONL path");
  bench->add_option("--N", bench_N, "comma list of N values (default: config)");
  bench->add_option("--m", bench_m, "comma list of m values (default: config)");
  bench->add_option("--T", bench_T, "comma list of T values (default: config)");
  bench->add_option("--seed", bench_seed, "override rng_seed")->envname("DRFSP_SEED");
  bench->add_option("--time-limit", limits.exact_time_limit_s, "exact baseline time limit (s)")
      ->envname("DRFSP_TIME_LIMIT");
  bench->add_option("--node-limit", limits.exact_node_limit, "exact baseline node limit")
      ->envname("DRFSP_NODE_LIMIT");
  bench->add_option("--scm-node-limit", limits.scm_node_limit, "cover solve node limit");
  bench->add_option("--jobs", limits.jobs, "parallel replications")->envname("DRFSP_JOBS");
  bench->add_flag("--no-timing", no_timing,
                  "blank timing columns and limit by nodes only, for bit-reproducible output");

  // ---- oracle ----
  auto* ora = app.add_subcommand("oracle", "Brute-force optimum of a tiny instance");
  std::string ora_instance;
  ora->add_option("--instance", ora_instance, "instance file")->required();

  // ---- export-lp ----
  auto* lp = app.add_subcommand("export-lp", "Write the MILP in LP interchange format");
  std::string lp_instance, lp_out;
  lp->add_option("--instance", lp_instance, "instance file")->required();
  lp->add_option("--out", lp_out, "LP output path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*gen) {
      drfsp::GenerationConfig cfg = load_config(gen_config);
      if (gen_seed) cfg.rng_seed = *gen_seed;
      if (gen_sigma) cfg.sigma = *gen_sigma;
      if (gen_phi) cfg.phi = *gen_phi;
      cfg.validate();
      const auto customers = load_solomon(gen_solomon).customers;
      fs::create_directories(gen_out);
      for (int rep = 0; rep < cfg.replications; ++rep) {
        drfsp::GenerationConfig rep_cfg = cfg;
        rep_cfg.rng_seed = cfg.rng_seed + static_cast<std::uint64_t>(rep);
        drfsp::DrfspInstance inst = drfsp::generate_instance(rep_cfg, customers);
        std::ostringstream name;
        name << cfg.source_instance << "_N" << cfg.N << "_T" << cfg.T << "_m" << cfg.m << "_seed"
             << rep_cfg.rng_seed << ".txt";
        const fs::path path = fs::path(gen_out) / name.str();
        write_text_file(path.string(), drfsp::write_instance(inst));
        std::cout << nlohmann::json{{"event", "generated"}, {"file", path.string()}}.dump() << "\n";
      }
      return 0;
    }

    if (*scm) {
      drfsp::DrfspInstance inst = load_instance(scm_instance);
      drfsp::ScmResult result = drfsp::run_scm(inst, scm_phi, scm_nodes);
      std::cout << phase_event("generate_routes", result.timing.generate_routes_s).dump() << "\n";
      std::cout << phase_event("construct_route_sets", result.timing.construct_sets_s).dump() << "\n";
      std::cout << phase_event("map_to_drwsc", result.timing.map_s).dump() << "\n";
      std::cout << phase_event("solve_drwsc", result.timing.solve_cover_s).dump() << "\n";
      std::cout << nlohmann::json{{"event", "result"},
                                  {"z", result.plan.objective},
                                  {"cover_proved_optimal", result.cover.proved_optimal},
                                  {"nodes", result.plan.nodes_explored},
                                  {"seconds", result.timing.total_s()}}
                       .dump()
                << "\n";
      write_text_file(scm_out, drfsp::plan_to_json(result.plan).dump(2) + "\n");
      return 0;
    }

    if (*exact) {
      drfsp::DrfspInstance inst = load_instance(exact_instance);
      if (exact_supply) inst.agent_supply = *exact_supply;
      if (!exact_lp.empty()) {
        std::ofstream out(exact_lp);
        drfsp::write_lp(out, inst);
      }
      auto t0 = std::chrono::steady_clock::now();
      drfsp::FleetPlan plan = drfsp::solve_exact(inst, exact_nodes, exact_time);
      const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      std::cout << nlohmann::json{{"event", "result"},
                                  {"z", plan.objective},
                                  {"lower_bound", plan.lower_bound},
                                  {"upper_bound", plan.upper_bound},
                                  {"proved_optimal", plan.proved_optimal},
                                  {"nodes", plan.nodes_explored},
                                  {"seconds", secs}}
                       .dump()
                << "\n";
      write_text_file(exact_out, drfsp::plan_to_json(plan).dump(2) + "\n");
      return 0;
    }

    if (*val) {
      drfsp::DrfspInstance inst = load_instance(val_instance);
      drfsp::FleetPlan plan = load_plan(val_plan);
      drfsp::ValidationReport report = drfsp::validate_plan(plan, inst);
      std::cout << report.summary();
      return report.ok() ? 0 : 1;
    }

    if (*bench) {
      drfsp::GenerationConfig base = load_config(bench_config);
      if (bench_seed) base.rng_seed = *bench_seed;
      limits.with_timing = !no_timing;
      const auto customers = load_solomon(bench_solomon).customers;
      const std::vector<int> Ns = bench_N.empty() ? std::vector<int>{base.N} : parse_int_list(bench_N);
      const std::vector<int> ms = bench_m.empty() ? std::vector<int>{base.m} : parse_int_list(bench_m);
      const std::vector<int> Ts = bench_T.empty() ? std::vector<int>{base.T} : parse_int_list(bench_T);

      std::vector<drfsp::ExperimentRow> rows;
      std::ofstream records;
      if (!bench_records.empty()) {
        records.open(bench_records);
        if (!records) throw std::runtime_error("cannot write " + bench_records);
      }
      for (int T : Ts)
        for (int N : Ns)
          for (int m : ms) {
            drfsp::GenerationConfig cfg = base;
            cfg.N = N;
            cfg.m = m;
            cfg.T = T;
            drfsp::ExperimentResult result = drfsp::run_experiment(cfg, customers, limits);
            rows.push_back(result.row);
            if (records.is_open()) drfsp::write_records_jsonl(records, result.records);
          }
      std::ostringstream csv;
      drfsp::emit_report_csv(csv, rows, limits.with_timing);
      write_text_file(bench_out, csv.str());
      std::cout << drfsp::emit_report_table(rows, limits.with_timing);
      return 0;
    }

    if (*ora) {
      drfsp::DrfspInstance inst = load_instance(ora_instance);
      const double z = drfsp::oracle::drfsp_optimum(inst);
      nlohmann::json fleets = nlohmann::json::array();
      for (const auto& t : inst.types)
        for (const auto& s : inst.scenarios)
          fleets.push_back({{"type", t.id},
                            {"scenario", s.index},
                            {"min_fleet", drfsp::oracle::min_fleet(inst, s.index, t.id)}});
      std::cout << nlohmann::json{{"event", "oracle"}, {"z_optimum", z}, {"min_fleets", fleets}}.dump()
                << "\n";
      return 0;
    }

    if (*lp) {
      drfsp::DrfspInstance inst = load_instance(lp_instance);
      std::ofstream out(lp_out);
      if (!out) throw std::runtime_error("cannot write " + lp_out);
      drfsp::write_lp(out, inst);
      return 0;
    }
  } catch (const drfsp::InfeasibleInstanceError& e) {
    std::cerr << "infeasible: " << e.what() << "\n";
    return 1;
  } catch (const drfsp::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const drfsp::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
