#pragma once

#include <cmath>
#include <cstdint>
#include <future>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "drfsp/exact.hpp"
#include "drfsp/format.hpp"
#include "drfsp/generator.hpp"
#include "drfsp/instance.hpp"
#include "drfsp/scm.hpp"
#include "drfsp/validate.hpp"

namespace drfsp {

struct BenchLimits {
  double exact_time_limit_s = 600.0; // mirrors the 10-minute baseline budget
  long long exact_node_limit = 50'000'000;
  long long scm_node_limit = 200'000;
  int jobs = 1;
  // false: timing columns are left blank and the exact solver is limited by
  // nodes only, so the whole pipeline is bit-reproducible.
  bool with_timing = true;
};

struct ReplicationRecord {
  int rep = 0;
  std::uint64_t seed = 0;
  bool ok = false;
  std::string error;
  double z_scm = 0;
  double t_scm = 0;
  long long scm_nodes = 0;
  double exact_lb = 0;
  double exact_ub = 0;
  double t_exact = 0;
  bool exact_optimal = false;
  long long exact_nodes = 0;
  int supply = 0;
};

inline nlohmann::json record_to_json(const ReplicationRecord& r) {
  return nlohmann::json{{"rep", r.rep},
                        {"seed", r.seed},
                        {"ok", r.ok},
                        {"error", r.error},
                        {"z_scm", r.z_scm},
                        {"t_scm", r.t_scm},
                        {"scm_nodes", r.scm_nodes},
                        {"exact_lb", r.exact_lb},
                        {"exact_ub", r.exact_ub},
                        {"t_exact", r.t_exact},
                        {"exact_optimal", r.exact_optimal},
                        {"exact_nodes", r.exact_nodes},
                        {"supply", r.supply}};
}

inline ReplicationRecord record_from_json(const nlohmann::json& j) {
  ReplicationRecord r;
  r.rep = j.at("rep").get<int>();
  r.seed = j.at("seed").get<std::uint64_t>();
  r.ok = j.at("ok").get<bool>();
  r.error = j.at("error").get<std::string>();
  r.z_scm = j.at("z_scm").get<double>();
  r.t_scm = j.at("t_scm").get<double>();
  r.scm_nodes = j.at("scm_nodes").get<long long>();
  r.exact_lb = j.at("exact_lb").get<double>();
  r.exact_ub = j.at("exact_ub").get<double>();
  r.t_exact = j.at("t_exact").get<double>();
  r.exact_optimal = j.at("exact_optimal").get<bool>();
  r.exact_nodes = j.at("exact_nodes").get<long long>();
  r.supply = j.at("supply").get<int>();
  return r;
}

// One aggregated line of the benchmark report. Aggregates are missing
// exactly when every replication was excluded (baseline timed out or
// reported a trivial lower bound).
struct ExperimentRow {
  std::string instance;
  int N = 0;
  int m = 0;
  int T = 0;
  std::uint64_t seed = 0;
  int replications = 0;
  int timeouts = 0; // TO column
  int lb_zero = 0;
  std::optional<double> time_pct;
  std::optional<double> time_pct_std;
  std::optional<double> alpha_lb;
  std::optional<double> alpha_ub;
  std::optional<double> sigma_alpha_lb;
  std::optional<double> sigma_alpha_ub;
  std::optional<double> t_scm_mean;
};

struct ExperimentResult {
  ExperimentRow row;
  std::vector<ReplicationRecord> records;
};

namespace detail {

inline std::pair<double, double> mean_std(const std::vector<double>& xs) {
  const double n = static_cast<double>(xs.size());
  double mean = 0;
  for (double x : xs) mean += x;
  mean /= n;
  if (xs.size() < 2) return {mean, 0.0};
  double ss = 0;
  for (double x : xs) ss += (x - mean) * (x - mean);
  return {mean, std::sqrt(ss / (n - 1.0))};
}

} // namespace detail

// Aggregation exactly as the report defines it: replications where the
// baseline timed out or returned a nonpositive lower bound are counted in
// TO / lb_zero and removed from every mean and spread; t_scm is averaged
// over all successful replications regardless.
inline ExperimentRow aggregate_records(const GenerationConfig& cfg,
                                       const std::vector<ReplicationRecord>& records) {
  ExperimentRow row;
  row.instance = cfg.source_instance;
  row.N = cfg.N;
  row.m = cfg.m;
  row.T = cfg.T;
  row.seed = cfg.rng_seed;
  row.replications = cfg.replications;

  std::vector<double> time_pct, alpha_lb, alpha_ub, t_scm;
  for (const auto& r : records) {
    if (!r.ok) continue;
    t_scm.push_back(r.t_scm);
    if (!r.exact_optimal) row.timeouts++;
    if (r.exact_lb <= 0) row.lb_zero++;
    if (!r.exact_optimal || r.exact_lb <= 0) continue;
    time_pct.push_back((r.t_exact - r.t_scm) / std::max(r.t_exact, 1e-12) * 100.0);
    alpha_lb.push_back(r.z_scm / r.exact_lb);
    alpha_ub.push_back(r.z_scm / r.exact_ub);
  }
  if (!t_scm.empty()) row.t_scm_mean = detail::mean_std(t_scm).first;
  if (!alpha_lb.empty()) {
    auto [tm, ts] = detail::mean_std(time_pct);
    row.time_pct = tm;
    row.time_pct_std = ts;
    auto [lm, ls] = detail::mean_std(alpha_lb);
    row.alpha_lb = lm;
    row.sigma_alpha_lb = ls;
    auto [um, us] = detail::mean_std(alpha_ub);
    row.alpha_ub = um;
    row.sigma_alpha_ub = us;
  }
  return row;
}

// Runs one replication end to end: generate, solve with the heuristic, hand
// the heuristic's fleet size to the exact baseline as the supply cap, record
// objectives, bounds and wall times.
inline ReplicationRecord run_replication(const GenerationConfig& cfg,
                                         const std::vector<SolomonCustomer>& source, int rep,
                                         const BenchLimits& limits) {
  ReplicationRecord rec;
  rec.rep = rep;
  rec.seed = cfg.rng_seed + static_cast<std::uint64_t>(rep);
  try {
    GenerationConfig rep_cfg = cfg;
    rep_cfg.rng_seed = rec.seed;
    DrfspInstance inst = generate_instance(rep_cfg, source);

    const ScmResult scm = run_scm(inst, cfg.phi, limits.scm_node_limit);
    rec.z_scm = scm.plan.objective;
    rec.t_scm = scm.timing.total_s();
    rec.scm_nodes = scm.plan.nodes_explored;

    int supply = 1;
    for (const auto& t : inst.types) {
      int used = scm.plan.first_stage_count(t.id);
      int worst_second = 0;
      for (int k = 0; k < inst.scenario_count(); ++k)
        worst_second = std::max(worst_second, scm.plan.second_stage_count(k, t.id));
      supply = std::max(supply, used + worst_second);
    }
    inst.agent_supply = supply;
    rec.supply = supply;

    const double time_limit = limits.with_timing ? limits.exact_time_limit_s
                                                 : std::numeric_limits<double>::infinity();
    auto t0 = std::chrono::steady_clock::now();
    const FleetPlan exact = solve_exact(inst, limits.exact_node_limit, time_limit);
    rec.t_exact = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    rec.exact_lb = exact.lower_bound;
    rec.exact_ub = exact.upper_bound;
    rec.exact_optimal = exact.proved_optimal;
    rec.exact_nodes = exact.nodes_explored;

    const ValidationReport report = validate_plan(exact, inst);
    if (!report.ok()) throw std::logic_error("exact plan failed validation:\n" + report.summary());
    rec.ok = true;
  } catch (const std::exception& e) {
    rec.ok = false;
    rec.error = e.what();
  }
  return rec;
}

inline ExperimentResult run_experiment(const GenerationConfig& cfg,
                                       const std::vector<SolomonCustomer>& source,
                                       const BenchLimits& limits) {
  cfg.validate();
  ExperimentResult result;
  result.records.resize(cfg.replications);

  if (limits.jobs > 1) {
    int next = 0;
    while (next < cfg.replications) {
      std::vector<std::pair<int, std::future<ReplicationRecord>>> batch;
      for (int j = 0; j < limits.jobs && next < cfg.replications; ++j, ++next)
        batch.emplace_back(next, std::async(std::launch::async, run_replication, cfg, source, next,
                                            limits));
      for (auto& [rep, fut] : batch) result.records[rep] = fut.get();
    }
  } else {
    for (int rep = 0; rep < cfg.replications; ++rep)
      result.records[rep] = run_replication(cfg, source, rep, limits);
  }

  result.row = aggregate_records(cfg, result.records);
  return result;
}

// ---------------------------------------------------------------------------
// Report emission. CSV columns follow the benchmark table layout; undefined
// aggregates stay blank, rows are ordered by (T, N, m).
// ---------------------------------------------------------------------------

inline const char* csv_header() {
  return "instance,N,m,time_pct,alpha_lb,alpha_ub,t_scm,time_pct_std,sigma_alpha_lb,"
         "sigma_alpha_ub,TO,lb_zero,T,seed";
}

inline void emit_report_csv(std::ostream& out, std::vector<ExperimentRow> rows, bool with_timing) {
  std::sort(rows.begin(), rows.end(), [](const ExperimentRow& a, const ExperimentRow& b) {
    if (a.T != b.T) return a.T < b.T;
    if (a.N != b.N) return a.N < b.N;
    return a.m < b.m;
  });
  auto cell = [&](const std::optional<double>& v) { return v ? format_double(*v) : std::string(); };
  auto timing_cell = [&](const std::optional<double>& v) {
    return with_timing ? cell(v) : std::string();
  };
  out << csv_header() << "\n";
  for (const auto& r : rows) {
    out << r.instance << "," << r.N << "," << r.m << "," << timing_cell(r.time_pct) << ","
        << cell(r.alpha_lb) << "," << cell(r.alpha_ub) << "," << timing_cell(r.t_scm_mean) << ","
        << timing_cell(r.time_pct_std) << "," << cell(r.sigma_alpha_lb) << ","
        << cell(r.sigma_alpha_ub) << "," << r.timeouts << "," << r.lb_zero << "," << r.T << ","
        << r.seed << "\n";
  }
}

inline std::string emit_report_table(std::vector<ExperimentRow> rows, bool with_timing) {
  std::ostringstream csv;
  emit_report_csv(csv, std::move(rows), with_timing);
  // Render the CSV as fixed-width columns.
  std::vector<std::vector<std::string>> cells;
  std::istringstream in(csv.str());
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> row;
    std::string field;
    std::istringstream ls(line);
    while (std::getline(ls, field, ',')) row.push_back(field);
    while (row.size() < 14) row.emplace_back();
    cells.push_back(std::move(row));
  }
  std::vector<std::size_t> width(14, 0);
  for (const auto& row : cells)
    for (std::size_t c = 0; c < row.size(); ++c) width[c] = std::max(width[c], row[c].size());
  std::ostringstream out;
  for (const auto& row : cells) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      out << row[c] << std::string(width[c] - row[c].size() + (c + 1 < row.size() ? 2 : 0), ' ');
    }
    out << "\n";
  }
  return out.str();
}

inline void write_records_jsonl(std::ostream& out, const std::vector<ReplicationRecord>& records) {
  for (const auto& r : records) out << record_to_json(r).dump() << "\n";
}

inline std::vector<ReplicationRecord> read_records_jsonl(std::istream& in) {
  std::vector<ReplicationRecord> records;
  std::string line;
  while (std::getline(in, line)) {
    if (detail::trim(line).empty()) continue;
    records.push_back(record_from_json(nlohmann::json::parse(line)));
  }
  return records;
}

} // namespace drfsp
