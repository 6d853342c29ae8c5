#pragma once

#include <cstdint>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "drfsp/instance.hpp"
#include "drfsp/rng.hpp"

namespace drfsp {

class ConfigError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Experiment configuration. compatibility_prob 0 means "derive from T":
// 10% / 40% / 80% for T = 2 / 4 / 8, and 0.5 otherwise.
struct GenerationConfig {
  std::string source_instance;
  int N = 0;                       // customers sampled per scenario
  int T = 1;                       // agent type count
  int m = 1;                       // scenario count
  double sigma = 2.0;              // uniform second-stage inflation
  double phi = 0.5;                // insertion objective weight
  double compatibility_prob = 0.0; // 0 -> derived from T
  std::uint64_t rng_seed = 1;
  int replications = 10;

  double effective_compatibility_prob() const {
    if (compatibility_prob > 0) return compatibility_prob;
    switch (T) {
      case 2: return 0.10;
      case 4: return 0.40;
      case 8: return 0.80;
      default: return 0.5;
    }
  }

  void validate() const {
    if (N < 1) throw ConfigError("N must be at least 1");
    if (T < 1) throw ConfigError("T must be at least 1");
    if (m < 1) throw ConfigError("m must be at least 1");
    if (sigma <= 1.0) throw ConfigError("sigma must exceed 1");
    if (phi < 0.0 || phi > 1.0) throw ConfigError("phi must lie in [0, 1]");
    const double p = effective_compatibility_prob();
    if (p <= 0.0 || p > 1.0) throw ConfigError("compatibility_prob must lie in (0, 1]");
    if (replications < 1) throw ConfigError("replications must be at least 1");
  }
};

inline GenerationConfig parse_config(std::istream& in) {
  GenerationConfig cfg;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto t = detail::trim(line);
    if (t.empty() || t.front() == '#') continue;
    auto eq = t.find('=');
    if (eq == std::string_view::npos) throw ParseError(lineno, "expected key=value");
    auto key = detail::trim(t.substr(0, eq));
    auto val = detail::trim(t.substr(eq + 1));
    long long i = 0;
    double d = 0;
    if (key == "source_instance") {
      cfg.source_instance = std::string(val);
    } else if (key == "N" && parse_i64(val, i)) {
      cfg.N = static_cast<int>(i);
    } else if (key == "T" && parse_i64(val, i)) {
      cfg.T = static_cast<int>(i);
    } else if (key == "m" && parse_i64(val, i)) {
      cfg.m = static_cast<int>(i);
    } else if (key == "sigma" && parse_double(val, d)) {
      cfg.sigma = d;
    } else if (key == "phi" && parse_double(val, d)) {
      cfg.phi = d;
    } else if (key == "compatibility_prob" && parse_double(val, d)) {
      cfg.compatibility_prob = d;
    } else if (key == "rng_seed" && parse_i64(val, i)) {
      cfg.rng_seed = static_cast<std::uint64_t>(i);
    } else if (key == "replications" && parse_i64(val, i)) {
      cfg.replications = static_cast<int>(i);
    } else {
      throw ParseError(lineno, "unknown or malformed config key '" + std::string(key) + "'");
    }
  }
  return cfg;
}

inline GenerationConfig parse_config(const std::string& text) {
  std::istringstream in(text);
  return parse_config(in);
}

inline void write_config(std::ostream& out, const GenerationConfig& cfg) {
  out << "source_instance=" << cfg.source_instance << "\n";
  out << "N=" << cfg.N << "\n";
  out << "T=" << cfg.T << "\n";
  out << "m=" << cfg.m << "\n";
  out << "sigma=" << format_double(cfg.sigma) << "\n";
  out << "phi=" << format_double(cfg.phi) << "\n";
  out << "compatibility_prob=" << format_double(cfg.compatibility_prob) << "\n";
  out << "rng_seed=" << cfg.rng_seed << "\n";
  out << "replications=" << cfg.replications << "\n";
}

// Builds one DRFSP instance: every scenario samples N customers uniformly
// with replacement (depot excluded); each draw becomes a timetable entry with
// the customer's own window and service time; each entry's compatible-type
// set includes each type independently with the compatibility probability and
// is redrawn whole until nonempty. Deterministic for a fixed seed.
inline DrfspInstance generate_instance(const GenerationConfig& cfg,
                                       const std::vector<SolomonCustomer>& customers) {
  cfg.validate();
  std::vector<const SolomonCustomer*> pool;
  const SolomonCustomer* depot = nullptr;
  for (const auto& c : customers) {
    if (c.id == 0)
      depot = &c;
    else
      pool.push_back(&c);
  }
  if (pool.empty()) throw ConfigError("customer pool is empty");
  if (!depot) throw ConfigError("customer data has no depot");

  DrfspInstance inst;
  inst.name = cfg.source_instance;
  inst.customers = customers;
  inst.horizon = depot->due_date;
  inst.travel = TravelTime::euclidean(customers);
  for (int t = 1; t <= cfg.T; ++t) inst.types.push_back(AgentType{t, 1.0});

  const double p = cfg.effective_compatibility_prob();
  Rng rng(cfg.rng_seed);
  for (int k = 0; k < cfg.m; ++k) {
    Scenario sc;
    sc.index = k;
    sc.inflation = cfg.sigma;
    for (int n = 0; n < cfg.N; ++n) {
      const auto* c = pool[rng.below(pool.size())];
      TimetableEntry e;
      e.entry_id = n;
      e.customer_id = c->id;
      e.window = {c->ready_time, c->due_date};
      e.service_time = c->service_time;
      do {
        e.compatible_types.clear();
        for (int t = 1; t <= cfg.T; ++t)
          if (rng.bernoulli(p)) e.compatible_types.push_back(t);
      } while (e.compatible_types.empty());
      sc.timetable.push_back(std::move(e));
    }
    inst.scenarios.push_back(std::move(sc));
  }
  inst.validate();
  return inst;
}

} // namespace drfsp
