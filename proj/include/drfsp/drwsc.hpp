#pragma once

#include <algorithm>
#include <cstdint>
#include <istream>
#include <limits>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "drfsp/format.hpp"
#include "drfsp/instance.hpp"
#include "drfsp/route_sets.hpp"

namespace drfsp {

// A purchasable set in the demand-robust weighted set cover problem. What it
// covers depends on the realized scenario, because a route set runs a
// different member route in each scenario.
struct DrwscSet {
  int set_id = 0;
  double cost = 0;
  std::vector<std::vector<int>> elements_by_scenario; // k -> element ids, each subset of A_k
};

struct DrwscInstance {
  int universe_size = 0;                           // elements are 0..universe_size-1
  std::vector<std::vector<int>> scenario_elements; // A_k
  std::vector<double> inflations;                  // sigma_k
  std::vector<DrwscSet> sets;

  int scenario_count() const { return static_cast<int>(scenario_elements.size()); }

  // Every element of every A_k must be coverable by some set in that
  // scenario, otherwise the cover problem has no feasible solution.
  void validate_well_posed() const {
    const int m = scenario_count();
    if (static_cast<int>(inflations.size()) != m)
      throw std::invalid_argument("inflation count does not match scenario count");
    for (double s : inflations)
      if (s <= 1.0) throw std::invalid_argument("inflation factors must exceed 1");
    for (const auto& s : sets) {
      if (s.cost <= 0) throw std::invalid_argument("set costs must be positive");
      if (static_cast<int>(s.elements_by_scenario.size()) != m)
        throw std::invalid_argument("set " + std::to_string(s.set_id) +
                                    " does not list elements for every scenario");
    }
    for (int k = 0; k < m; ++k) {
      for (int e : scenario_elements[k]) {
        bool coverable = false;
        for (const auto& s : sets) {
          const auto& els = s.elements_by_scenario[k];
          if (std::find(els.begin(), els.end(), e) != els.end()) {
            coverable = true;
            break;
          }
        }
        if (!coverable)
          throw std::invalid_argument("element " + std::to_string(e) + " of scenario " +
                                      std::to_string(k) + " is not coverable by any set");
      }
    }
  }
};

struct DrwscSolution {
  std::vector<int> first_stage;                // set ids with x^0_S = 1
  std::vector<std::vector<int>> second_stage;  // k -> set ids with x^k_S = 1
  double objective = 0;
  bool proved_optimal = false;
  long long nodes_explored = 0;

  int second_stage_purchases() const {
    int n = 0;
    for (const auto& v : second_stage) n += static_cast<int>(v.size());
    return n;
  }
};

// Independent coverage and objective check for a DRWSC solution: every
// element of A_k is covered by a first-stage purchase or a scenario-k
// purchase, and the claimed objective is the exact min-max cost.
struct DrwscCheck {
  std::vector<std::string> violations;
  double recomputed_objective = 0;
  bool ok() const { return violations.empty(); }
};

inline DrwscCheck check_drwsc_solution(const DrwscInstance& inst, const DrwscSolution& sol) {
  DrwscCheck check;
  const int m = inst.scenario_count();
  if (static_cast<int>(sol.second_stage.size()) != m) {
    check.violations.push_back("second stage list does not match scenario count");
    return check;
  }
  auto set_by_id = [&](int id) -> const DrwscSet& {
    for (const auto& s : inst.sets)
      if (s.set_id == id) return s;
    throw std::invalid_argument("unknown set id " + std::to_string(id));
  };
  double z = 0;
  for (int k = 0; k < m; ++k) {
    std::vector<char> covered(inst.universe_size, 0);
    double cost = 0;
    for (int id : sol.first_stage) {
      const auto& s = set_by_id(id);
      cost += s.cost;
      for (int e : s.elements_by_scenario[k]) covered[e] = 1;
    }
    for (int id : sol.second_stage[k]) {
      const auto& s = set_by_id(id);
      cost += inst.inflations[k] * s.cost;
      for (int e : s.elements_by_scenario[k]) covered[e] = 1;
    }
    for (int e : inst.scenario_elements[k])
      if (!covered[e])
        check.violations.push_back("element " + std::to_string(e) + " uncovered in scenario " +
                                   std::to_string(k));
    z = std::max(z, cost);
  }
  check.recomputed_objective = z;
  if (std::abs(z - sol.objective) > 1e-9)
    check.violations.push_back("objective mismatch: claimed " + format_double(sol.objective) +
                               ", recomputed " + format_double(z));
  return check;
}

// First-stage-only greedy: repeatedly buy the set covering the most still
// uncovered elements across all scenarios per unit cost. Always feasible on
// well-posed input; used as the exact solver's starting incumbent and as the
// fallback at stress sizes.
inline DrwscSolution solve_drwsc_greedy(const DrwscInstance& inst) {
  inst.validate_well_posed();
  const int m = inst.scenario_count();
  DrwscSolution sol;
  sol.second_stage.assign(m, {});

  std::vector<std::vector<char>> covered(m, std::vector<char>(inst.universe_size, 0));
  long long remaining = 0;
  for (int k = 0; k < m; ++k) remaining += static_cast<long long>(inst.scenario_elements[k].size());
  // Elements outside every A_k need no cover.
  std::vector<std::vector<char>> required(m, std::vector<char>(inst.universe_size, 0));
  for (int k = 0; k < m; ++k)
    for (int e : inst.scenario_elements[k]) required[k][e] = 1;

  double total_cost = 0;
  while (remaining > 0) {
    int best = -1;
    double best_density = -1;
    long long best_gain = 0;
    for (const auto& s : inst.sets) {
      long long gain = 0;
      for (int k = 0; k < m; ++k)
        for (int e : s.elements_by_scenario[k])
          if (required[k][e] && !covered[k][e]) ++gain;
      if (gain == 0) continue;
      const double density = static_cast<double>(gain) / s.cost;
      if (best < 0 || density > best_density) {
        best = s.set_id;
        best_density = density;
        best_gain = gain;
      }
    }
    if (best < 0) throw std::logic_error("greedy cover stalled on a well-posed instance");
    const auto& s = *std::find_if(inst.sets.begin(), inst.sets.end(),
                                  [&](const DrwscSet& x) { return x.set_id == best; });
    sol.first_stage.push_back(best);
    total_cost += s.cost;
    remaining -= best_gain;
    for (int k = 0; k < m; ++k)
      for (int e : s.elements_by_scenario[k])
        if (required[k][e]) covered[k][e] = 1;
  }
  sol.objective = total_cost; // no second stage: every scenario pays the same
  sol.proved_optimal = false;
  std::sort(sol.first_stage.begin(), sol.first_stage.end());
  return sol;
}

// Snapshot of one branch-and-bound node: the lower bound reported there and
// the first-stage commitments as bitmasks over set ids. Tests replay these
// against the enumeration oracle to certify the bound is admissible.
struct DrwscNodeTrace {
  double bound = 0;
  std::uint32_t forced_in = 0;
  std::uint32_t forced_out = 0;
};

namespace detail {

// Shared state of the exact DRWSC branch and bound.
struct DrwscBnB {
  const DrwscInstance& inst;
  int m;
  long long node_limit;
  long long nodes = 0;
  bool aborted = false;
  std::vector<DrwscNodeTrace>* trace = nullptr;

  // -1 undecided, 0 excluded from first stage, 1 purchased first stage
  std::vector<int> status;
  std::vector<std::vector<char>> required;   // [k][e]
  std::vector<std::vector<int>> cover_count; // [k][e] first-stage covers

  double first_cost = 0;
  double best_z = std::numeric_limits<double>::infinity();
  int best_second_count = std::numeric_limits<int>::max();
  std::vector<int> best_first;
  std::vector<std::vector<int>> best_second;

  explicit DrwscBnB(const DrwscInstance& i, long long limit)
      : inst(i), m(i.scenario_count()), node_limit(limit), status(i.sets.size(), -1),
        required(m, std::vector<char>(i.universe_size, 0)),
        cover_count(m, std::vector<int>(i.universe_size, 0)) {
    for (int k = 0; k < m; ++k)
      for (int e : inst.scenario_elements[k]) required[k][e] = 1;
  }

  bool tick() {
    if (++nodes >= node_limit) aborted = true;
    return !aborted;
  }

  long long fresh_coverage(const DrwscSet& s) const {
    long long gain = 0;
    for (int k = 0; k < m; ++k)
      for (int e : s.elements_by_scenario[k])
        if (required[k][e] && cover_count[k][e] == 0) ++gain;
    return gain;
  }

  // Admissible lower bound: per scenario, committed first-stage cost plus a
  // cost-share over uncovered elements. Each uncovered element is charged the
  // cheapest per-element share any covering set could offer it (first-stage
  // price while the set is undecided, inflated price once it is excluded),
  // with the set's cost divided over its still-uncovered elements.
  double bound() const {
    double worst = 0;
    for (int k = 0; k < m; ++k) {
      double residual = 0;
      for (int e : inst.scenario_elements[k]) {
        if (cover_count[k][e] > 0) continue;
        double share = std::numeric_limits<double>::infinity();
        for (const auto& s : inst.sets) {
          if (status[s.set_id] == 1) continue;
          const auto& els = s.elements_by_scenario[k];
          if (std::find(els.begin(), els.end(), e) == els.end()) continue;
          long long fresh = 0;
          for (int x : els)
            if (required[k][x] && cover_count[k][x] == 0) ++fresh;
          const double price = status[s.set_id] == 0 ? inst.inflations[k] * s.cost : s.cost;
          share = std::min(share, price / static_cast<double>(fresh));
        }
        residual += share;
      }
      worst = std::max(worst, first_cost + residual);
    }
    return worst;
  }

  void apply(const DrwscSet& s, int delta) {
    for (int k = 0; k < m; ++k)
      for (int e : s.elements_by_scenario[k]) cover_count[k][e] += delta;
  }

  // Exact min-cost cover of the still-uncovered elements of scenario k using
  // the sets excluded from the first stage; classic weighted set cover BnB
  // with the same cost-share bound.
  struct CoverResult {
    double cost = 0;
    std::vector<int> chosen;
    bool complete = false;
  };

  CoverResult best_cover(int k) {
    std::vector<int> targets;
    for (int e : inst.scenario_elements[k])
      if (cover_count[k][e] == 0) targets.push_back(e);
    CoverResult best;
    if (targets.empty()) {
      best.complete = true;
      return best;
    }
    std::vector<int> candidates;
    for (const auto& s : inst.sets)
      if (status[s.set_id] != 1 && !s.elements_by_scenario[k].empty()) candidates.push_back(s.set_id);

    std::vector<char> covered(inst.universe_size, 0);
    std::vector<int> chosen;
    best.cost = std::numeric_limits<double>::infinity();
    cover_dfs(k, targets, candidates, covered, chosen, 0.0, best);
    best.complete = best.cost < std::numeric_limits<double>::infinity();
    return best;
  }

  void cover_dfs(int k, const std::vector<int>& targets, const std::vector<int>& candidates,
                 std::vector<char>& covered, std::vector<int>& chosen, double cost, CoverResult& best) {
    if (!tick()) return;
    long long open = 0;
    for (int e : targets)
      if (!covered[e]) ++open;
    if (open == 0) {
      if (cost < best.cost) {
        best.cost = cost;
        best.chosen = chosen;
      }
      return;
    }
    // Cost-share bound over the remaining targets.
    double residual = 0;
    for (int e : targets) {
      if (covered[e]) continue;
      double share = std::numeric_limits<double>::infinity();
      for (int id : candidates) {
        if (std::find(chosen.begin(), chosen.end(), id) != chosen.end()) continue;
        const auto& s = inst.sets[id];
        const auto& els = s.elements_by_scenario[k];
        if (std::find(els.begin(), els.end(), e) == els.end()) continue;
        long long fresh = 0;
        for (int x : els)
          if (!covered[x] && std::find(targets.begin(), targets.end(), x) != targets.end()) ++fresh;
        share = std::min(share, s.cost / static_cast<double>(fresh));
      }
      if (share == std::numeric_limits<double>::infinity()) return; // uncoverable branch
      residual += share;
    }
    if (cost + residual >= best.cost) return;

    // Branch on the densest candidate that still covers something.
    int pick = -1;
    double pick_density = -1;
    for (int id : candidates) {
      if (std::find(chosen.begin(), chosen.end(), id) != chosen.end()) continue;
      const auto& els = inst.sets[id].elements_by_scenario[k];
      long long fresh = 0;
      for (int x : els)
        if (!covered[x] && std::find(targets.begin(), targets.end(), x) != targets.end()) ++fresh;
      if (fresh == 0) continue;
      const double density = static_cast<double>(fresh) / inst.sets[id].cost;
      if (density > pick_density) {
        pick = id;
        pick_density = density;
      }
    }
    if (pick < 0) return;

    // Include branch.
    std::vector<int> newly;
    for (int x : inst.sets[pick].elements_by_scenario[k])
      if (!covered[x]) {
        covered[x] = 1;
        newly.push_back(x);
      }
    chosen.push_back(pick);
    cover_dfs(k, targets, candidates, covered, chosen, cost + inst.sets[pick].cost, best);
    chosen.pop_back();
    for (int x : newly) covered[x] = 0;

    // Exclude branch: drop the set from this subtree's candidate list.
    std::vector<int> rest;
    for (int id : candidates)
      if (id != pick) rest.push_back(id);
    cover_dfs(k, targets, rest, covered, chosen, cost, best);
  }

  void evaluate_leaf() {
    double z = 0;
    int second_count = 0;
    std::vector<std::vector<int>> second(m);
    for (int k = 0; k < m; ++k) {
      CoverResult cover = best_cover(k);
      if (aborted || !cover.complete) return;
      z = std::max(z, first_cost + inst.inflations[k] * cover.cost);
      second_count += static_cast<int>(cover.chosen.size());
      second[k] = std::move(cover.chosen);
    }
    if (z < best_z || (z == best_z && second_count < best_second_count)) {
      best_z = z;
      best_second_count = second_count;
      best_first.clear();
      for (const auto& s : inst.sets)
        if (status[s.set_id] == 1) best_first.push_back(s.set_id);
      for (auto& v : second) std::sort(v.begin(), v.end());
      best_second = std::move(second);
    }
  }

  void dfs() {
    if (!tick()) return;
    const double node_bound = bound();
    if (trace && inst.sets.size() <= 32) {
      DrwscNodeTrace t;
      t.bound = node_bound;
      for (std::size_t s = 0; s < inst.sets.size(); ++s) {
        if (status[s] == 1) t.forced_in |= 1u << s;
        if (status[s] == 0) t.forced_out |= 1u << s;
      }
      trace->push_back(t);
    }
    if (node_bound >= best_z) return;

    // Next branching set: max uncovered elements per unit cost.
    int pick = -1;
    double pick_density = -1;
    for (const auto& s : inst.sets) {
      if (status[s.set_id] != -1) continue;
      const long long fresh = fresh_coverage(s);
      if (fresh == 0) continue;
      const double density = static_cast<double>(fresh) / s.cost;
      if (density > pick_density) {
        pick = s.set_id;
        pick_density = density;
      }
    }
    if (pick < 0) {
      // No undecided set adds coverage; buying one first stage could only
      // raise every scenario's cost, so the subtree collapses to one leaf.
      evaluate_leaf();
      return;
    }

    const auto& s = inst.sets[pick];
    status[pick] = 1;
    first_cost += s.cost;
    apply(s, +1);
    dfs();
    apply(s, -1);
    first_cost -= s.cost;

    if (aborted) {
      status[pick] = -1;
      return;
    }

    status[pick] = 0;
    dfs();
    status[pick] = -1;
  }
};

} // namespace detail

// Exact solve of the demand-robust weighted set cover by depth-first branch
// and bound on the first-stage purchase variables; at each leaf the residual
// per-scenario covers are themselves solved exactly. The incumbent starts
// from the greedy solution. Exhausting the tree within the node limit proves
// optimality; otherwise the best incumbent is returned as feasible-only.
inline DrwscSolution solve_drwsc_exact(const DrwscInstance& inst, long long node_limit = 1'000'000,
                                       std::vector<DrwscNodeTrace>* trace = nullptr) {
  if (node_limit < 1) throw std::invalid_argument("node limit must be at least 1");
  inst.validate_well_posed();

  // Set ids are assumed dense 0..n-1 in vector order, as produced by the
  // mapping; enforce to keep indexing honest.
  for (int i = 0; i < static_cast<int>(inst.sets.size()); ++i)
    if (inst.sets[i].set_id != i)
      throw std::invalid_argument("set ids must be dense and ordered");

  DrwscSolution greedy = solve_drwsc_greedy(inst);

  detail::DrwscBnB bnb(inst, node_limit);
  bnb.trace = trace;
  bnb.best_z = greedy.objective;
  bnb.best_second_count = greedy.second_stage_purchases();
  bnb.best_first = greedy.first_stage;
  bnb.best_second = greedy.second_stage;
  bnb.dfs();

  DrwscSolution sol;
  sol.first_stage = bnb.best_first;
  sol.second_stage = bnb.best_second;
  sol.objective = bnb.best_z;
  sol.proved_optimal = !bnb.aborted;
  sol.nodes_explored = bnb.nodes;
  return sol;
}

// ---------------------------------------------------------------------------
// Mapping from route sets to DRWSC: each timetable entry becomes an element,
// the union over scenarios the universe, each route set a purchasable set
// priced at its agent type's first-stage cost.
// ---------------------------------------------------------------------------

struct DrwscMapping {
  DrwscInstance instance;
  struct SetOrigin {
    int type_id = 0;
    int set_index = 0;
  };
  std::vector<SetOrigin> origins;               // by set id
  std::map<std::pair<int, int>, int> element_id; // (scenario, entry_id) -> element
};

inline DrwscMapping map_to_drwsc(const RouteSetCollection& collection, const DrfspInstance& inst) {
  if (!coverage_complete(collection, inst))
    throw std::logic_error("route-set collection is incomplete; the cover problem would be ill-posed");

  DrwscMapping mapping;
  DrwscInstance& d = mapping.instance;
  const int m = inst.scenario_count();
  d.scenario_elements.resize(m);
  for (int k = 0; k < m; ++k) {
    d.inflations.push_back(inst.scenarios[k].inflation);
    for (const auto& e : inst.scenarios[k].timetable) {
      const int id = d.universe_size++;
      mapping.element_id[{k, e.entry_id}] = id;
      d.scenario_elements[k].push_back(id);
    }
  }
  for (const auto& [t, sets] : collection.sets_by_type) {
    const double cost = inst.type_by_id(t).first_stage_cost;
    for (const auto& set : sets) {
      DrwscSet s;
      s.set_id = static_cast<int>(d.sets.size());
      s.cost = cost;
      s.elements_by_scenario.resize(m);
      for (const auto& [k, ids] : set.covered)
        for (int entry : ids) s.elements_by_scenario[k].push_back(mapping.element_id.at({k, entry}));
      d.sets.push_back(std::move(s));
      mapping.origins.push_back({t, set.set_index});
    }
  }
  if (d.universe_size > 0) d.validate_well_posed();
  return mapping;
}

// ---------------------------------------------------------------------------
// Text dump of a DRWSC instance, parseable so oracles can consume it.
//   [UNIVERSE]    size
//   [SCENARIO k sigma=s]   element ids
//   [SET id cost=c]        one "k : e1 e2 ..." line per nonempty scenario
// ---------------------------------------------------------------------------

inline void write_drwsc(std::ostream& out, const DrwscInstance& inst) {
  out << "[UNIVERSE]\n" << inst.universe_size << "\n";
  for (int k = 0; k < inst.scenario_count(); ++k) {
    out << "[SCENARIO " << k << " sigma=" << format_double(inst.inflations[k]) << "]\n";
    for (std::size_t i = 0; i < inst.scenario_elements[k].size(); ++i)
      out << (i ? " " : "") << inst.scenario_elements[k][i];
    out << "\n";
  }
  for (const auto& s : inst.sets) {
    out << "[SET " << s.set_id << " cost=" << format_double(s.cost) << "]\n";
    for (int k = 0; k < inst.scenario_count(); ++k) {
      if (s.elements_by_scenario[k].empty()) continue;
      out << k << " :";
      for (int e : s.elements_by_scenario[k]) out << " " << e;
      out << "\n";
    }
  }
}

inline std::string write_drwsc(const DrwscInstance& inst) {
  std::ostringstream out;
  write_drwsc(out, inst);
  return out.str();
}

inline DrwscInstance parse_drwsc(std::istream& in) {
  DrwscInstance inst;
  std::string line;
  int lineno = 0;
  enum class Section { none, universe, scenario, set };
  Section section = Section::none;
  int current_scenario = -1;
  DrwscSet* current_set = nullptr;

  while (std::getline(in, line)) {
    ++lineno;
    auto t = detail::trim(line);
    if (t.empty() || t.front() == '#') continue;
    if (t.front() == '[') {
      if (t == "[UNIVERSE]") {
        section = Section::universe;
      } else if (t.starts_with("[SCENARIO ")) {
        auto body = t.substr(10, t.size() - 11);
        auto fields = detail::split_ws(body);
        long long k;
        double sigma;
        if (fields.size() != 2 || !parse_i64(fields[0], k) || !fields[1].starts_with("sigma=") ||
            !parse_double(fields[1].substr(6), sigma))
          throw ParseError(lineno, "malformed scenario header");
        current_scenario = static_cast<int>(k);
        if (static_cast<int>(inst.scenario_elements.size()) != current_scenario)
          throw ParseError(lineno, "scenario sections must appear in order");
        inst.scenario_elements.emplace_back();
        inst.inflations.push_back(sigma);
        section = Section::scenario;
      } else if (t.starts_with("[SET ")) {
        auto body = t.substr(5, t.size() - 6);
        auto fields = detail::split_ws(body);
        long long id;
        double cost;
        if (fields.size() != 2 || !parse_i64(fields[0], id) || !fields[1].starts_with("cost=") ||
            !parse_double(fields[1].substr(5), cost))
          throw ParseError(lineno, "malformed set header");
        DrwscSet s;
        s.set_id = static_cast<int>(id);
        s.cost = cost;
        s.elements_by_scenario.resize(inst.scenario_elements.size());
        inst.sets.push_back(std::move(s));
        current_set = &inst.sets.back();
        section = Section::set;
      } else {
        throw ParseError(lineno, "unknown section '" + std::string(t) + "'");
      }
      continue;
    }
    auto fields = detail::split_ws(t);
    switch (section) {
      case Section::universe: {
        long long n;
        if (fields.size() != 1 || !parse_i64(fields[0], n))
          throw ParseError(lineno, "universe size must be a single integer");
        inst.universe_size = static_cast<int>(n);
        break;
      }
      case Section::scenario: {
        for (auto f : fields) {
          long long e;
          if (!parse_i64(f, e)) throw ParseError(lineno, "bad element id");
          inst.scenario_elements[current_scenario].push_back(static_cast<int>(e));
        }
        break;
      }
      case Section::set: {
        if (fields.size() < 2 || fields[1] != ":") throw ParseError(lineno, "expected 'k : elements'");
        long long k;
        if (!parse_i64(fields[0], k) || k < 0 || k >= static_cast<long long>(inst.scenario_elements.size()))
          throw ParseError(lineno, "bad scenario index in set coverage");
        for (std::size_t i = 2; i < fields.size(); ++i) {
          long long e;
          if (!parse_i64(fields[i], e)) throw ParseError(lineno, "bad element id");
          current_set->elements_by_scenario[k].push_back(static_cast<int>(e));
        }
        break;
      }
      case Section::none:
        throw ParseError(lineno, "data before any section header");
    }
  }
  return inst;
}

inline DrwscInstance parse_drwsc(const std::string& text) {
  std::istringstream in(text);
  return parse_drwsc(in);
}

} // namespace drfsp
