#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "drfsp/format.hpp"
#include "drfsp/solomon.hpp"

namespace drfsp {

struct AgentType {
  int id = 0;                   // 1..T
  double first_stage_cost = 1;  // c^t, second stage pays sigma_k * c^t

  bool operator==(const AgentType&) const = default;
};

struct TimeWindow {
  double e = 0;
  double l = 0;

  bool operator==(const TimeWindow&) const = default;
};

// One required service in a scenario's timetable. A customer can appear in
// several entries of the same timetable, each with its own window and
// compatible-type set, so routing code references entries, never customers.
struct TimetableEntry {
  int entry_id = 0;
  int customer_id = 0;
  TimeWindow window;
  double service_time = 0;
  std::vector<int> compatible_types; // sorted type ids, nonempty

  bool compatible_with(int type_id) const {
    return std::binary_search(compatible_types.begin(), compatible_types.end(), type_id);
  }

  bool operator==(const TimetableEntry&) const = default;
};

struct Scenario {
  int index = 0;
  std::vector<TimetableEntry> timetable; // G_k
  double inflation = 2.0;                // sigma_k > 1

  bool operator==(const Scenario&) const = default;
};

// Travel times between customers: Euclidean over coordinates by default, or
// an explicit symmetric matrix that fully overrides the geometry.
class TravelTime {
public:
  TravelTime() = default;

  static TravelTime euclidean(const std::vector<SolomonCustomer>& customers) {
    TravelTime t;
    for (const auto& c : customers) t.coords_[c.id] = {c.x, c.y};
    return t;
  }

  void set_explicit_entry(int a, int b, double d) {
    if (d < 0) throw std::invalid_argument("negative travel time");
    has_matrix_ = true;
    matrix_[key(a, b)] = d;
  }

  bool has_matrix() const { return has_matrix_; }

  double operator()(int a, int b) const {
    if (a == b) return 0.0;
    if (has_matrix_) {
      auto it = matrix_.find(key(a, b));
      if (it == matrix_.end())
        throw std::runtime_error("travel time matrix has no entry for pair (" + std::to_string(a) +
                                 ", " + std::to_string(b) + ")");
      return it->second;
    }
    const auto& pa = coord(a);
    const auto& pb = coord(b);
    const double dx = pa.first - pb.first;
    const double dy = pa.second - pb.second;
    return std::sqrt(dx * dx + dy * dy);
  }

  const std::map<std::uint64_t, double>& matrix() const { return matrix_; }

private:
  static std::uint64_t key(int a, int b) {
    auto lo = static_cast<std::uint32_t>(std::min(a, b));
    auto hi = static_cast<std::uint32_t>(std::max(a, b));
    return (static_cast<std::uint64_t>(lo) << 32) | hi;
  }

  const std::pair<double, double>& coord(int id) const {
    auto it = coords_.find(id);
    if (it == coords_.end())
      throw std::runtime_error("unknown customer id " + std::to_string(id) + " in travel time query");
    return it->second;
  }

  std::unordered_map<int, std::pair<double, double>> coords_;
  std::map<std::uint64_t, double> matrix_; // ordered so serialization is stable
  bool has_matrix_ = false;
};

struct DrfspInstance {
  std::string name;
  std::vector<SolomonCustomer> customers; // includes depot 0
  std::vector<AgentType> types;
  std::vector<Scenario> scenarios;
  TravelTime travel;
  int agent_supply = 0; // P; 0 means "derive as max_k |G_k|"
  double horizon = 0;   // depot due date; stored, not enforced

  int type_count() const { return static_cast<int>(types.size()); }
  int scenario_count() const { return static_cast<int>(scenarios.size()); }

  // W = max_k |G_k|
  int max_timetable_size() const {
    std::size_t w = 0;
    for (const auto& s : scenarios) w = std::max(w, s.timetable.size());
    return static_cast<int>(w);
  }

  int supply() const { return agent_supply > 0 ? agent_supply : std::max(1, max_timetable_size()); }

  const AgentType& type_by_id(int id) const {
    for (const auto& t : types)
      if (t.id == id) return t;
    throw std::runtime_error("unknown agent type " + std::to_string(id));
  }

  const SolomonCustomer* find_customer(int id) const {
    for (const auto& c : customers)
      if (c.id == id) return &c;
    return nullptr;
  }

  // Indices into scenario k's timetable of the entries type t may service.
  std::vector<int> compatible_entries(int type_id, int k) const {
    std::vector<int> out;
    const auto& g = scenarios.at(k).timetable;
    for (int i = 0; i < static_cast<int>(g.size()); ++i)
      if (g[i].compatible_with(type_id)) out.push_back(i);
    return out;
  }

  void validate() const {
    if (scenarios.empty()) throw std::invalid_argument("instance has no scenarios");
    if (types.empty()) throw std::invalid_argument("instance has no agent types");
    for (const auto& t : types)
      if (t.first_stage_cost <= 0) throw std::invalid_argument("agent type cost must be positive");
    if (!find_customer(0)) throw std::invalid_argument("instance has no depot (customer 0)");
    for (int k = 0; k < static_cast<int>(scenarios.size()); ++k)
      if (scenarios[k].index != k)
        throw std::invalid_argument("scenario indices must be 0..m-1 in order");
    for (const auto& s : scenarios) {
      if (s.inflation <= 1.0)
        throw std::invalid_argument("scenario inflation must exceed 1");
      std::vector<int> seen;
      for (const auto& e : s.timetable) {
        if (e.compatible_types.empty())
          throw std::invalid_argument("timetable entry " + std::to_string(e.entry_id) +
                                      " has no compatible types");
        for (int t : e.compatible_types) type_by_id(t);
        if (e.window.e > e.window.l)
          throw std::invalid_argument("entry " + std::to_string(e.entry_id) + " has an empty window");
        if (!find_customer(e.customer_id))
          throw std::invalid_argument("entry " + std::to_string(e.entry_id) +
                                      " references unknown customer " + std::to_string(e.customer_id));
        if (std::find(seen.begin(), seen.end(), e.entry_id) != seen.end())
          throw std::invalid_argument("duplicate entry id " + std::to_string(e.entry_id) +
                                      " in scenario " + std::to_string(s.index));
        seen.push_back(e.entry_id);
      }
    }
  }
};

// ---------------------------------------------------------------------------
// Instance file format: line-oriented UTF-8 with '#' comments and sections
//   [CUSTOMERS]            id x y demand ready due service
//   [TYPES]                id cost
//   [SCENARIO k sigma=s]   entry_id customer_id e l s type_ids_csv
//   [MATRIX]   (optional)  i j d      -- full override of Euclidean distances
//   [SUPPLY]   (optional)  P
// ---------------------------------------------------------------------------

inline void write_instance(std::ostream& out, const DrfspInstance& inst) {
  out << "# DRFSP instance\n";
  if (!inst.name.empty()) out << "[NAME]\n" << inst.name << "\n";
  out << "[CUSTOMERS]\n";
  for (const auto& c : inst.customers)
    out << c.id << " " << format_double(c.x) << " " << format_double(c.y) << " "
        << format_double(c.demand) << " " << format_double(c.ready_time) << " "
        << format_double(c.due_date) << " " << format_double(c.service_time) << "\n";
  out << "[TYPES]\n";
  for (const auto& t : inst.types) out << t.id << " " << format_double(t.first_stage_cost) << "\n";
  for (const auto& s : inst.scenarios) {
    out << "[SCENARIO " << s.index << " sigma=" << format_double(s.inflation) << "]\n";
    for (const auto& e : s.timetable) {
      out << e.entry_id << " " << e.customer_id << " " << format_double(e.window.e) << " "
          << format_double(e.window.l) << " " << format_double(e.service_time) << " ";
      for (std::size_t i = 0; i < e.compatible_types.size(); ++i)
        out << (i ? "," : "") << e.compatible_types[i];
      out << "\n";
    }
  }
  if (inst.travel.has_matrix()) {
    out << "[MATRIX]\n";
    for (const auto& [key, d] : inst.travel.matrix())
      out << static_cast<int>(key >> 32) << " " << static_cast<int>(key & 0xffffffffu) << " "
          << format_double(d) << "\n";
  }
  if (inst.agent_supply > 0) out << "[SUPPLY]\n" << inst.agent_supply << "\n";
}

inline std::string write_instance(const DrfspInstance& inst) {
  std::ostringstream out;
  write_instance(out, inst);
  return out.str();
}

inline DrfspInstance parse_instance(std::istream& in) {
  DrfspInstance inst;
  std::string line;
  int lineno = 0;
  enum class Section { none, name, customers, types, scenario, matrix, supply };
  Section section = Section::none;
  Scenario* current = nullptr;
  bool matrix_seen = false;

  while (std::getline(in, line)) {
    ++lineno;
    auto t = detail::trim(line);
    if (t.empty() || t.front() == '#') continue;
    if (t.front() == '[') {
      if (t == "[NAME]") {
        section = Section::name;
      } else if (t == "[CUSTOMERS]") {
        section = Section::customers;
      } else if (t == "[TYPES]") {
        section = Section::types;
      } else if (t == "[MATRIX]") {
        section = Section::matrix;
        matrix_seen = true;
      } else if (t == "[SUPPLY]") {
        section = Section::supply;
      } else if (t.starts_with("[SCENARIO ")) {
        auto body = t.substr(10, t.size() - 11); // strip "[SCENARIO " and "]"
        auto fields = detail::split_ws(body);
        long long k = 0;
        double sigma = 0;
        if (fields.size() != 2 || !parse_i64(fields[0], k) || !fields[1].starts_with("sigma=") ||
            !parse_double(fields[1].substr(6), sigma))
          throw ParseError(lineno, "malformed scenario header '" + std::string(t) + "'");
        inst.scenarios.push_back(Scenario{static_cast<int>(k), {}, sigma});
        current = &inst.scenarios.back();
        section = Section::scenario;
      } else {
        throw ParseError(lineno, "unknown section '" + std::string(t) + "'");
      }
      continue;
    }

    auto fields = detail::split_ws(t);
    auto need_double = [&](std::string_view f) {
      double v;
      if (!parse_double(f, v)) throw ParseError(lineno, "non-numeric field '" + std::string(f) + "'");
      return v;
    };
    auto need_int = [&](std::string_view f) {
      long long v;
      if (!parse_i64(f, v)) throw ParseError(lineno, "non-integer field '" + std::string(f) + "'");
      return static_cast<int>(v);
    };

    switch (section) {
      case Section::name: {
        inst.name = std::string(t);
        break;
      }
      case Section::customers: {
        if (fields.size() != 7) throw ParseError(lineno, "customer row needs 7 fields");
        SolomonCustomer c;
        c.id = need_int(fields[0]);
        c.x = need_double(fields[1]);
        c.y = need_double(fields[2]);
        c.demand = need_double(fields[3]);
        c.ready_time = need_double(fields[4]);
        c.due_date = need_double(fields[5]);
        c.service_time = need_double(fields[6]);
        inst.customers.push_back(c);
        break;
      }
      case Section::types: {
        if (fields.size() != 2) throw ParseError(lineno, "type row needs 2 fields");
        inst.types.push_back(AgentType{need_int(fields[0]), need_double(fields[1])});
        break;
      }
      case Section::scenario: {
        if (fields.size() != 6) throw ParseError(lineno, "timetable row needs 6 fields");
        TimetableEntry e;
        e.entry_id = need_int(fields[0]);
        e.customer_id = need_int(fields[1]);
        e.window.e = need_double(fields[2]);
        e.window.l = need_double(fields[3]);
        e.service_time = need_double(fields[4]);
        std::string csv(fields[5]);
        std::size_t pos = 0;
        while (pos < csv.size()) {
          auto comma = csv.find(',', pos);
          if (comma == std::string::npos) comma = csv.size();
          long long tid;
          if (!parse_i64(std::string_view(csv).substr(pos, comma - pos), tid))
            throw ParseError(lineno, "bad type id list '" + csv + "'");
          e.compatible_types.push_back(static_cast<int>(tid));
          pos = comma + 1;
        }
        std::sort(e.compatible_types.begin(), e.compatible_types.end());
        e.compatible_types.erase(std::unique(e.compatible_types.begin(), e.compatible_types.end()),
                                 e.compatible_types.end());
        if (!current) throw ParseError(lineno, "timetable row outside a scenario section");
        current->timetable.push_back(std::move(e));
        break;
      }
      case Section::matrix: {
        if (fields.size() != 3) throw ParseError(lineno, "matrix row needs 3 fields");
        inst.travel.set_explicit_entry(need_int(fields[0]), need_int(fields[1]), need_double(fields[2]));
        break;
      }
      case Section::supply: {
        if (fields.size() != 1) throw ParseError(lineno, "supply row needs 1 field");
        inst.agent_supply = need_int(fields[0]);
        break;
      }
      case Section::none:
        throw ParseError(lineno, "data before any section header");
    }
  }

  if (!matrix_seen) inst.travel = TravelTime::euclidean(inst.customers);
  if (const auto* depot = inst.find_customer(0)) inst.horizon = depot->due_date;
  inst.validate();
  return inst;
}

inline DrfspInstance parse_instance(const std::string& text) {
  std::istringstream in(text);
  return parse_instance(in);
}

} // namespace drfsp
