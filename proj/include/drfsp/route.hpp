#pragma once

#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "drfsp/format.hpp"
#include "drfsp/instance.hpp"

namespace drfsp {

// One stop on a route: the timetable entry (by index into the scenario's
// timetable) and the time service starts there.
struct Visit {
  int entry_index = 0;
  double start = 0;

  bool operator==(const Visit&) const = default;
};

// Depot-to-depot visit sequence for one agent type in one scenario. The
// depot start (time 0) and the final depot are implicit.
struct Route {
  int type_id = 0;
  int scenario = 0;
  std::vector<Visit> visits;

  bool empty() const { return visits.empty(); }

  const TimetableEntry& entry_at(const DrfspInstance& inst, int pos) const {
    return inst.scenarios.at(scenario).timetable.at(visits.at(pos).entry_index);
  }

  std::vector<int> entry_ids(const DrfspInstance& inst) const {
    std::vector<int> out;
    out.reserve(visits.size());
    for (int i = 0; i < static_cast<int>(visits.size()); ++i) out.push_back(entry_at(inst, i).entry_id);
    return out;
  }
};

struct Propagation {
  bool feasible = true;
  std::vector<double> starts;  // service start per visit, earliest-start policy
  double depot_return = 0;     // arrival time back at the depot
  int violation_pos = -1;      // first visit whose deadline is missed
};

// Forward earliest-start propagation over an ordered list of timetable
// entries: leave the depot at time 0, wait for windows to open, flag the
// first missed deadline. Service may start as late as l_i, but the earliest
// schedule is the feasibility certificate.
inline Propagation propagate_order(const DrfspInstance& inst, int k, std::span<const int> order) {
  const auto& g = inst.scenarios.at(k).timetable;
  Propagation p;
  double departure = 0;
  int prev_customer = 0;
  for (std::size_t pos = 0; pos < order.size(); ++pos) {
    const auto& e = g.at(order[pos]);
    const double arrival = departure + inst.travel(prev_customer, e.customer_id);
    const double start = std::max(arrival, e.window.e);
    p.starts.push_back(start);
    if (start > e.window.l) {
      p.feasible = false;
      p.violation_pos = static_cast<int>(pos);
      return p;
    }
    departure = start + e.service_time;
    prev_customer = e.customer_id;
  }
  p.depot_return = order.empty() ? 0.0 : departure + inst.travel(prev_customer, 0);
  return p;
}

inline double depot_return_time(const DrfspInstance& inst, const Route& r) {
  if (r.empty()) return 0.0;
  const auto& last = r.entry_at(inst, static_cast<int>(r.visits.size()) - 1);
  return r.visits.back().start + last.service_time + inst.travel(last.customer_id, 0);
}

// Debug form: "t k : 0 -> (entry@start) -> ... -> N"
inline std::string dump_route(const DrfspInstance& inst, const Route& r) {
  std::ostringstream out;
  out << r.type_id << " " << r.scenario << " : 0";
  for (std::size_t i = 0; i < r.visits.size(); ++i) {
    const auto& e = r.entry_at(inst, static_cast<int>(i));
    out << " -> (" << e.entry_id << "@" << format_double(r.visits[i].start) << ")";
  }
  out << " -> N";
  return out.str();
}

} // namespace drfsp
