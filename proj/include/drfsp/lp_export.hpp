#pragma once

#include <algorithm>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "drfsp/format.hpp"
#include "drfsp/instance.hpp"

namespace drfsp {

// Big-M constant for the time-consistency rows: large enough that a relaxed
// row never binds, i.e. at least the latest possible start plus the largest
// service and travel times.
struct BigMConfig {
  double M = 0;

  static BigMConfig derive(const DrfspInstance& inst) {
    double max_l = inst.horizon;
    double max_s = 0;
    double max_d = 0;
    std::vector<int> ids;
    for (const auto& s : inst.scenarios)
      for (const auto& e : s.timetable) {
        max_l = std::max(max_l, e.window.l);
        max_s = std::max(max_s, e.service_time);
        ids.push_back(e.customer_id);
      }
    ids.push_back(0);
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    for (std::size_t a = 0; a < ids.size(); ++a)
      for (std::size_t b = a + 1; b < ids.size(); ++b)
        max_d = std::max(max_d, inst.travel(ids[a], ids[b]));
    return BigMConfig{max_l + max_s + max_d};
  }
};

// Writes the two-stage min-max MILP in CPLEX LP format, one binary arc
// variable per stage/scenario/type/agent/arc. Variable naming:
//   x_<s>_<k>_<t>_<p>_<i>_<j>  arc from i to j (0 = depot, N = final depot)
//   t_<s>_<k>_<t>_<p>_<i>     service start at entry i
//   y_<t>_<p>                 first-stage purchase of agent p of type t
//   z                         min-max objective
// Time-consistency rows follow the model literally: they link entry pairs
// only, so departure times from the depot are not constrained here even
// though the solvers and the validator enforce them.
inline void write_lp(std::ostream& out, const DrfspInstance& inst,
                     const BigMConfig& bigm = BigMConfig{}) {
  const double M = bigm.M > 0 ? bigm.M : BigMConfig::derive(inst).M;
  const int P = inst.supply();
  const int m = inst.scenario_count();

  auto xname = [](int s, int k, int t, int p, const std::string& i, const std::string& j) {
    return "x_" + std::to_string(s) + "_" + std::to_string(k) + "_" + std::to_string(t) + "_" +
           std::to_string(p) + "_" + i + "_" + j;
  };
  auto tname = [](int s, int k, int t, int p, int i) {
    return "t_" + std::to_string(s) + "_" + std::to_string(k) + "_" + std::to_string(t) + "_" +
           std::to_string(p) + "_" + std::to_string(i);
  };
  auto yname = [](int t, int p) { return "y_" + std::to_string(t) + "_" + std::to_string(p); };
  auto id = [](int entry_id) { return std::to_string(entry_id); };

  out << "\\ DRFSP two-stage min-max MILP, M = " << format_double(M) << "\n";
  out << "Minimize\n obj: z\n";
  out << "Subject To\n";

  std::vector<std::string> binaries;

  for (int k = 0; k < m; ++k) {
    const auto& g = inst.scenarios[k].timetable;
    const double sigma = inst.scenarios[k].inflation;

    // (1b) min-max linking rows
    out << " c1b_" << k << ":";
    for (const auto& type : inst.types)
      for (int p = 0; p < P; ++p) {
        out << " + " << format_double(type.first_stage_cost) << " " << yname(type.id, p);
        for (const auto& e : g)
          out << " + " << format_double(sigma * type.first_stage_cost) << " "
              << xname(1, k, type.id, p, "0", id(e.entry_id));
      }
    out << " - z <= 0\n";

    for (const auto& type : inst.types) {
      for (int p = 0; p < P; ++p) {
        for (int s = 0; s < 2; ++s) {
          // (1d) leave the depot at most once per stage
          out << " c1d_" << s << "_" << k << "_" << type.id << "_" << p << ":";
          for (const auto& e : g) out << " + " << xname(s, k, type.id, p, "0", id(e.entry_id));
          out << " + " << xname(s, k, type.id, p, "0", "N") << " <= 1\n";

          for (const auto& ej : g) {
            // (1e) compatibility
            out << " c1e_" << s << "_" << k << "_" << type.id << "_" << p << "_" << ej.entry_id << ":";
            out << " + " << xname(s, k, type.id, p, "0", id(ej.entry_id));
            for (const auto& ei : g) {
              if (ei.entry_id == ej.entry_id) continue;
              out << " + " << xname(s, k, type.id, p, id(ei.entry_id), id(ej.entry_id));
            }
            out << " <= " << (ej.compatible_with(type.id) ? 1 : 0) << "\n";

            // (1f) flow conservation through each entry
            out << " c1f_" << s << "_" << k << "_" << type.id << "_" << p << "_" << ej.entry_id << ":";
            out << " + " << xname(s, k, type.id, p, "0", id(ej.entry_id));
            for (const auto& ei : g) {
              if (ei.entry_id == ej.entry_id) continue;
              out << " + " << xname(s, k, type.id, p, id(ei.entry_id), id(ej.entry_id));
            }
            for (const auto& ei : g) {
              if (ei.entry_id == ej.entry_id) continue;
              out << " - " << xname(s, k, type.id, p, id(ej.entry_id), id(ei.entry_id));
            }
            out << " - " << xname(s, k, type.id, p, id(ej.entry_id), "N") << " = 0\n";

            // (1g) big-M time consistency between entry pairs
            for (const auto& ei : g) {
              if (ei.entry_id == ej.entry_id) continue;
              const double d = inst.travel(ei.customer_id, ej.customer_id);
              out << " c1g_" << s << "_" << k << "_" << type.id << "_" << p << "_" << ei.entry_id
                  << "_" << ej.entry_id << ": + " << tname(s, k, type.id, p, ei.entry_id) << " - "
                  << tname(s, k, type.id, p, ej.entry_id) << " + " << format_double(M) << " "
                  << xname(s, k, type.id, p, id(ei.entry_id), id(ej.entry_id))
                  << " <= " << format_double(M - ei.service_time - d) << "\n";
            }
          }
        }

        // (1j) first-stage departures require the purchase
        for (const auto& e : g) {
          out << " c1j_" << k << "_" << type.id << "_" << p << "_" << e.entry_id << ": + "
              << xname(0, k, type.id, p, "0", id(e.entry_id)) << " - " << yname(type.id, p)
              << " <= 0\n";
        }

        for (int s = 0; s < 2; ++s) {
          for (const auto& ej : g) binaries.push_back(xname(s, k, type.id, p, "0", id(ej.entry_id)));
          binaries.push_back(xname(s, k, type.id, p, "0", "N"));
          for (const auto& ei : g) {
            binaries.push_back(xname(s, k, type.id, p, id(ei.entry_id), "N"));
            for (const auto& ej : g)
              if (ei.entry_id != ej.entry_id)
                binaries.push_back(xname(s, k, type.id, p, id(ei.entry_id), id(ej.entry_id)));
          }
        }
      }
    }
  }

  // (1c) every entry is visited
  for (int k = 0; k < m; ++k) {
    for (const auto& ej : inst.scenarios[k].timetable) {
      out << " c1c_" << k << "_" << ej.entry_id << ":";
      for (const auto& type : inst.types)
        for (int p = 0; p < P; ++p)
          for (int s = 0; s < 2; ++s) {
            out << " + " << xname(s, k, type.id, p, "0", id(ej.entry_id));
            for (const auto& ei : inst.scenarios[k].timetable) {
              if (ei.entry_id == ej.entry_id) continue;
              out << " + " << xname(s, k, type.id, p, id(ei.entry_id), id(ej.entry_id));
            }
          }
      out << " >= 1\n";
    }
  }

  // (1h)-(1i) window bounds on the service start variables
  out << "Bounds\n";
  for (int k = 0; k < m; ++k)
    for (const auto& type : inst.types)
      for (int p = 0; p < P; ++p)
        for (int s = 0; s < 2; ++s)
          for (const auto& e : inst.scenarios[k].timetable)
            out << " " << format_double(e.window.e) << " <= " << tname(s, k, type.id, p, e.entry_id)
                << " <= " << format_double(e.window.l) << "\n";

  out << "Binaries\n";
  for (const auto& type : inst.types)
    for (int p = 0; p < P; ++p) binaries.push_back(yname(type.id, p));
  for (const auto& b : binaries) out << " " << b << "\n";
  out << "End\n";
}

inline std::string write_lp(const DrfspInstance& inst) {
  std::ostringstream out;
  write_lp(out, inst);
  return out.str();
}

} // namespace drfsp
