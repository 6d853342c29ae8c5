#pragma once

#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <vector>

#include "drfsp/format.hpp"

namespace drfsp {

class ParseError : public std::runtime_error {
public:
  ParseError(int line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  int line() const { return line_; }

private:
  int line_;
};

// One row of the Solomon customer table. Customer 0 is the depot. The demand
// column is parsed for fidelity but plays no role in the model.
struct SolomonCustomer {
  int id = 0;
  double x = 0;
  double y = 0;
  double demand = 0;
  double ready_time = 0;
  double due_date = 0;
  double service_time = 0;

  bool operator==(const SolomonCustomer&) const = default;
};

struct SolomonData {
  std::string name;
  long long vehicle_count = 0;
  double vehicle_capacity = 0;
  std::vector<SolomonCustomer> customers; // file order, depot included

  const SolomonCustomer& depot() const {
    for (const auto& c : customers)
      if (c.id == 0) return c;
    throw std::runtime_error("no depot row");
  }
};

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

inline std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < s.size() && s[j] != ' ' && s[j] != '\t' && s[j] != '\r') ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

} // namespace detail

// Parses the classic Solomon benchmark layout: name line, VEHICLE section
// (NUMBER, CAPACITY), then the 7-column CUSTOMER table. Rows are returned in
// file order; errors carry the offending line number.
inline SolomonData parse_solomon(std::istream& in) {
  SolomonData data;
  std::string line;
  int lineno = 0;

  auto next_nonblank = [&](std::string_view what) -> std::string {
    while (std::getline(in, line)) {
      ++lineno;
      auto t = detail::trim(line);
      if (!t.empty()) return std::string(t);
    }
    throw ParseError(lineno, "unexpected end of file while looking for " + std::string(what));
  };

  data.name = next_nonblank("instance name");

  if (next_nonblank("VEHICLE section") != "VEHICLE")
    throw ParseError(lineno, "malformed header: expected VEHICLE");
  {
    std::string hdr = next_nonblank("vehicle header");
    if (hdr.find("NUMBER") == std::string::npos)
      throw ParseError(lineno, "malformed header: expected NUMBER CAPACITY");
    std::string counts = next_nonblank("vehicle counts");
    auto fields = detail::split_ws(counts);
    double cap = 0;
    if (fields.size() != 2 || !parse_i64(fields[0], data.vehicle_count) || !parse_double(fields[1], cap))
      throw ParseError(lineno, "malformed vehicle counts: '" + counts + "'");
    data.vehicle_capacity = cap;
  }

  if (next_nonblank("CUSTOMER section") != "CUSTOMER")
    throw ParseError(lineno, "malformed header: expected CUSTOMER");
  {
    std::string hdr = next_nonblank("customer table header");
    if (hdr.find("CUST") == std::string::npos)
      throw ParseError(lineno, "malformed header: expected CUST NO. column header");
  }

  std::unordered_set<int> seen;
  while (std::getline(in, line)) {
    ++lineno;
    auto t = detail::trim(line);
    if (t.empty()) continue;
    auto fields = detail::split_ws(t);
    if (fields.size() != 7)
      throw ParseError(lineno, "expected 7 fields, got " + std::to_string(fields.size()));
    double vals[7];
    for (int i = 0; i < 7; ++i)
      if (!parse_double(fields[i], vals[i]))
        throw ParseError(lineno, "non-numeric field '" + std::string(fields[i]) + "'");
    SolomonCustomer c;
    c.id = static_cast<int>(vals[0]);
    if (static_cast<double>(c.id) != vals[0])
      throw ParseError(lineno, "customer id is not an integer");
    c.x = vals[1];
    c.y = vals[2];
    c.demand = vals[3];
    c.ready_time = vals[4];
    c.due_date = vals[5];
    c.service_time = vals[6];
    if (!seen.insert(c.id).second)
      throw ParseError(lineno, "duplicate customer id " + std::to_string(c.id));
    if (c.ready_time > c.due_date)
      throw ParseError(lineno, "ready time exceeds due date for customer " + std::to_string(c.id));
    if (c.service_time < 0)
      throw ParseError(lineno, "negative service time for customer " + std::to_string(c.id));
    data.customers.push_back(c);
  }

  if (data.customers.empty()) throw ParseError(lineno, "no customer rows");
  if (!seen.contains(0)) throw ParseError(lineno, "missing depot row (customer 0)");
  return data;
}

inline SolomonData parse_solomon(const std::string& text) {
  std::istringstream in(text);
  return parse_solomon(in);
}

inline void write_solomon(std::ostream& out, const SolomonData& data) {
  out << data.name << "\n\n";
  out << "VEHICLE\n";
  out << "NUMBER     CAPACITY\n";
  out << "  " << data.vehicle_count << "         " << format_double(data.vehicle_capacity) << "\n\n";
  out << "CUSTOMER\n";
  out << "CUST NO.  XCOORD.   YCOORD.    DEMAND   READY TIME   DUE DATE   SERVICE TIME\n\n";
  for (const auto& c : data.customers) {
    out << "    " << c.id << "   " << format_double(c.x) << "   " << format_double(c.y) << "   "
        << format_double(c.demand) << "   " << format_double(c.ready_time) << "   "
        << format_double(c.due_date) << "   " << format_double(c.service_time) << "\n";
  }
}

inline std::string write_solomon(const SolomonData& data) {
  std::ostringstream out;
  write_solomon(out, data);
  return out.str();
}

} // namespace drfsp
