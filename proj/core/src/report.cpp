#include "pbsharp/report.hpp"

#include <algorithm>
#include <sstream>

#include "pbsharp/io.hpp"

namespace pbsharp {

bool RunReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

nlohmann::ordered_json RunReport::to_json() const {
  nlohmann::ordered_json j;
  j["schema"] = schema;
  j["command"] = command;
  j["params"] = params;
  j["provenance"] = provenance;
  j["checks"] = nlohmann::ordered_json::array();
  for (const CheckResult& c : checks) {
    nlohmann::ordered_json row;
    row["name"] = c.name;
    row["value"] = c.value;
    row["tolerance"] = c.tolerance;
    row["passed"] = c.passed;
    row["detail"] = c.detail;
    j["checks"].push_back(std::move(row));
  }
  j["tables"] = tables;
  j["violations"] = violations;
  j["passed"] = passed();
  j["timing_ms"] = timing_ms;
  return j;
}

std::string RunReport::to_csv() const {
  std::ostringstream out;
  out << "section,name,value,tolerance,passed\n";
  for (const CheckResult& c : checks)
    out << "check," << c.name << ',' << format_double(c.value) << ','
        << format_double(c.tolerance) << ',' << (c.passed ? 1 : 0) << '\n';
  // Tables follow as their own blocks: one header line per table, then rows
  // in column order.
  for (const auto& [table_name, rows] : tables.items()) {
    if (!rows.is_array() || rows.empty()) continue;
    out << "table," << table_name;
    for (const auto& [col, value] : rows.front().items()) {
      (void)value;
      out << ',' << col;
    }
    out << '\n';
    for (const auto& row : rows) {
      out << "row," << table_name;
      for (const auto& [col, value] : row.items()) {
        (void)col;
        if (value.is_number_float())
          out << ',' << format_double(value.get<double>());
        else
          out << ',' << value.dump();
      }
      out << '\n';
    }
  }
  return out.str();
}

}  // namespace pbsharp
