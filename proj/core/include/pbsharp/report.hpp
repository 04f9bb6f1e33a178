#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "pbsharp/verification.hpp"

namespace pbsharp {

/// Result envelope for one command invocation. Serialization is fully
/// deterministic given (command, params, seed); only timing_ms varies
/// between runs.
struct RunReport {
  int schema = 1;
  std::string command;
  nlohmann::ordered_json params = nlohmann::ordered_json::object();
  nlohmann::ordered_json provenance = nlohmann::ordered_json::object();
  std::vector<CheckResult> checks;
  nlohmann::ordered_json tables = nlohmann::ordered_json::object();
  nlohmann::ordered_json violations = nlohmann::ordered_json::array();
  double timing_ms = 0.0;

  bool passed() const;
  nlohmann::ordered_json to_json() const;
  std::string to_csv() const;
};

}  // namespace pbsharp
