#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "pbsharp/poisson.hpp"
#include "pbsharp/quasistate.hpp"

namespace pbsharp {

/// One verified quantity together with the tolerance it was held to.
struct CheckResult {
  std::string name;
  double value = 0.0;
  double tolerance = 0.0;
  bool passed = false;
  std::string detail;
};

struct SuiteReport {
  std::vector<CheckResult> checks;
  nlohmann::ordered_json violations = nlohmann::ordered_json::array();

  bool passed() const;
  void merge(SuiteReport other);
};

/// Allowed discretization excess of defect^2 over the bracket l1 norm,
/// proportional to the mesh resolution.
double zapolsky_slack(const SurfaceMesh& mesh);

/// Randomized checks of the quasi-measure axioms on sampled vertex sets:
/// values stay in {0,1}, normalization, monotonicity under inclusion,
/// additivity over components, agreement with nu on solid sets, weak inner
/// regularity, and marker-permutation symmetry for the three-point rule.
SuiteReport measure_axiom_suite(const QuasiMeasure& qm, int sampled_sets, std::uint64_t seed);

/// Seeded random smooth field pairs; each must satisfy
/// defect^2 <= l1 + slack. Violations carry the field coefficients so the
/// case can be replayed bit for bit.
SuiteReport zapolsky_suite(const QuasiState& state, int trials, std::uint64_t seed);

/// Same inequality for one explicit field pair.
SuiteReport zapolsky_pair_check(const QuasiState& state, const ScalarField& f,
                                const ScalarField& g, const std::string& label);

/// Median quasi-integral against the direct level-band median search.
SuiteReport oracle_agreement_suite(const SurfaceMesh& mesh, int fields, std::uint64_t seed);

}  // namespace pbsharp
