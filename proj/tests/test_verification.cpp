#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <string>

#include "pbsharp/config.hpp"
#include "pbsharp/constructions.hpp"
#include "pbsharp/mesh.hpp"
#include "pbsharp/quasimeasure.hpp"
#include "pbsharp/quasistate.hpp"
#include "pbsharp/verification.hpp"

using namespace pbsharp;

namespace {

SurfaceMesh axis_icosphere(int level) {
  return build_marked_icosphere(level, {Vec3{1, 0, 0}, Vec3{0, 1, 0}, Vec3{0, 0, 1}});
}

const CheckResult& find_check(const SuiteReport& r, const std::string& name) {
  auto it = std::find_if(r.checks.begin(), r.checks.end(),
                         [&](const CheckResult& c) { return c.name == name; });
  REQUIRE(it != r.checks.end());
  return *it;
}

}  // namespace

TEST_CASE("the slack budget scales with the mesh resolution") {
  SurfaceMesh coarse = axis_icosphere(2);
  SurfaceMesh fine = axis_icosphere(4);
  CHECK(zapolsky_slack(coarse) == config::kZapolskySlackPerEdge * coarse.max_edge_length());
  CHECK(zapolsky_slack(fine) == config::kZapolskySlackPerEdge * fine.max_edge_length());
  CHECK(zapolsky_slack(fine) < zapolsky_slack(coarse));
}

TEST_CASE("measure axioms hold for both rules on a mid-size sphere") {
  SurfaceMesh m = axis_icosphere(3);
  for (bool three_point : {true, false}) {
    QuasiMeasure qm{three_point ? SolidSetFunction::three_point(m)
                                : SolidSetFunction::median(m)};
    SuiteReport r = measure_axiom_suite(qm, 120, 99);
    CHECK(r.passed());
    CHECK(r.violations.empty());
    CHECK(find_check(r, "tau-normalization").passed);
    CHECK(find_check(r, "tau-binary").passed);
    CHECK(find_check(r, "tau-monotone").passed);
    CHECK(find_check(r, "tau-additive").passed);
    CHECK(find_check(r, "tau-regularity").passed);
    const CheckResult& extends = find_check(r, "tau-extends-nu");
    CHECK(extends.passed);  // requires >= 50 solid draws and zero mismatches
    CHECK(extends.value == 0.0);
    if (three_point) CHECK(find_check(r, "marker-permutation").passed);
  }
}

TEST_CASE("random pairs sit strictly below the bracket bound") {
  SurfaceMesh m = axis_icosphere(3);
  for (bool three_point : {true, false}) {
    QuasiState qs{QuasiMeasure{three_point ? SolidSetFunction::three_point(m)
                                           : SolidSetFunction::median(m)}};
    SuiteReport r = zapolsky_suite(qs, 25, 4242);
    CHECK(r.passed());
    CHECK(r.violations.empty());
    const CheckResult& worst = find_check(r, "zapolsky-margin-max");
    CHECK(worst.passed);
    // Smooth random pairs are far from extremal; the margin is decisively
    // negative, not a tolerance artifact.
    CHECK(worst.value < -1.0);
  }
}

TEST_CASE("the extremal pair saturates the bound within slack") {
  Theorem1Construction built = theorem1_fields({.level = 3});
  QuasiState qs{QuasiMeasure{SolidSetFunction::three_point(built.mesh)}};
  SuiteReport r = zapolsky_pair_check(qs, built.f, built.g, "extremal");
  CHECK(r.passed());
  const CheckResult& c = find_check(r, "extremal");
  CHECK(c.passed);
  // defect^2 - l1 = 0 up to rounding for this pair: equality is attained.
  CHECK(std::abs(c.value) < 1e-9);
  CHECK(c.tolerance == zapolsky_slack(built.mesh));
}

TEST_CASE("a clean suite reports a single margin summary and no rows") {
  SurfaceMesh m = axis_icosphere(2);
  QuasiState qs{QuasiMeasure{SolidSetFunction::three_point(m)}};
  SuiteReport r = zapolsky_suite(qs, 3, 7);
  CHECK(r.passed());
  CHECK(r.violations.is_array());
  CHECK(r.violations.empty());
  REQUIRE(r.checks.size() == 1);
  CHECK(r.checks.front().name == "zapolsky-margin-max");
  CHECK(r.checks.front().tolerance == zapolsky_slack(m));
}

TEST_CASE("median integrals match the direct band search") {
  SurfaceMesh m = axis_icosphere(3);
  SuiteReport r = oracle_agreement_suite(m, 20, 5);
  CHECK(r.passed());
  CHECK(r.violations.empty());
  const CheckResult& c = find_check(r, "median-oracle-agreement");
  CHECK(c.passed);
  CHECK(c.tolerance == std::max(config::kOracleToleranceFloor, 2.0 * m.max_edge_length()));
}

TEST_CASE("suite reports merge checks and violations") {
  SuiteReport a;
  a.checks.push_back({"one", 1.0, 2.0, true, ""});
  SuiteReport b;
  b.checks.push_back({"two", 5.0, 1.0, false, "over"});
  b.violations.push_back({{"check", "two"}});
  CHECK(a.passed());
  CHECK_FALSE(b.passed());
  a.merge(b);
  CHECK(a.checks.size() == 2);
  CHECK(a.violations.size() == 1);
  CHECK_FALSE(a.passed());
}
