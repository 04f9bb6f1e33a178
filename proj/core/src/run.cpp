#include "pbsharp/run.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <limits>
#include <stdexcept>
#include <utility>

#include "pbsharp/config.hpp"
#include "pbsharp/constructions.hpp"
#include "pbsharp/io.hpp"
#include "pbsharp/poisson.hpp"
#include "pbsharp/quasimeasure.hpp"
#include "pbsharp/quasistate.hpp"
#include "pbsharp/random_fields.hpp"
#include "pbsharp/verification.hpp"

namespace pbsharp {
namespace {

using nlohmann::ordered_json;

class Stopwatch {
 public:
  double elapsed_ms() const {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

void absorb(RunReport& report, SuiteReport suite) {
  for (auto& c : suite.checks) report.checks.push_back(std::move(c));
  for (auto& v : suite.violations) report.violations.push_back(std::move(v));
}

std::array<Vec3, 3> axis_markers() {
  return {Vec3{1.0, 0.0, 0.0}, Vec3{0.0, 1.0, 0.0}, Vec3{0.0, 0.0, 1.0}};
}

struct PairNumbers {
  double zeta_f = 0.0;
  double zeta_g = 0.0;
  double zeta_sum = 0.0;
  double defect = 0.0;
  double l1_norm = 0.0;
  double ratio = 0.0;
};

PairNumbers evaluate_pair(const QuasiState& state, const SurfaceMesh& mesh, const ScalarField& f,
                          const ScalarField& g) {
  PairNumbers out;
  out.zeta_f = state.quasi_integral(f);
  out.zeta_g = state.quasi_integral(g);
  out.zeta_sum = state.quasi_integral(field_sum(mesh, f, g));
  out.defect = std::abs(out.zeta_sum - out.zeta_f - out.zeta_g);
  out.l1_norm = poisson_l1(mesh, f, g).l1_norm;
  if (out.l1_norm > 0.0) {
    out.ratio = out.defect * out.defect / out.l1_norm;
  } else {
    out.ratio = out.defect == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  }
  return out;
}

}  // namespace

RunReport run_theorem1(const Theorem1Options& options) {
  Stopwatch watch;
  if (options.levels.empty()) {
    throw std::invalid_argument("at least one refinement level is required");
  }
  std::vector<int> levels = options.levels;
  std::sort(levels.begin(), levels.end());
  levels.erase(std::unique(levels.begin(), levels.end()), levels.end());

  RunReport report;
  report.command = "theorem1";
  report.params["levels"] = levels;
  report.params["profile"] = options.profile;
  report.params["covering_samples"] = options.covering_samples;
  report.params["seed"] = options.seed;

  SmoothStepProfile profile = SmoothStepProfile::from_name(options.profile);

  ordered_json table = ordered_json::array();
  std::vector<double> ratio_deviation;
  PairNumbers top;  // finest level
  double top_max_edge = 0.0;

  for (int level : levels) {
    Theorem1Construction built = theorem1_fields({.level = level, .profile = profile});
    QuasiState state{QuasiMeasure{SolidSetFunction::three_point(built.mesh)}};
    PairNumbers n = evaluate_pair(state, built.mesh, built.f, built.g);
    ratio_deviation.push_back(std::abs(n.ratio - 1.0));

    ordered_json row;
    row["level"] = level;
    row["vertices"] = built.mesh.vertex_count();
    row["triangles"] = built.mesh.triangle_count();
    row["max_edge"] = built.mesh.max_edge_length();
    row["zeta_f"] = n.zeta_f;
    row["zeta_g"] = n.zeta_g;
    row["zeta_sum"] = n.zeta_sum;
    row["defect"] = n.defect;
    row["l1_norm"] = n.l1_norm;
    row["ratio"] = n.ratio;
    table.push_back(std::move(row));

    if (level == levels.back()) {
      top = n;
      top_max_edge = built.mesh.max_edge_length();
      if (options.covering_samples > 0) {
        CoveringCountResult cc = covering_count_diagnostic(built.mesh, built.f, built.g,
                                                           options.covering_samples, options.seed);
        report.checks.push_back(
            {"covering-mean", std::abs(cc.mean - 2.0), config::kCoveringTolerance,
             std::abs(cc.mean - 2.0) <= config::kCoveringTolerance,
             "|mean preimage count - 2| over " + std::to_string(cc.samples) + " samples, " +
                 std::to_string(cc.excluded) + " boundary-grazing draws redrawn"});
      }
    }
  }
  report.tables["convergence"] = std::move(table);

  double zeta_dev =
      std::max({std::abs(top.zeta_f), std::abs(top.zeta_g), std::abs(top.zeta_sum - 1.0)});
  report.checks.push_back({"zeta-exact", zeta_dev, 0.0, zeta_dev == 0.0,
                           "max deviation of (zeta F, zeta G, zeta F+G) from (0, 0, 1)"});
  report.checks.push_back({"l1-near-one", std::abs(top.l1_norm - 1.0), config::kL1Tolerance,
                           std::abs(top.l1_norm - 1.0) <= config::kL1Tolerance,
                           "bracket l1 norm against its limit 1"});
  report.checks.push_back({"ratio-near-one", std::abs(top.ratio - 1.0), config::kRatioTolerance,
                           std::abs(top.ratio - 1.0) <= config::kRatioTolerance,
                           "defect^2 / l1_norm against its limit 1"});
  if (levels.size() >= 2) {
    // Deviations at rounding-noise scale count as converged: there is no
    // discretization error left whose decrease could be measured.
    for (double& d : ratio_deviation) d = std::max(d, config::kConvergedFloor);
    double worst_rise = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 1; i < ratio_deviation.size(); ++i) {
      worst_rise = std::max(worst_rise, ratio_deviation[i] - ratio_deviation[i - 1]);
    }
    report.checks.push_back({"ratio-deviation-monotone", worst_rise, 0.0, worst_rise <= 0.0,
                             "max rise of |ratio - 1| between consecutive levels; refinement "
                             "must not move the ratio away from 1"});
  }

  report.provenance["mesh"] = {{"builder", "icosphere"}, {"markers", "axes"}};
  report.provenance["profile"] = options.profile;
  report.provenance["finest_max_edge"] = top_max_edge;
  report.timing_ms = watch.elapsed_ms();
  return report;
}

RunReport run_theorem2(const Theorem2Options& options) {
  Stopwatch watch;
  if (options.epsilons.empty()) {
    throw std::invalid_argument("at least one epsilon is required");
  }
  std::vector<double> epsilons = options.epsilons;
  std::sort(epsilons.begin(), epsilons.end(), std::greater<>());
  epsilons.erase(std::unique(epsilons.begin(), epsilons.end()), epsilons.end());

  RunReport report;
  report.command = "theorem2";
  report.params["epsilons"] = epsilons;
  report.params["level"] = options.level;

  ordered_json table = ordered_json::array();
  ordered_json grids = ordered_json::array();
  std::vector<double> ratios;

  for (double eps : epsilons) {
    Theorem2Construction built = theorem2_surface({.level = options.level, .epsilon = eps});
    QuasiState state{QuasiMeasure{SolidSetFunction::median(built.mesh)}};
    PairNumbers n = evaluate_pair(state, built.mesh, built.f, built.g);
    const double eff = built.epsilon_effective;
    const double lower = (1.0 - 3.0 * eff) * (1.0 - 3.0 * eff);
    ratios.push_back(n.ratio);

    ordered_json row;
    row["epsilon_requested"] = eps;
    row["epsilon_effective"] = eff;
    row["grid_n"] = built.grid_n;
    row["vertices"] = built.mesh.vertex_count();
    row["triangles"] = built.mesh.triangle_count();
    row["max_edge"] = built.mesh.max_edge_length();
    row["zeta_f"] = n.zeta_f;
    row["zeta_g"] = n.zeta_g;
    row["zeta_sum"] = n.zeta_sum;
    row["defect"] = n.defect;
    row["l1_norm"] = n.l1_norm;
    row["lower_bound"] = lower;
    row["ratio"] = n.ratio;
    table.push_back(std::move(row));
    grids.push_back(ordered_json{{"epsilon_requested", eps},
                                 {"epsilon_effective", eff},
                                 {"grid_n", built.grid_n},
                                 {"smoothing_radius", built.smoothing_radius}});

    const std::string tag = "@" + format_double(eps);
    report.checks.push_back({"zeta-f" + tag, std::abs(n.zeta_f - eff), config::kZetaTolerance,
                             std::abs(n.zeta_f - eff) <= config::kZetaTolerance,
                             "|zeta F - epsilon| on the median surface"});
    report.checks.push_back({"zeta-g" + tag, std::abs(n.zeta_g - eff), config::kZetaTolerance,
                             std::abs(n.zeta_g - eff) <= config::kZetaTolerance,
                             "|zeta G - epsilon| on the median surface"});
    report.checks.push_back({"zeta-sum" + tag, std::abs(n.zeta_sum - (1.0 - eff)),
                             config::kZetaTolerance,
                             std::abs(n.zeta_sum - (1.0 - eff)) <= config::kZetaTolerance,
                             "|zeta (F+G) - (1 - epsilon)| on the median surface"});
    const double sandwich = std::min(n.l1_norm - lower, 1.0 - n.l1_norm);
    report.checks.push_back({"l1-sandwich" + tag, sandwich, 0.0, sandwich > 0.0,
                             "min(l1 - (1-3*eps)^2, 1 - l1); both must be strictly positive"});
    const double floor = lower - config::kRatioSlack;
    report.checks.push_back({"ratio-floor" + tag, n.ratio, floor, n.ratio >= floor,
                             "defect^2 / l1_norm against (1-3*eps)^2 - " +
                                 format_double(config::kRatioSlack)});
  }
  report.tables["sharpness"] = std::move(table);

  if (epsilons.size() >= 2) {
    double worst_drop = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 1; i < ratios.size(); ++i) {
      worst_drop = std::max(worst_drop, ratios[i - 1] - ratios[i]);
    }
    report.checks.push_back({"ratio-increasing", worst_drop, 0.0, worst_drop < 0.0,
                             "max drop of the ratio while epsilon decreases; the ratio must "
                             "rise strictly toward 1"});
  }

  report.provenance["mesh"] = {{"builder", "median-lattice"}, {"level", options.level}};
  report.provenance["grids"] = std::move(grids);
  report.timing_ms = watch.elapsed_ms();
  return report;
}

namespace {

SurfaceMesh verify_mesh(const VerifyOptions& options, ordered_json& mesh_provenance) {
  if (!options.mesh_file.empty()) {
    mesh_provenance = {{"file", options.mesh_file}};
    return load_mesh(options.mesh_file);
  }
  if (options.level < 0 || options.level > 9) {
    throw std::invalid_argument("refinement level must be between 0 and 9");
  }
  mesh_provenance = {{"builder", "icosphere"}, {"level", options.level}, {"markers", "axes"}};
  return build_marked_icosphere(options.level, axis_markers());
}

SolidSetFunction verify_rule(const VerifyOptions& options, const SurfaceMesh& mesh) {
  if (options.quasi_state == "three-point") return SolidSetFunction::three_point(mesh);
  if (options.quasi_state == "median") return SolidSetFunction::median(mesh);
  throw std::invalid_argument("unknown quasi-state: " + options.quasi_state +
                              " (expected three-point or median)");
}

SurfaceMesh mesh_from_provenance(const nlohmann::json& m) {
  if (m.contains("file")) return load_mesh(m.at("file").get<std::string>());
  if (m.contains("builder") && m.at("builder") == "icosphere") {
    return build_marked_icosphere(m.at("level").get<int>(), axis_markers());
  }
  throw std::invalid_argument("violation row carries no rebuildable mesh provenance");
}

}  // namespace

RunReport run_verify(const VerifyOptions& options) {
  Stopwatch watch;
  if (!options.field_files.empty() && options.field_files.size() != 2) {
    throw std::invalid_argument("expected exactly two field files");
  }
  if (options.trials < 1) throw std::invalid_argument("trials must be positive");
  if (options.oracle_fields < 0) throw std::invalid_argument("oracle fields must be nonnegative");

  RunReport report;
  report.command = "verify";
  report.params["quasi_state"] = options.quasi_state;
  report.params["level"] = options.level;
  report.params["mesh_file"] = options.mesh_file;
  report.params["field_files"] = options.field_files;
  report.params["trials"] = options.trials;
  report.params["oracle_fields"] = options.oracle_fields;
  report.params["seed"] = options.seed;

  ordered_json mesh_provenance;
  SurfaceMesh mesh = verify_mesh(options, mesh_provenance);
  QuasiState state{QuasiMeasure{verify_rule(options, mesh)}};

  report.provenance["mesh"] = mesh_provenance;
  report.provenance["vertices"] = mesh.vertex_count();
  report.provenance["triangles"] = mesh.triangle_count();
  report.provenance["max_edge"] = mesh.max_edge_length();
  report.provenance["slack_per_edge"] = config::kZapolskySlackPerEdge;
  report.provenance["slack"] = zapolsky_slack(mesh);

  if (options.field_files.size() == 2) {
    ScalarField f = load_field(mesh, options.field_files[0]);
    ScalarField g = load_field(mesh, options.field_files[1]);
    absorb(report, zapolsky_pair_check(state, f, g, "zapolsky-pair"));
  }
  absorb(report, measure_axiom_suite(state.measure(), 200, options.seed));
  absorb(report, zapolsky_suite(state, options.trials, options.seed + 1));
  if (options.oracle_fields > 0) {
    absorb(report, oracle_agreement_suite(mesh, options.oracle_fields, options.seed + 2));
  }

  // Stamp every violation row with enough context to rebuild the case.
  for (auto& row : report.violations) {
    row["quasi_state"] = options.quasi_state;
    row["mesh"] = mesh_provenance;
  }

  report.timing_ms = watch.elapsed_ms();
  return report;
}

RunReport run_replay(const std::string& violation_file) {
  Stopwatch watch;
  std::ifstream in(violation_file);
  if (!in) throw std::runtime_error("cannot open " + violation_file);
  nlohmann::json doc = nlohmann::json::parse(in, nullptr, /*allow_exceptions=*/false);
  if (doc.is_discarded()) {
    throw std::invalid_argument("violation file is not valid json: " + violation_file);
  }

  nlohmann::json rows;
  if (doc.is_object() && doc.contains("violations")) {
    rows = doc.at("violations");
  } else if (doc.is_array()) {
    rows = doc;
  } else {
    rows = nlohmann::json::array({doc});
  }

  RunReport report;
  report.command = "replay";
  report.params["file"] = violation_file;

  int replayed = 0;
  int skipped = 0;
  for (const auto& row : rows) {
    if (!row.is_object() || !row.contains("coefficients_f") || !row.contains("coefficients_g") ||
        !row.contains("mesh")) {
      ++skipped;
      continue;
    }
    SurfaceMesh mesh = mesh_from_provenance(row.at("mesh"));
    std::string quasi_state = row.value("quasi_state", std::string("three-point"));
    VerifyOptions rule_opts;
    rule_opts.quasi_state = quasi_state;
    QuasiState state{QuasiMeasure{verify_rule(rule_opts, mesh)}};

    RandomFieldCoefficients cf{row.at("coefficients_f").get<std::vector<double>>()};
    RandomFieldCoefficients cg{row.at("coefficients_g").get<std::vector<double>>()};
    ScalarField f = evaluate_field(mesh, cf);
    ScalarField g = evaluate_field(mesh, cg);

    double pi = state.nonlinearity_defect(f, g);
    double l1 = poisson_l1(mesh, f, g).l1_norm;
    double slack = zapolsky_slack(mesh);
    double margin = pi * pi - l1;
    std::string tag = "#" + std::to_string(replayed);
    report.checks.push_back({"replay-zapolsky" + tag, margin, slack, margin <= slack,
                             "recomputed defect^2 - l1_norm for the stored coefficients"});
    ordered_json echo;
    echo["check"] = "replay";
    echo["quasi_state"] = quasi_state;
    echo["defect"] = pi;
    echo["l1_norm"] = l1;
    echo["slack"] = slack;
    if (replayed == 0) report.provenance["mesh"] = ordered_json(row.at("mesh"));
    report.tables["replay" + tag] = std::move(echo);
    ++replayed;
  }
  if (replayed == 0) {
    throw std::invalid_argument("no replayable violation rows in " + violation_file);
  }
  report.params["replayed"] = replayed;
  report.params["skipped"] = skipped;
  report.timing_ms = watch.elapsed_ms();
  return report;
}

}  // namespace pbsharp
