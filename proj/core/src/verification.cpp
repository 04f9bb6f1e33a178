#include "pbsharp/verification.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>
#include <utility>

#include "pbsharp/config.hpp"
#include "pbsharp/random_fields.hpp"

namespace pbsharp {

bool SuiteReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

void SuiteReport::merge(SuiteReport other) {
  for (auto& c : other.checks) checks.push_back(std::move(c));
  for (auto& v : other.violations) violations.push_back(std::move(v));
}

double zapolsky_slack(const SurfaceMesh& mesh) {
  return config::kZapolskySlackPerEdge * mesh.max_edge_length();
}

namespace {

// Distinct sorted values plus the midpoints between them; thresholds are
// taken between values so sublevel sets never cut through a plateau.
std::vector<double> midpoints(const ScalarField& f) {
  std::vector<double> v = f.values;
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  std::vector<double> mids;
  for (size_t i = 0; i + 1 < v.size(); ++i) mids.push_back(0.5 * (v[i] + v[i + 1]));
  return mids;
}

VertexSet sublevel(const SurfaceMesh& mesh, const ScalarField& f, double x, SetKind kind) {
  std::vector<int> members;
  for (int v = 0; v < mesh.vertex_count(); ++v)
    if (f.values[v] < x) members.push_back(v);
  return VertexSet{std::move(members), kind, mesh.id()};
}

// One-ring erosion; the result is a closed subset of s.
VertexSet shrink(const SurfaceMesh& mesh, const VertexSet& s) {
  std::vector<char> in(mesh.vertex_count(), 0);
  for (int v : s.members) in[v] = 1;
  std::vector<int> out;
  const auto& off = mesh.adjacency_offsets();
  const auto& nbr = mesh.neighbors();
  for (int v : s.members) {
    bool interior = true;
    for (int i = off[v]; i < off[v + 1] && interior; ++i) interior = in[nbr[i]];
    if (interior) out.push_back(v);
  }
  return VertexSet{std::move(out), SetKind::closed, mesh.id()};
}

}  // namespace

SuiteReport measure_axiom_suite(const QuasiMeasure& qm, int sampled_sets, std::uint64_t seed) {
  const SurfaceMesh& mesh = qm.mesh();
  std::mt19937_64 rng(seed);
  SuiteReport report;

  auto add_violation = [&](const std::string& check, int trial, const std::string& detail) {
    nlohmann::ordered_json row;
    row["check"] = check;
    row["trial"] = trial;
    row["seed"] = seed;
    row["detail"] = detail;
    report.violations.push_back(std::move(row));
  };

  // Normalization at the trivial sets.
  {
    VertexSet all = make_vertex_set(mesh, [&] {
      std::vector<int> v(mesh.vertex_count());
      for (int i = 0; i < mesh.vertex_count(); ++i) v[i] = i;
      return v;
    }(), SetKind::open);
    VertexSet none = make_vertex_set(mesh, {}, SetKind::open);
    VertexSet all_closed = all, none_closed = none;
    all_closed.kind = SetKind::closed;
    none_closed.kind = SetKind::closed;
    int bad = (qm.tau_open(all) != 1) + (qm.tau_open(none) != 0) +
              (qm.tau_closed(all_closed) != 1) + (qm.tau_closed(none_closed) != 0);
    report.checks.push_back({"tau-normalization", static_cast<double>(bad), 0.0, bad == 0,
                             "tau on the full and the empty set, open and closed"});
  }

  int binary_bad = 0, monotone_bad = 0, additive_bad = 0, regular_bad = 0;
  int multi_component_seen = 0;
  for (int trial = 0; trial < sampled_sets; ++trial) {
    ScalarField f = random_smooth_field(mesh, rng);
    std::vector<double> mids = midpoints(f);
    if (mids.size() < 2) continue;
    std::uniform_int_distribution<size_t> pick(0, mids.size() - 1);
    double x1 = mids[pick(rng)], x2 = mids[pick(rng)];
    if (x1 > x2) std::swap(x1, x2);

    VertexSet u1 = sublevel(mesh, f, x1, SetKind::open);
    VertexSet u2 = sublevel(mesh, f, x2, SetKind::open);
    int t1, t2;
    try {
      t1 = qm.tau_open(u1);
      t2 = qm.tau_open(u2);
    } catch (const std::logic_error& e) {
      ++binary_bad;
      add_violation("tau-binary", trial, e.what());
      continue;
    }
    if (t1 > t2) {
      ++monotone_bad;
      add_violation("tau-monotone-open", trial, "tau dropped on the larger sublevel set");
    }

    // Closed superlevel sets, nested the other way.
    VertexSet c1 = complement(mesh, u1);
    VertexSet c2 = complement(mesh, u2);
    int tc1 = qm.tau_closed(c1), tc2 = qm.tau_closed(c2);
    if (tc2 > tc1) {
      ++monotone_bad;
      add_violation("tau-monotone-closed", trial, "tau dropped on the larger superlevel set");
    }

    // Additivity over the components of a disjoint union.
    auto comps = connected_components(mesh, u2);
    if (comps.size() > 1) {
      ++multi_component_seen;
      int sum = 0;
      for (const auto& c : comps) sum += qm.tau_open(c);
      if (sum != t2) {
        ++additive_bad;
        add_violation("tau-additive", trial, "component sum differs from tau of the union");
      }
    }

    // Inner regularity: tau(U) is attained along the chain of closed
    // subsets starting with U's own vertices (the largest closed subset a
    // vertex model has; one-vertex-thick sets admit no smaller one) and
    // continuing with erosions. The first link alone is already a real
    // check: it goes through the dual complement formula.
    if (!u2.members.empty() && static_cast<int>(u2.members.size()) < mesh.vertex_count()) {
      int best = 0;
      VertexSet k = make_vertex_set(mesh, u2.members, SetKind::closed);
      for (int step = 0; step < 4 && !k.members.empty(); ++step) {
        best = std::max(best, qm.tau_closed(k));
        k = shrink(mesh, k);
      }
      if (best != t2) {
        ++regular_bad;
        add_violation("tau-regularity", trial, "no sampled closed subset attains tau of the open set");
      }
    }
  }

  report.checks.push_back({"tau-binary", static_cast<double>(binary_bad), 0.0, binary_bad == 0,
                           "values outside {0,1} over sampled sets"});
  report.checks.push_back({"tau-monotone", static_cast<double>(monotone_bad), 0.0,
                           monotone_bad == 0, "monotonicity under inclusion on nested samples"});
  report.checks.push_back({"tau-additive", static_cast<double>(additive_bad), 0.0,
                           additive_bad == 0,
                           "additivity over disjoint components (" +
                               std::to_string(multi_component_seen) + " multi-component samples)"});
  report.checks.push_back({"tau-regularity", static_cast<double>(regular_bad), 0.0,
                           regular_bad == 0, "weak inner regularity on eroded closed subsets"});

  // Extension agrees with the seed function on solid closed sets.
  {
    int solid_checked = 0, solid_bad = 0, attempts = 0;
    while (solid_checked < 50 && attempts < 4000) {
      ++attempts;
      ScalarField f = random_smooth_field(mesh, rng);
      std::vector<double> mids = midpoints(f);
      if (mids.empty()) continue;
      std::uniform_int_distribution<size_t> pick(0, mids.size() - 1);
      VertexSet u = sublevel(mesh, f, mids[pick(rng)], SetKind::closed);
      if (u.members.empty() || static_cast<int>(u.members.size()) == mesh.vertex_count()) continue;
      for (const VertexSet& comp : connected_components(mesh, u)) {
        if (static_cast<int>(comp.members.size()) == mesh.vertex_count()) continue;
        if (!is_solid(mesh, comp)) continue;
        ++solid_checked;
        if (qm.tau_closed(comp) != qm.nu(comp)) {
          ++solid_bad;
          add_violation("tau-extends-nu", solid_checked, "tau_closed differs from nu on a solid set");
        }
        if (solid_checked >= 50) break;
      }
    }
    report.checks.push_back({"tau-extends-nu", static_cast<double>(solid_bad), 0.0,
                             solid_bad == 0 && solid_checked >= 50,
                             "agreement with nu on " + std::to_string(solid_checked) +
                                 " sampled solid sets"});
  }

  // Relabeling the three markers must not change the extension.
  if (qm.base().is_three_point()) {
    const auto& tp = std::get<ThreePointRule>(qm.base().rule());
    std::array<int, 3> m = tp.marker_vertices;
    QuasiMeasure permuted(SolidSetFunction(mesh, ThreePointRule{{m[1], m[2], m[0]}}));
    QuasiMeasure swapped(SolidSetFunction(mesh, ThreePointRule{{m[2], m[1], m[0]}}));
    int sym_bad = 0;
    for (int trial = 0; trial < 25; ++trial) {
      ScalarField f = random_smooth_field(mesh, rng);
      std::vector<double> mids = midpoints(f);
      if (mids.empty()) continue;
      std::uniform_int_distribution<size_t> pick(0, mids.size() - 1);
      VertexSet u = sublevel(mesh, f, mids[pick(rng)], SetKind::open);
      int t = qm.tau_open(u);
      if (permuted.tau_open(u) != t || swapped.tau_open(u) != t) {
        ++sym_bad;
        add_violation("marker-permutation", trial, "tau changed under a marker permutation");
      }
    }
    report.checks.push_back({"marker-permutation", static_cast<double>(sym_bad), 0.0, sym_bad == 0,
                             "tau invariant under marker relabeling"});
  }

  return report;
}

SuiteReport zapolsky_pair_check(const QuasiState& state, const ScalarField& f,
                                const ScalarField& g, const std::string& label) {
  const SurfaceMesh& mesh = state.mesh();
  double pi = state.nonlinearity_defect(f, g);
  double l1 = poisson_l1(mesh, f, g).l1_norm;
  double slack = zapolsky_slack(mesh);
  double margin = pi * pi - l1;
  SuiteReport report;
  report.checks.push_back({label, margin, slack, margin <= slack,
                           "defect^2 - l1_norm against the discretization slack"});
  return report;
}

SuiteReport zapolsky_suite(const QuasiState& state, int trials, std::uint64_t seed) {
  const SurfaceMesh& mesh = state.mesh();
  std::mt19937_64 rng(seed);
  const double slack = zapolsky_slack(mesh);

  SuiteReport report;
  double worst = -std::numeric_limits<double>::infinity();
  int violations = 0;
  for (int trial = 0; trial < trials; ++trial) {
    RandomFieldCoefficients cf = draw_field_coefficients(rng);
    RandomFieldCoefficients cg = draw_field_coefficients(rng);
    ScalarField f = evaluate_field(mesh, cf);
    ScalarField g = evaluate_field(mesh, cg);
    double pi = state.nonlinearity_defect(f, g);
    double l1 = poisson_l1(mesh, f, g).l1_norm;
    double margin = pi * pi - l1;
    worst = std::max(worst, margin);
    if (margin > slack) {
      ++violations;
      nlohmann::ordered_json row;
      row["check"] = "zapolsky";
      row["trial"] = trial;
      row["seed"] = seed;
      row["coefficients_f"] = cf.c;
      row["coefficients_g"] = cg.c;
      row["defect"] = pi;
      row["l1_norm"] = l1;
      row["slack"] = slack;
      report.violations.push_back(std::move(row));
    }
  }
  report.checks.push_back({"zapolsky-margin-max", worst, slack, violations == 0,
                           "max of defect^2 - l1_norm over " + std::to_string(trials) +
                               " random smooth pairs"});
  return report;
}

SuiteReport oracle_agreement_suite(const SurfaceMesh& mesh, int fields, std::uint64_t seed) {
  QuasiState state{QuasiMeasure{SolidSetFunction::median(mesh)}};
  std::mt19937_64 rng(seed);
  const double tol = std::max(config::kOracleToleranceFloor, 2.0 * mesh.max_edge_length());

  SuiteReport report;
  double worst = 0.0;
  int bad = 0;
  for (int trial = 0; trial < fields; ++trial) {
    ScalarField f = random_smooth_field(mesh, rng);
    double zeta = state.quasi_integral(f);
    double direct = median_direct(mesh, f);
    double diff = std::abs(zeta - direct);
    worst = std::max(worst, diff);
    if (diff > tol) {
      ++bad;
      nlohmann::ordered_json row;
      row["check"] = "median-oracle";
      row["trial"] = trial;
      row["seed"] = seed;
      row["quasi_integral"] = zeta;
      row["median_direct"] = direct;
      report.violations.push_back(std::move(row));
    }
  }
  report.checks.push_back({"median-oracle-agreement", worst, tol, bad == 0,
                           "max |quasi_integral - median_direct| over " +
                               std::to_string(fields) + " random fields"});
  return report;
}

}  // namespace pbsharp
