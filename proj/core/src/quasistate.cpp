#include "pbsharp/quasistate.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

namespace pbsharp {

namespace {

std::vector<double> distinct_sorted_values(const ScalarField& f) {
  std::vector<double> v = f.values;
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

}  // namespace

double DistributionFunction::jump() const {
  for (size_t i = 0; i < values.size(); ++i)
    if (values[i] == 1) return thresholds[i];
  throw std::logic_error("distribution function never reaches 1");
}

QuasiState::QuasiState(QuasiMeasure measure) : measure_(std::move(measure)) {}

VertexSet QuasiState::open_sublevel(const ScalarField& f, double x) const {
  std::vector<int> members;
  for (int v = 0; v < static_cast<int>(f.values.size()); ++v)
    if (f.values[v] < x) members.push_back(v);
  return VertexSet{std::move(members), SetKind::open, f.mesh_id};
}

DistributionFunction QuasiState::b_function(const ScalarField& f) const {
  check_same_mesh(mesh(), f.mesh_id);
  std::vector<double> vals = distinct_sorted_values(f);
  const size_t m = vals.size();
  DistributionFunction b;
  b.thresholds = vals;
  b.values.resize(m);
  for (size_t i = 0; i + 1 < m; ++i) {
    double mid = 0.5 * (vals[i] + vals[i + 1]);
    b.values[i] = measure_.tau_open(open_sublevel(f, mid));
  }
  b.values[m - 1] = 1;  // past the maximum the sublevel set is everything
  for (size_t i = 0; i + 1 < m; ++i)
    if (b.values[i] > b.values[i + 1])
      throw std::logic_error("distribution function is not monotone");
  return b;
}

double QuasiState::quasi_integral(const ScalarField& f) const {
  check_same_mesh(mesh(), f.mesh_id);
  std::vector<double> vals = distinct_sorted_values(f);
  const int m = static_cast<int>(vals.size());
  if (m == 1) return vals[0];

  // Find the smallest index whose upward midpoint already has tau = 1; the
  // top index counts as 1 without evaluation.
  int lo = 0, hi = m - 1;
  while (lo < hi) {
    int mid_idx = lo + (hi - lo) / 2;
    double x = 0.5 * (vals[mid_idx] + vals[mid_idx + 1]);
    if (measure_.tau_open(open_sublevel(f, x)) == 1)
      hi = mid_idx;
    else
      lo = mid_idx + 1;
  }
  return vals[lo];
}

double QuasiState::nonlinearity_defect(const ScalarField& f, const ScalarField& g) const {
  ScalarField sum = field_sum(mesh(), f, g);
  return std::abs(quasi_integral(sum) - quasi_integral(f) - quasi_integral(g));
}

double quasi_integral_from_distribution(const DistributionFunction& b) {
  double integral = 0.0;
  for (size_t i = 0; i + 1 < b.thresholds.size(); ++i)
    integral += b.values[i] * (b.thresholds[i + 1] - b.thresholds[i]);
  return b.thresholds.back() - integral;
}

double median_direct(const SurfaceMesh& mesh, const ScalarField& f, double area_slack) {
  check_same_mesh(mesh, f.mesh_id);
  std::vector<double> vals = distinct_sorted_values(f);
  if (vals.size() == 1) return vals[0];

  const auto& tris = mesh.triangles();
  const int nt = static_cast<int>(tris.size());
  std::vector<double> tri_min(nt), tri_max(nt);
  for (int t = 0; t < nt; ++t) {
    const auto& tr = tris[t];
    double a = f.values[tr[0]], b = f.values[tr[1]], c = f.values[tr[2]];
    tri_min[t] = std::min({a, b, c});
    tri_max[t] = std::max({a, b, c});
  }

  const double half = mesh.total_weight() / 2.0 + area_slack;
  std::vector<double> qualifying;

  std::vector<int> band;
  for (size_t i = 0; i + 1 < vals.size(); ++i) {
    double t = 0.5 * (vals[i] + vals[i + 1]);

    // Vertices of every triangle whose values straddle t. t is never a
    // vertex value, so straddling is unambiguous and plateaus fall cleanly
    // on one side.
    band.clear();
    for (int k = 0; k < nt; ++k) {
      if (tri_min[k] < t && t < tri_max[k]) {
        band.push_back(tris[k][0]);
        band.push_back(tris[k][1]);
        band.push_back(tris[k][2]);
      }
    }
    if (band.empty()) continue;
    VertexSet band_set = make_vertex_set(mesh, band, SetKind::closed);

    for (const VertexSet& comp : connected_components(mesh, band_set)) {
      bool split_in_halves = true;
      for (const VertexSet& side : connected_components(mesh, complement(mesh, comp))) {
        if (set_area(mesh, side) > half) {
          split_in_halves = false;
          break;
        }
      }
      if (split_in_halves) {
        qualifying.push_back(t);
        break;
      }
    }
  }

  if (qualifying.empty())
    throw std::runtime_error("field too coarse for a direct median at this refinement");
  return qualifying[qualifying.size() / 2];
}

}  // namespace pbsharp
