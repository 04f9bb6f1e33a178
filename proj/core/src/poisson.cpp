#include "pbsharp/poisson.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace pbsharp {

namespace {

struct Pair {
  double f, g;
};

// Half the absolute determinant of the (F,G) edge matrix. The base corner is
// chosen by lexicographic value order, so the result is bit-identical under
// any reordering of the three corners (tied corners carry equal values and
// cannot change the inputs).
double triangle_contribution(Pair a, Pair b, Pair c) {
  auto less = [](const Pair& x, const Pair& y) {
    return x.f < y.f || (x.f == y.f && x.g < y.g);
  };
  if (less(b, a)) std::swap(a, b);
  if (less(c, b)) std::swap(b, c);
  if (less(b, a)) std::swap(a, b);
  double det = (b.f - a.f) * (c.g - a.g) - (c.f - a.f) * (b.g - a.g);
  return 0.5 * std::abs(det);
}

}  // namespace

BracketReport poisson_l1(const SurfaceMesh& mesh, const ScalarField& f, const ScalarField& g) {
  check_same_mesh(mesh, f.mesh_id);
  check_same_mesh(mesh, g.mesh_id);

  BracketReport report;
  report.per_triangle.resize(mesh.triangle_count());
  const auto& tris = mesh.triangles();
  for (int t = 0; t < mesh.triangle_count(); ++t) {
    const auto& tr = tris[t];
    report.per_triangle[t] = triangle_contribution({f.values[tr[0]], g.values[tr[0]]},
                                                   {f.values[tr[1]], g.values[tr[1]]},
                                                   {f.values[tr[2]], g.values[tr[2]]});
  }

  // Ascending summation: deterministic, label-independent, and accurate.
  std::vector<double> sorted = report.per_triangle;
  std::sort(sorted.begin(), sorted.end());
  double total = 0.0;
  for (double x : sorted) total += x;
  report.l1_norm = total;
  return report;
}

double sharpness_ratio(const QuasiState& state, const ScalarField& f, const ScalarField& g) {
  double pi = state.nonlinearity_defect(f, g);
  double l1 = poisson_l1(state.mesh(), f, g).l1_norm;
  if (l1 == 0.0)
    return pi == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  return pi * pi / l1;
}

}  // namespace pbsharp
