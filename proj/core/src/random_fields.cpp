#include "pbsharp/random_fields.hpp"

namespace pbsharp {

namespace {

// Monomial basis up to degree 3 in the embedding coordinates, weighted down
// with the degree so the fields stay gentle.
constexpr int kBasisSize = 13;

double basis_value(int b, const Vec3& p) {
  double x = p[0], y = p[1], z = p[2];
  switch (b) {
    case 0: return x;
    case 1: return y;
    case 2: return z;
    case 3: return x * y;
    case 4: return y * z;
    case 5: return z * x;
    case 6: return x * x - y * y;
    case 7: return 2.0 * z * z - x * x - y * y;
    case 8: return x * y * z;
    case 9: return x * (x * x - 3.0 * y * y);
    case 10: return y * (y * y - 3.0 * z * z);
    case 11: return z * (z * z - 3.0 * x * x);
    case 12: return x * x * x - 3.0 * x * z * z;
    default: return 0.0;
  }
}

double basis_scale(int b) {
  if (b < 3) return 1.0;
  if (b < 8) return 0.5;
  return 0.25;
}

}  // namespace

RandomFieldCoefficients draw_field_coefficients(std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  RandomFieldCoefficients out;
  out.c.resize(kBasisSize);
  for (int b = 0; b < kBasisSize; ++b) out.c[b] = basis_scale(b) * gauss(rng);
  return out;
}

ScalarField evaluate_field(const SurfaceMesh& mesh, const RandomFieldCoefficients& coeffs) {
  std::vector<double> values(mesh.vertex_count(), 0.0);
  for (int v = 0; v < mesh.vertex_count(); ++v) {
    const Vec3& p = mesh.vertices()[v];
    double acc = 0.0;
    for (int b = 0; b < kBasisSize && b < static_cast<int>(coeffs.c.size()); ++b)
      acc += coeffs.c[b] * basis_value(b, p);
    values[v] = acc;
  }
  return ScalarField(mesh, std::move(values));
}

ScalarField random_smooth_field(const SurfaceMesh& mesh, std::mt19937_64& rng) {
  return evaluate_field(mesh, draw_field_coefficients(rng));
}

}  // namespace pbsharp
