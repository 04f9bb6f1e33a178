#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "pbsharp/constructions.hpp"
#include "pbsharp/mesh.hpp"
#include "pbsharp/quasistate.hpp"
#include "pbsharp/random_fields.hpp"

using namespace pbsharp;

namespace {

SurfaceMesh axis_icosphere(int level) {
  return build_marked_icosphere(level, {Vec3{1, 0, 0}, Vec3{0, 1, 0}, Vec3{0, 0, 1}});
}

QuasiState three_point_state(const SurfaceMesh& m) {
  return QuasiState{QuasiMeasure{SolidSetFunction::three_point(m)}};
}

QuasiState median_state(const SurfaceMesh& m) {
  return QuasiState{QuasiMeasure{SolidSetFunction::median(m)}};
}

ScalarField coordinate_field(const SurfaceMesh& m, int axis) {
  std::vector<double> vals(m.vertex_count());
  for (int v = 0; v < m.vertex_count(); ++v) vals[v] = m.vertices()[v][axis];
  return ScalarField(m, vals);
}

}  // namespace

TEST_CASE("constant fields integrate to their constant") {
  SurfaceMesh m = axis_icosphere(2);
  ScalarField c(m, std::vector<double>(m.vertex_count(), 3.25));
  for (const QuasiState& qs : {three_point_state(m), median_state(m)}) {
    DistributionFunction b = qs.b_function(c);
    CHECK(b.thresholds == std::vector<double>{3.25});
    CHECK(b.values == std::vector<int>{1});
    CHECK(qs.quasi_integral(c) == 3.25);
  }
  CHECK(median_direct(m, c) == 3.25);
}

TEST_CASE("distribution function is a monotone step ending at 1") {
  SurfaceMesh m = axis_icosphere(2);
  QuasiState qs = three_point_state(m);
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 10; ++trial) {
    ScalarField f = random_smooth_field(m, rng);
    DistributionFunction b = qs.b_function(f);
    REQUIRE(!b.thresholds.empty());
    CHECK(std::is_sorted(b.thresholds.begin(), b.thresholds.end()));
    for (size_t i = 1; i < b.values.size(); ++i) CHECK(b.values[i] >= b.values[i - 1]);
    CHECK(b.values.back() == 1);
    CHECK(b.jump() == qs.quasi_integral(f));
  }
}

TEST_CASE("height field: three-point jump sits exactly on the equator markers") {
  SurfaceMesh m = axis_icosphere(3);
  ScalarField z = coordinate_field(m, 2);
  // The x and y markers lie at height exactly 0; any sublevel set reaching
  // above 0 holds both of them and its complement only the top marker.
  CHECK(three_point_state(m).quasi_integral(z) == 0.0);
}

TEST_CASE("height field: median sits within a mesh step of the equator") {
  SurfaceMesh m = axis_icosphere(4);
  ScalarField z = coordinate_field(m, 2);
  QuasiState qs = median_state(m);
  double zeta = qs.quasi_integral(z);
  CHECK(std::abs(zeta) < 0.05);
  double direct = median_direct(m, z);
  CHECK(std::abs(direct) < 0.05);
  CHECK(std::abs(zeta - direct) <= std::max(0.02, 2.0 * m.max_edge_length()));
}

TEST_CASE("extremal pair: zeta triple is exact at level 4") {
  Theorem1Construction built = theorem1_fields({.level = 4});
  QuasiState qs = three_point_state(built.mesh);
  CHECK(qs.quasi_integral(built.f) == 0.0);
  CHECK(qs.quasi_integral(built.g) == 0.0);
  ScalarField sum = field_sum(built.mesh, built.f, built.g);
  CHECK(qs.quasi_integral(sum) == 1.0);
  CHECK(qs.nonlinearity_defect(built.f, built.g) == 1.0);

  // The whole distribution function of F is a single jump at 0: every
  // sublevel set's complement is a band holding only the first marker.
  DistributionFunction b = qs.b_function(built.f);
  CHECK(b.jump() == 0.0);
  CHECK(b.values.front() == 1);
}

TEST_CASE("median surface: zeta triple equals the chord levels exactly") {
  Theorem2Construction built = theorem2_surface({.level = 0, .epsilon = 0.2});
  QuasiState qs = median_state(built.mesh);
  const double eps = built.epsilon_effective;
  CHECK(qs.quasi_integral(built.f) == eps);
  CHECK(qs.quasi_integral(built.g) == eps);
  ScalarField sum = field_sum(built.mesh, built.f, built.g);
  CHECK(qs.quasi_integral(sum) == 1.0 - eps);
  CHECK(median_direct(built.mesh, built.f) == doctest::Approx(eps).epsilon(0.01));
}

TEST_CASE("affine equivariance and range bounds") {
  SurfaceMesh m = axis_icosphere(3);
  std::mt19937_64 rng(77);
  for (const QuasiState& qs : {three_point_state(m), median_state(m)}) {
    for (int trial = 0; trial < 10; ++trial) {
      ScalarField f = random_smooth_field(m, rng);
      double zeta = qs.quasi_integral(f);
      CHECK(zeta >= f.min_value());
      CHECK(zeta <= f.max_value());
      for (double a : {0.5, 2.0, 7.25}) {
        for (double c : {-3.0, 0.0, 1.5}) {
          ScalarField t = field_affine(m, f, a, c);
          CHECK(qs.quasi_integral(t) == doctest::Approx(a * zeta + c).epsilon(1e-9));
        }
      }
      ScalarField shifted = field_affine(m, f, 1.0, 10.0);
      CHECK(qs.quasi_integral(shifted) == doctest::Approx(zeta + 10.0).epsilon(1e-9));
    }
  }
}

TEST_CASE("monotone: raising the field never lowers the quasi-integral") {
  SurfaceMesh m = axis_icosphere(3);
  std::mt19937_64 rng(99);
  for (const QuasiState& qs : {three_point_state(m), median_state(m)}) {
    for (int trial = 0; trial < 8; ++trial) {
      ScalarField f = random_smooth_field(m, rng);
      ScalarField bump = random_smooth_field(m, rng);
      std::vector<double> raised = f.values;
      for (int v = 0; v < m.vertex_count(); ++v) raised[v] += std::abs(bump.values[v]);
      ScalarField g(m, raised);
      CHECK(qs.quasi_integral(f) <= qs.quasi_integral(g));
    }
  }
}

TEST_CASE("binary search agrees with the full distribution function") {
  SurfaceMesh m = axis_icosphere(3);
  std::mt19937_64 rng(123);
  for (const QuasiState& qs : {three_point_state(m), median_state(m)}) {
    for (int trial = 0; trial < 10; ++trial) {
      ScalarField f = random_smooth_field(m, rng);
      DistributionFunction b = qs.b_function(f);
      double zeta = qs.quasi_integral(f);
      CHECK(zeta == b.jump());
      // The literal integral of a {0,1} step telescopes to its jump.
      CHECK(quasi_integral_from_distribution(b) == doctest::Approx(zeta).epsilon(1e-12));
    }
  }
}

TEST_CASE("median oracle tracks the quasi-integral on random fields") {
  SurfaceMesh m = axis_icosphere(3);
  QuasiState qs = median_state(m);
  const double tol = std::max(0.02, 2.0 * m.max_edge_length());
  std::mt19937_64 rng(555);
  for (int trial = 0; trial < 25; ++trial) {
    ScalarField f = random_smooth_field(m, rng);
    CHECK(std::abs(qs.quasi_integral(f) - median_direct(m, f)) <= tol);
  }
}

TEST_CASE("fields from another mesh are rejected") {
  SurfaceMesh m = axis_icosphere(1);
  SurfaceMesh other = axis_icosphere(1);
  QuasiState qs = three_point_state(m);
  ScalarField f(other, std::vector<double>(other.vertex_count(), 0.0));
  CHECK_THROWS_AS(qs.quasi_integral(f), std::invalid_argument);
  CHECK_THROWS_AS(median_direct(m, f), std::invalid_argument);
}
