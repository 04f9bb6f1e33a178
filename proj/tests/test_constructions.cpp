#include <doctest.h>

#include <array>
#include <cmath>
#include <set>
#include <stdexcept>
#include <vector>

#include "pbsharp/constructions.hpp"
#include "pbsharp/mesh.hpp"
#include "pbsharp/poisson.hpp"
#include "pbsharp/profiles.hpp"
#include "pbsharp/quasimeasure.hpp"
#include "pbsharp/quasistate.hpp"

using namespace pbsharp;

TEST_CASE("smoothstep profiles clamp, interpolate, and increase") {
  for (const SmoothStepProfile& p :
       {SmoothStepProfile::exponential(), SmoothStepProfile::quintic()}) {
    CHECK(p(0.0) == 0.0);
    CHECK(p(-0.5) == 0.0);
    CHECK(p(1.0) == 1.0);
    CHECK(p(2.0) == 1.0);
    CHECK(p(0.5) == 0.5);  // both formulas are symmetric and exact here
    double prev = 0.0;
    for (int i = 1; i < 40; ++i) {
      double v = p(i / 40.0);
      CHECK(v >= prev);
      CHECK(v >= 0.0);
      CHECK(v <= 1.0);
      prev = v;
    }
  }
  CHECK(SmoothStepProfile::quintic()(0.25) ==
        doctest::Approx(0.25 * 0.25 * 0.25 * (10.0 - 15.0 * 0.25 + 6.0 * 0.25 * 0.25)));
}

TEST_CASE("profile lookup by name") {
  CHECK(SmoothStepProfile::from_name("exp").name == "exp");
  CHECK(SmoothStepProfile::from_name("quintic").name == "quintic");
  CHECK_THROWS_AS(SmoothStepProfile::from_name("cubic"), std::invalid_argument);
}

TEST_CASE("plane bump is exactly 0 off the quarter annulus and 1 on the arc") {
  SmoothStepProfile p = SmoothStepProfile::exponential();
  CHECK(rho(p, 0.0, 0.0) == 0.0);
  CHECK(rho(p, 0.5, 0.5) == 0.0);    // on the inner circle 2r^2 = 1
  CHECK(rho(p, -0.8, -0.2) == 0.0);  // x + y <= 0
  CHECK(rho(p, 0.7, -0.7) == 0.0);
  CHECK(rho(p, 1.0, 0.0) == 1.0);
  CHECK(rho(p, 0.0, 1.0) == 1.0);
  for (double t : {0.1, 0.45, 1.0, 1.3}) {
    CHECK(rho(p, std::cos(t), std::sin(t)) == 1.0);  // unit arc, first quadrant
  }
  CHECK(rho(p, 0.9, 0.2) > 0.0);
  CHECK(rho(p, 0.9, 0.2) < 1.0);
}

TEST_CASE("plane pair splits the bump without losing a bit") {
  SmoothStepProfile p = SmoothStepProfile::exponential();
  PlanePair east = fg_plane(p, 1.0, 0.0);
  CHECK(east.f == 1.0);
  CHECK(east.g == 0.0);
  PlanePair north = fg_plane(p, 0.0, 1.0);
  CHECK(north.f == 0.0);
  CHECK(north.g == 1.0);

  for (double x = -1.2; x <= 1.2; x += 0.07) {
    for (double y = -1.2; y <= 1.2; y += 0.07) {
      PlanePair v = fg_plane(p, x, y);
      CHECK(v.f >= 0.0);
      CHECK(v.g >= 0.0);
      CHECK(v.f + v.g == rho(p, x, y));  // bitwise, by the split construction
      if (x <= 0.0) CHECK(v.f == 0.0);
      if (y <= 0.0) CHECK(v.g == 0.0);
    }
  }
  for (double d : {0.75, 0.9, 1.1}) {
    PlanePair v = fg_plane(p, d, d);
    CHECK(v.f == v.g);  // equal shares on the diagonal, exactly
  }
}

TEST_CASE("extremal pair on the sphere pins the markers to the axes") {
  Theorem1Construction built = theorem1_fields({.level = 3});
  CHECK(built.level == 3);
  CHECK(built.profile_name == "exp");
  const auto& markers = built.mesh.marker_vertices();
  REQUIRE(markers.size() == 3);
  CHECK(built.mesh.vertices()[markers[0]] == Vec3{1.0, 0.0, 0.0});
  CHECK(built.mesh.vertices()[markers[1]] == Vec3{0.0, 1.0, 0.0});
  CHECK(built.mesh.vertices()[markers[2]] == Vec3{0.0, 0.0, 1.0});
  CHECK(built.f.values[markers[0]] == 1.0);
  CHECK(built.g.values[markers[0]] == 0.0);
  CHECK(built.f.values[markers[1]] == 0.0);
  CHECK(built.g.values[markers[1]] == 1.0);
  CHECK(built.f.values[markers[2]] == 0.0);
  CHECK(built.g.values[markers[2]] == 0.0);
}

TEST_CASE("extremal pair values are deterministic") {
  Theorem1Construction a = theorem1_fields({.level = 3});
  Theorem1Construction b = theorem1_fields({.level = 3});
  CHECK(a.f.values == b.f.values);
  CHECK(a.g.values == b.g.values);
  CHECK(a.mesh.vertices() == b.mesh.vertices());
}

TEST_CASE("the quintic profile reproduces the triple up to discretization") {
  // The exponential ramp is flat to the last bit near its ends, which welds
  // the top level set of F+G into one band through both markers and makes
  // zeta(F+G) exactly 1. The quintic ramp is only flat analytically, so its
  // top set splits into one-marker islands and the value merely converges.
  Theorem1Construction built =
      theorem1_fields({.level = 3, .profile = SmoothStepProfile::quintic()});
  QuasiState qs{QuasiMeasure{SolidSetFunction::three_point(built.mesh)}};
  CHECK(qs.quasi_integral(built.f) == 0.0);
  CHECK(qs.quasi_integral(built.g) == 0.0);
  CHECK(qs.quasi_integral(field_sum(built.mesh, built.f, built.g)) ==
        doctest::Approx(1.0).epsilon(1e-3));
}

TEST_CASE("median surface: lattice snap, shape, and mass bookkeeping") {
  Theorem2Construction built = theorem2_surface({.level = 0, .epsilon = 0.1});
  CHECK(built.epsilon_requested == 0.1);
  CHECK(built.epsilon_effective == 0.1);  // 0.1 is representable as k/n
  CHECK(built.grid_n >= 50);
  CHECK(4 * static_cast<int>(std::lround(built.epsilon_effective * built.grid_n)) <
        built.grid_n);
  CHECK(built.smoothing_radius < built.epsilon_effective / 2.0);
  CHECK(euler_characteristic(built.mesh) == 2);
  CHECK(built.mesh.total_weight() == doctest::Approx(1.0).epsilon(1e-12));

  REQUIRE(static_cast<int>(built.triangle_region.size()) == built.mesh.triangle_count());
  std::array<double, 7> expected_masses = {0.2, 0.2, 0.2, 0.1, 0.1, 0.1, 0.1};
  CHECK(built.region_masses == expected_masses);
  std::array<long double, 8> region_weight{};
  for (int t = 0; t < built.mesh.triangle_count(); ++t) {
    int r = built.triangle_region[t];
    REQUIRE(r >= 1);
    REQUIRE(r <= 7);
    region_weight[r] += built.mesh.weights()[t];
  }
  for (int r = 1; r <= 7; ++r) {
    CHECK(static_cast<double>(region_weight[r]) ==
          doctest::Approx(expected_masses[r - 1]).epsilon(1e-12));
  }

  for (int v = 0; v < built.mesh.vertex_count(); ++v) {
    CHECK(built.f.values[v] == built.mesh.vertices()[v][0]);
    CHECK(built.g.values[v] == built.mesh.vertices()[v][1]);
  }
}

TEST_CASE("median surface is fine enough at every acceptance epsilon") {
  for (double eps : {0.2, 0.1, 0.05}) {
    Theorem2Construction built = theorem2_surface({.level = 0, .epsilon = eps});
    CHECK(built.epsilon_effective == eps);
    CHECK(built.mesh.triangle_count() >= 5000);
  }
}

TEST_CASE("median surface rejects out-of-range parameters") {
  CHECK_THROWS_AS(theorem2_surface({.level = 0, .epsilon = 0.25}), std::invalid_argument);
  CHECK_THROWS_AS(theorem2_surface({.level = 0, .epsilon = 0.0}), std::invalid_argument);
  CHECK_THROWS_AS(theorem2_surface({.level = 0, .epsilon = -0.1}), std::invalid_argument);
  CHECK_THROWS_AS(theorem2_surface({.level = 13, .epsilon = 0.1}), std::invalid_argument);
  CHECK_THROWS_AS(theorem2_surface({.level = -1, .epsilon = 0.1}), std::invalid_argument);
}

TEST_CASE("median surface construction is deterministic") {
  Theorem2Construction a = theorem2_surface({.level = 0, .epsilon = 0.2});
  Theorem2Construction b = theorem2_surface({.level = 0, .epsilon = 0.2});
  CHECK(a.mesh.vertices() == b.mesh.vertices());
  CHECK(a.mesh.triangles() == b.mesh.triangles());
  CHECK(a.mesh.weights() == b.mesh.weights());
  CHECK(a.triangle_region == b.triangle_region);
}

TEST_CASE("preimage counts: outside, folded, and grazing probes") {
  Theorem1Construction built = theorem1_fields({.level = 3});
  auto outside = preimage_count(built.mesh, built.f, built.g, 2.0, 2.0);
  REQUIRE(outside.has_value());
  CHECK(*outside == 0);
  auto beyond = preimage_count(built.mesh, built.f, built.g, 0.55, 0.55);
  REQUIRE(beyond.has_value());
  CHECK(*beyond == 0);  // u + v > 1 never happens on the image

  // Probing at an interior vertex's exact image lands on the boundary of
  // every image triangle of its star, which must be flagged, not counted.
  int grazing_vertex = -1;
  for (int v = 0; v < built.mesh.vertex_count(); ++v) {
    double s = built.f.values[v] + built.g.values[v];
    if (built.f.values[v] > 0.05 && built.g.values[v] > 0.05 && s < 0.95) {
      grazing_vertex = v;
      break;
    }
  }
  REQUIRE(grazing_vertex >= 0);
  CHECK_FALSE(preimage_count(built.mesh, built.f, built.g,
                             built.f.values[grazing_vertex],
                             built.g.values[grazing_vertex])
                  .has_value());
}

TEST_CASE("the covering diagnostic sees the double fold") {
  Theorem1Construction built = theorem1_fields({.level = 4});
  CoveringCountResult r = covering_count_diagnostic(built.mesh, built.f, built.g, 500, 7);
  CHECK(r.samples == 500);
  CHECK(r.mean == doctest::Approx(2.0).epsilon(0.05));
  CHECK(r.excluded >= 0);
  CHECK(r.excluded < 500);
}
