#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pbsharp/mesh.hpp"
#include "pbsharp/profiles.hpp"

namespace pbsharp {

struct ConstructionParams {
  int level = 4;          // icosphere subdivisions / lattice resolution step
  double epsilon = 0.1;   // corner parameter of the median surface, in (0, 1/4)
  SmoothStepProfile profile = SmoothStepProfile::exponential();
};

/// Plane bump supported on the quarter annulus {x+y > 0, 2(x^2+y^2) > 1}:
/// rho = alpha(2r^2 - 1) * alpha((x+y)/r). Exactly 0 outside, exactly 1 on
/// the closed unit quarter arc between (1,0) and (0,1).
double rho(const SmoothStepProfile& profile, double x, double y);

struct PlanePair {
  double f = 0.0;
  double g = 0.0;
};

/// The pair (f,g) splitting rho across the positive-x and positive-y halves:
/// f = rho * alpha(x/r) / (alpha(x/r) + alpha(y/r)) for x > 0, else 0, and
/// symmetrically for g. f,g >= 0, f+g <= 1, and (f,g)(1,0) = (1,0).
PlanePair fg_plane(const SmoothStepProfile& profile, double x, double y);

/// Extremal pair for the three-point quasi-state: a marked icosphere with
/// markers on the coordinate axes and the fields F = f(x,y), G = g(x,y)
/// evaluated on the first two coordinates of each vertex.
struct Theorem1Construction {
  SurfaceMesh mesh;
  ScalarField f;
  ScalarField g;
  std::string profile_name;
  int level = 0;
};

Theorem1Construction theorem1_fields(const ConstructionParams& params);

/// Extremal pair for the median quasi-state: the corner-smoothed unit
/// triangle carved by the three chords x = eps, y = eps, x + y = 1 - eps
/// into seven regions, doubled into a closed genus-0 surface, with region
/// masses 2/10 (corner regions 1..3) and 1/10 (regions 4..7) spread
/// uniformly inside each region, and the coordinate fields F = x, G = y.
struct Theorem2Construction {
  SurfaceMesh mesh;
  ScalarField f;
  ScalarField g;
  double epsilon_requested = 0.0;
  double epsilon_effective = 0.0;  // snapped to k/n on the lattice
  int grid_n = 0;                  // rows of the triangular lattice
  double smoothing_radius = 0.0;   // corner bite radius, < eps/2
  std::array<double, 7> region_masses{};
  std::vector<int> triangle_region;  // region 1..7 per triangle
};

Theorem2Construction theorem2_surface(const ConstructionParams& params);

/// Number of triangles whose (F,G) image strictly contains the point (u,v);
/// nullopt when the point grazes an image-triangle boundary and the count is
/// ill-defined. Degenerate image triangles contribute nothing.
std::optional<int> preimage_count(const SurfaceMesh& mesh, const ScalarField& f,
                                  const ScalarField& g, double u, double v);

struct CoveringCountResult {
  double mean = 0.0;
  int samples = 0;
  int excluded = 0;  // boundary-grazing draws, redrawn
};

/// Monte-Carlo mean preimage count over uniform samples of the open target
/// triangle {u,v > 0, u+v < 1}. For the extremal pair above the fold count
/// is 2 almost everywhere, so the mean converges to 2.
CoveringCountResult covering_count_diagnostic(const SurfaceMesh& mesh, const ScalarField& f,
                                              const ScalarField& g, int samples,
                                              std::uint64_t seed);

}  // namespace pbsharp
