#pragma once

#include <vector>

#include "pbsharp/mesh.hpp"
#include "pbsharp/quasistate.hpp"

namespace pbsharp {

struct BracketReport {
  double l1_norm = 0.0;
  std::vector<double> per_triangle;  // in mesh triangle order
};

/// L1 norm of the bracket of two piecewise-linear fields: each triangle
/// contributes half the absolute Jacobian determinant of (F,G) across it.
/// The value depends only on field values and the triangulation, not on the
/// embedding or the weights. Contributions are accumulated in ascending
/// order, so the total is invariant under any relabeling of the mesh.
BracketReport poisson_l1(const SurfaceMesh& mesh, const ScalarField& f, const ScalarField& g);

/// pi(F,G)^2 / poisson_l1(F,G). 0/0 is reported as 0, a nonzero defect over
/// a vanishing bracket as +infinity.
double sharpness_ratio(const QuasiState& state, const ScalarField& f, const ScalarField& g);

}  // namespace pbsharp
