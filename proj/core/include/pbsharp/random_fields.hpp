#pragma once

#include <random>
#include <vector>

#include "pbsharp/mesh.hpp"

namespace pbsharp {

/// Random smooth field: a low-degree polynomial in the embedding coordinates
/// with Gaussian coefficients, the restriction of a trigonometric-like bump
/// mix to the surface. Coefficients are returned so a violating case can be
/// replayed exactly.
struct RandomFieldCoefficients {
  std::vector<double> c;  // one per basis monomial
};

RandomFieldCoefficients draw_field_coefficients(std::mt19937_64& rng);

ScalarField evaluate_field(const SurfaceMesh& mesh, const RandomFieldCoefficients& coeffs);

ScalarField random_smooth_field(const SurfaceMesh& mesh, std::mt19937_64& rng);

}  // namespace pbsharp
