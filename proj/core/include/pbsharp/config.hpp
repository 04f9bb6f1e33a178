#pragma once

namespace pbsharp::config {

inline constexpr int kSchemaVersion = 1;

// Three-point extremal pair at level 5.
inline constexpr double kL1Tolerance = 0.02;        // |l1_norm - 1|
inline constexpr double kRatioTolerance = 0.03;     // |ratio - 1|
inline constexpr double kCoveringTolerance = 0.05;  // |mean count - 2|
inline constexpr int kCoveringSamples = 10000;

// Median extremal pair.
inline constexpr double kZetaTolerance = 0.01;  // zeta values vs eps, eps, 1-eps
inline constexpr double kRatioSlack = 0.02;     // ratio >= (1-3*eps)^2 - slack

// Direct median oracle: agreement within max(floor, 2 * max edge length).
inline constexpr double kOracleToleranceFloor = 0.02;

// Deviations below this are rounding noise, treated as fully converged in
// the level sweep's monotonicity check.
inline constexpr double kConvergedFloor = 1e-12;

// Discretization slack for the bracket inequality: defect^2 may exceed the
// l1 norm by at most kZapolskySlackPerEdge * (max edge length). The
// extremal pairs attain equality to rounding (margins within 1e-15 of 0),
// so the level sweep pins no positive rate; random smooth pairs sit far
// below the bound (margins under -5 at levels 3..5 for both rules). The
// slack only needs to absorb rounding on near-extremal pairs, and 0.8 * h
// does that with orders of magnitude to spare while still shrinking to 0
// under refinement.
inline constexpr double kZapolskySlackPerEdge = 0.8;

}  // namespace pbsharp::config
