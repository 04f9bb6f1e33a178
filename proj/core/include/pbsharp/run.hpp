#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pbsharp/report.hpp"

namespace pbsharp {

/// Reproduce the three-point extremal pair at one or more refinement
/// levels: zeta triple (0, 0, 1), bracket l1 norm near 1, sharpness ratio
/// near 1, fold count near 2. With several levels the report carries a
/// convergence table and a monotonicity check on |ratio - 1|.
struct Theorem1Options {
  std::vector<int> levels = {5};
  std::string profile = "exp";
  int covering_samples = 10000;
  std::uint64_t seed = 20240601;
};

RunReport run_theorem1(const Theorem1Options& options);

/// Reproduce the median extremal pair for one or more corner parameters:
/// zeta triple (eps, eps, 1-eps), l1 strictly between (1-3*eps)^2 and 1,
/// ratio at least (1-3*eps)^2 minus slack and increasing as eps shrinks.
struct Theorem2Options {
  std::vector<double> epsilons = {0.1};
  int level = 0;
};

RunReport run_theorem2(const Theorem2Options& options);

/// Randomized verification on a built or loaded mesh: quasi-measure axiom
/// suite, bracket inequality over seeded random field pairs (plus an
/// explicit pair when field files are given), and the direct-median oracle.
struct VerifyOptions {
  std::string quasi_state = "three-point";  // or "median"
  int level = 4;
  std::string mesh_file;                     // built icosphere when empty
  std::vector<std::string> field_files;      // empty or exactly two CSVs
  int trials = 100;
  int oracle_fields = 25;
  std::uint64_t seed = 20240601;
};

RunReport run_verify(const VerifyOptions& options);

/// Re-run one serialized violation row and report the recomputed numbers;
/// deterministic, so two replays of the same file agree byte for byte.
RunReport run_replay(const std::string& violation_file);

}  // namespace pbsharp
