#pragma once

#include <vector>

#include "pbsharp/quasimeasure.hpp"

namespace pbsharp {

/// Step representation of x -> tau({F < x}). thresholds are the distinct
/// vertex values of F in increasing order; values[i] is tau of the open
/// sublevel set just above thresholds[i] (evaluated midway to the next
/// distinct value, never at a vertex value). Below the first threshold the
/// function is 0; values.back() is always 1 because the top sublevel set is
/// the whole mesh. A constant field yields the single threshold {c} with
/// value 1, the trivial jump at the constant.
struct DistributionFunction {
  std::vector<double> thresholds;
  std::vector<int> values;

  /// Smallest threshold at which the step reaches 1.
  double jump() const;
};

/// Quasi-state obtained by quasi-integration against a simple quasi-measure:
/// zeta(F) = max F - integral of tau({F < x}) over [min F, max F], which for
/// a {0,1} step function is exactly the jump location.
class QuasiState {
 public:
  explicit QuasiState(QuasiMeasure measure);

  const QuasiMeasure& measure() const { return measure_; }
  const SurfaceMesh& mesh() const { return measure_.mesh(); }

  /// Full evaluation of the distribution function at every inter-value
  /// midpoint. O(V) tau evaluations; intended for diagnostics and tests.
  DistributionFunction b_function(const ScalarField& f) const;

  /// zeta(F) located by binary search over the distinct values of F,
  /// O(log V) tau evaluations. Relies on monotonicity of tau on nested
  /// sublevel sets, which the axiom suite checks separately.
  double quasi_integral(const ScalarField& f) const;

  /// pi(F,G) = |zeta(F+G) - zeta(F) - zeta(G)|.
  double nonlinearity_defect(const ScalarField& f, const ScalarField& g) const;

 private:
  VertexSet open_sublevel(const ScalarField& f, double x) const;
  QuasiMeasure measure_;
};

/// Integral formula applied literally to a step function; equals jump() up
/// to floating-point telescoping and exists to cross-check quasi_integral.
double quasi_integral_from_distribution(const DistributionFunction& b);

/// Direct median-of-a-level-set search, independent of tau: sweeps every
/// inter-value midpoint t, builds the band of triangles straddling t, and
/// looks for a band component all of whose complement components have area
/// at most half the total (plus area_slack). Returns the middle qualifying
/// threshold. Oracle for quasi_integral under the median rule.
double median_direct(const SurfaceMesh& mesh, const ScalarField& f, double area_slack = 0.0);

}  // namespace pbsharp
