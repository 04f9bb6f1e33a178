#pragma once

#include <array>
#include <cstdint>
#include <variant>

#include "pbsharp/mesh.hpp"

namespace pbsharp {

/// Three-point rule: a solid set gets measure 1 iff it contains at least two
/// of the three marker vertices.
struct ThreePointRule {
  std::array<int, 3> marker_vertices;
};

/// Median rule: a solid set gets measure 1 iff its area reaches the
/// threshold (ties count as 1). The threshold is half the total weight for
/// the median quasi-state.
struct AreaThresholdRule {
  double threshold;
};

/// {0,1} set function on solid sets, the seed from which the quasi-measure
/// is extended to all open and closed vertex sets.
class SolidSetFunction {
 public:
  SolidSetFunction(const SurfaceMesh& mesh, ThreePointRule rule);
  SolidSetFunction(const SurfaceMesh& mesh, AreaThresholdRule rule);

  static SolidSetFunction three_point(const SurfaceMesh& mesh);  // uses mesh markers
  static SolidSetFunction median(const SurfaceMesh& mesh);       // threshold = total/2

  /// Value on a solid set; rejects non-solid input.
  int nu(const VertexSet& s) const;

  const SurfaceMesh& mesh() const { return *mesh_; }
  bool is_three_point() const { return std::holds_alternative<ThreePointRule>(rule_); }
  const std::variant<ThreePointRule, AreaThresholdRule>& rule() const { return rule_; }

 private:
  friend class QuasiMeasure;
  int evaluate(const VertexSet& s) const;  // no solidity recheck

  const SurfaceMesh* mesh_;
  std::variant<ThreePointRule, AreaThresholdRule> rule_;
};

/// Genus-0 extension of a SolidSetFunction to arbitrary open and closed
/// vertex sets. Values stay in {0,1}; a value outside that range means the
/// underlying rule is not simple on this mesh and is reported as an error.
class QuasiMeasure {
 public:
  explicit QuasiMeasure(SolidSetFunction base);

  const SurfaceMesh& mesh() const { return base_.mesh(); }
  const SolidSetFunction& base() const { return base_; }

  int nu(const VertexSet& s) const { return base_.nu(s); }

  /// tau on an open set: sum over connected components U of
  /// 1 - sum of nu over the connected components of the complement of U.
  int tau_open(const VertexSet& u) const;

  /// tau on a closed set via 1 - tau_open(complement).
  int tau_closed(const VertexSet& c) const;

 private:
  SolidSetFunction base_;
};

}  // namespace pbsharp
