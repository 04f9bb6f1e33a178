#include "pbsharp/quasimeasure.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

namespace pbsharp {

SolidSetFunction::SolidSetFunction(const SurfaceMesh& mesh, ThreePointRule rule)
    : mesh_(&mesh), rule_(rule) {
  const auto& m = rule.marker_vertices;
  if (m[0] == m[1] || m[1] == m[2] || m[0] == m[2])
    throw std::invalid_argument("three-point rule needs three distinct marker vertices");
  for (int v : m)
    if (v < 0 || v >= mesh.vertex_count())
      throw std::invalid_argument("marker vertex index out of range");
}

SolidSetFunction::SolidSetFunction(const SurfaceMesh& mesh, AreaThresholdRule rule)
    : mesh_(&mesh), rule_(rule) {
  if (!(rule.threshold > 0.0) || !(rule.threshold <= mesh.total_weight()))
    throw std::invalid_argument("area threshold must lie in (0, total weight]");
}

SolidSetFunction SolidSetFunction::three_point(const SurfaceMesh& mesh) {
  const auto& m = mesh.marker_vertices();
  if (m.size() != 3)
    throw std::invalid_argument("mesh does not carry three marker vertices");
  return SolidSetFunction(mesh, ThreePointRule{{m[0], m[1], m[2]}});
}

SolidSetFunction SolidSetFunction::median(const SurfaceMesh& mesh) {
  return SolidSetFunction(mesh, AreaThresholdRule{mesh.total_weight() / 2.0});
}

int SolidSetFunction::evaluate(const VertexSet& s) const {
  if (const auto* tp = std::get_if<ThreePointRule>(&rule_)) {
    int hits = 0;
    for (int m : tp->marker_vertices)
      hits += std::binary_search(s.members.begin(), s.members.end(), m) ? 1 : 0;
    return hits >= 2 ? 1 : 0;
  }
  const auto& at = std::get<AreaThresholdRule>(rule_);
  return set_area(*mesh_, s) >= at.threshold ? 1 : 0;
}

int SolidSetFunction::nu(const VertexSet& s) const {
  check_same_mesh(*mesh_, s.mesh_id);
  if (!is_solid(*mesh_, s))
    throw std::invalid_argument("nu is defined on solid sets only");
  return evaluate(s);
}

QuasiMeasure::QuasiMeasure(SolidSetFunction base) : base_(std::move(base)) {}

int QuasiMeasure::tau_open(const VertexSet& u) const {
  const SurfaceMesh& mesh = base_.mesh();
  check_same_mesh(mesh, u.mesh_id);
  if (u.kind != SetKind::open)
    throw std::invalid_argument("tau_open expects an open set");
  if (static_cast<int>(u.members.size()) == mesh.vertex_count()) return 1;

  int total = 0;
  for (const VertexSet& comp : connected_components(mesh, u)) {
    // Each complement component of a connected set is solid on a sphere;
    // anything else means the mesh or the component machinery is broken.
    int used = 0;
    for (const VertexSet& k : connected_components(mesh, complement(mesh, comp))) {
      if (connected_components(mesh, complement(mesh, k)).size() != 1)
        throw std::logic_error("complement component is not solid; genus-0 invariant violated");
      used += base_.evaluate(k);
    }
    int contribution = 1 - used;
    if (contribution != 0 && contribution != 1)
      throw std::logic_error("simplicity violated: component contribution outside {0,1}");
    total += contribution;
  }
  if (total != 0 && total != 1)
    throw std::logic_error("simplicity violated: tau outside {0,1}");
  return total;
}

int QuasiMeasure::tau_closed(const VertexSet& c) const {
  check_same_mesh(base_.mesh(), c.mesh_id);
  if (c.kind != SetKind::closed)
    throw std::invalid_argument("tau_closed expects a closed set");
  return 1 - tau_open(complement(base_.mesh(), c));
}

}  // namespace pbsharp
