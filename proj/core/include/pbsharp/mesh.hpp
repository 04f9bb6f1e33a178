#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "pbsharp/geometry.hpp"

namespace pbsharp {

/// Closed oriented triangulated surface with per-triangle positive weights.
/// Construction validates the closed-surface invariants (every edge shared by
/// exactly two triangles with opposite directions, connected, finite data) and
/// rejects anything else, so downstream code can rely on them.
class SurfaceMesh {
 public:
  SurfaceMesh(std::vector<Vec3> vertices,
              std::vector<std::array<int, 3>> triangles,
              std::vector<double> weights,
              std::vector<int> marker_vertices = {});

  std::uint64_t id() const { return id_; }

  int vertex_count() const { return static_cast<int>(vertices_.size()); }
  int triangle_count() const { return static_cast<int>(triangles_.size()); }
  int edge_count() const { return edge_count_; }

  const std::vector<Vec3>& vertices() const { return vertices_; }
  const std::vector<std::array<int, 3>>& triangles() const { return triangles_; }
  const std::vector<double>& weights() const { return weights_; }
  const std::vector<int>& marker_vertices() const { return marker_vertices_; }

  double total_weight() const { return total_weight_; }
  double max_edge_length() const { return max_edge_length_; }

  // Vertex adjacency in CSR layout, neighbors of v are
  // neighbors()[adjacency_offsets()[v] .. adjacency_offsets()[v+1]).
  const std::vector<int>& adjacency_offsets() const { return adj_offsets_; }
  const std::vector<int>& neighbors() const { return adj_neighbors_; }

 private:
  std::uint64_t id_;
  std::vector<Vec3> vertices_;
  std::vector<std::array<int, 3>> triangles_;
  std::vector<double> weights_;
  std::vector<int> marker_vertices_;
  std::vector<int> adj_offsets_;
  std::vector<int> adj_neighbors_;
  int edge_count_ = 0;
  double total_weight_ = 0.0;
  double max_edge_length_ = 0.0;
};

enum class SetKind { open, closed };

/// Set of vertices of one mesh, tagged open or closed. The tag records which
/// role the set plays for the quasi-measure; the member list is plain data.
struct VertexSet {
  std::vector<int> members;  // sorted, unique
  SetKind kind = SetKind::open;
  std::uint64_t mesh_id = 0;
};

/// Per-vertex scalar values on one mesh.
struct ScalarField {
  ScalarField() = default;
  ScalarField(const SurfaceMesh& mesh, std::vector<double> values);

  std::vector<double> values;
  std::uint64_t mesh_id = 0;

  double min_value() const;
  double max_value() const;
};

ScalarField field_sum(const SurfaceMesh& mesh, const ScalarField& f, const ScalarField& g);
ScalarField field_affine(const SurfaceMesh& mesh, const ScalarField& f, double a, double c);

/// Icosphere refined `level` times with the three marker points snapped onto
/// the three nearest distinct vertices. Weights are spherical triangle areas
/// normalized to total 1.
SurfaceMesh build_marked_icosphere(int level, const std::array<Vec3, 3>& markers);

VertexSet make_vertex_set(const SurfaceMesh& mesh, std::vector<int> members, SetKind kind);

/// Complement within the mesh vertex set; flips the open/closed tag.
VertexSet complement(const SurfaceMesh& mesh, const VertexSet& s);

/// Connected components of the induced subgraph on s. Components are ordered
/// by smallest member and each member list is sorted, so the output is a
/// deterministic function of the set alone.
std::vector<VertexSet> connected_components(const SurfaceMesh& mesh, const VertexSet& s);

/// True when s and its complement are both connected. Rejects the empty and
/// the full set, where solidity is undefined.
bool is_solid(const SurfaceMesh& mesh, const VertexSet& s);

/// Weight of the sets footprint: each triangle contributes its weight times
/// the fraction (member vertex count)/3, so a set and its complement always
/// partition the total weight.
double set_area(const SurfaceMesh& mesh, const VertexSet& s);

int euler_characteristic(const SurfaceMesh& mesh);

void check_same_mesh(const SurfaceMesh& mesh, std::uint64_t object_mesh_id);

}  // namespace pbsharp
