#include "pbsharp/mesh.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>

namespace pbsharp {

namespace {

std::atomic<std::uint64_t> next_mesh_id{1};

struct EdgeUse {
  int forward = 0;   // directed (a,b) with a < b
  int backward = 0;  // directed (b,a)
};

}  // namespace

SurfaceMesh::SurfaceMesh(std::vector<Vec3> vertices,
                         std::vector<std::array<int, 3>> triangles,
                         std::vector<double> weights,
                         std::vector<int> marker_vertices)
    : id_(next_mesh_id.fetch_add(1)),
      vertices_(std::move(vertices)),
      triangles_(std::move(triangles)),
      weights_(std::move(weights)),
      marker_vertices_(std::move(marker_vertices)) {
  const int nv = static_cast<int>(vertices_.size());
  const int nf = static_cast<int>(triangles_.size());
  if (nv < 4 || nf < 4) throw std::invalid_argument("mesh too small to be a closed surface");
  if (weights_.size() != triangles_.size())
    throw std::invalid_argument("weight count does not match triangle count");

  for (const Vec3& p : vertices_)
    if (!std::isfinite(p[0]) || !std::isfinite(p[1]) || !std::isfinite(p[2]))
      throw std::invalid_argument("non-finite vertex position");

  long double weight_sum = 0.0L;
  for (double w : weights_) {
    if (!std::isfinite(w) || w <= 0.0) throw std::invalid_argument("triangle weights must be positive");
    weight_sum += w;
  }
  total_weight_ = static_cast<double>(weight_sum);

  // Directed edge census. A closed oriented surface uses every directed edge
  // exactly once and every undirected edge in both directions.
  std::map<std::pair<int, int>, EdgeUse> edges;
  for (const auto& t : triangles_) {
    if (t[0] == t[1] || t[1] == t[2] || t[0] == t[2])
      throw std::invalid_argument("degenerate triangle with repeated vertex");
    for (int k = 0; k < 3; ++k) {
      int a = t[k], b = t[(k + 1) % 3];
      if (a < 0 || b < 0 || a >= nv || b >= nv)
        throw std::invalid_argument("triangle vertex index out of range");
      auto key = std::minmax(a, b);
      EdgeUse& use = edges[{key.first, key.second}];
      (a < b ? use.forward : use.backward) += 1;
    }
  }
  for (const auto& [key, use] : edges) {
    if (use.forward != 1 || use.backward != 1)
      throw std::invalid_argument("mesh is not a closed consistently oriented surface at edge (" +
                                  std::to_string(key.first) + "," + std::to_string(key.second) + ")");
  }
  edge_count_ = static_cast<int>(edges.size());

  for (int m : marker_vertices_)
    if (m < 0 || m >= nv) throw std::invalid_argument("marker vertex index out of range");

  // CSR vertex adjacency.
  std::vector<int> degree(nv, 0);
  for (const auto& [key, use] : edges) {
    (void)use;
    ++degree[key.first];
    ++degree[key.second];
  }
  adj_offsets_.assign(nv + 1, 0);
  for (int v = 0; v < nv; ++v) adj_offsets_[v + 1] = adj_offsets_[v] + degree[v];
  adj_neighbors_.assign(adj_offsets_[nv], 0);
  std::vector<int> cursor(adj_offsets_.begin(), adj_offsets_.end() - 1);
  for (const auto& [key, use] : edges) {
    (void)use;
    adj_neighbors_[cursor[key.first]++] = key.second;
    adj_neighbors_[cursor[key.second]++] = key.first;
  }
  for (int v = 0; v < nv; ++v)
    std::sort(adj_neighbors_.begin() + adj_offsets_[v], adj_neighbors_.begin() + adj_offsets_[v + 1]);

  for (const auto& [key, use] : edges) {
    (void)use;
    double len = norm(vertices_[key.first] - vertices_[key.second]);
    max_edge_length_ = std::max(max_edge_length_, len);
  }

  // Connectivity over vertices (edges cover every vertex on a closed surface).
  std::vector<char> seen(nv, 0);
  std::vector<int> stack{0};
  seen[0] = 1;
  int reached = 1;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (int i = adj_offsets_[v]; i < adj_offsets_[v + 1]; ++i) {
      int u = adj_neighbors_[i];
      if (!seen[u]) {
        seen[u] = 1;
        ++reached;
        stack.push_back(u);
      }
    }
  }
  if (reached != nv) throw std::invalid_argument("mesh is not connected");
}

ScalarField::ScalarField(const SurfaceMesh& mesh, std::vector<double> v)
    : values(std::move(v)), mesh_id(mesh.id()) {
  if (static_cast<int>(values.size()) != mesh.vertex_count())
    throw std::invalid_argument("field value count does not match vertex count");
  for (double x : values)
    if (!std::isfinite(x)) throw std::invalid_argument("non-finite field value");
}

double ScalarField::min_value() const { return *std::min_element(values.begin(), values.end()); }
double ScalarField::max_value() const { return *std::max_element(values.begin(), values.end()); }

void check_same_mesh(const SurfaceMesh& mesh, std::uint64_t object_mesh_id) {
  if (mesh.id() != object_mesh_id)
    throw std::invalid_argument("object belongs to a different mesh");
}

ScalarField field_sum(const SurfaceMesh& mesh, const ScalarField& f, const ScalarField& g) {
  check_same_mesh(mesh, f.mesh_id);
  check_same_mesh(mesh, g.mesh_id);
  std::vector<double> out(f.values.size());
  for (size_t i = 0; i < out.size(); ++i) out[i] = f.values[i] + g.values[i];
  return ScalarField(mesh, std::move(out));
}

ScalarField field_affine(const SurfaceMesh& mesh, const ScalarField& f, double a, double c) {
  check_same_mesh(mesh, f.mesh_id);
  std::vector<double> out(f.values.size());
  for (size_t i = 0; i < out.size(); ++i) out[i] = a * f.values[i] + c;
  return ScalarField(mesh, std::move(out));
}

namespace {

struct IcosphereData {
  std::vector<Vec3> vertices;
  std::vector<std::array<int, 3>> triangles;
};

IcosphereData base_icosahedron() {
  const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
  std::vector<Vec3> v = {
      {-1, phi, 0}, {1, phi, 0},  {-1, -phi, 0}, {1, -phi, 0},
      {0, -1, phi}, {0, 1, phi},  {0, -1, -phi}, {0, 1, -phi},
      {phi, 0, -1}, {phi, 0, 1},  {-phi, 0, -1}, {-phi, 0, 1},
  };
  for (Vec3& p : v) p = normalized(p);
  std::vector<std::array<int, 3>> f = {
      {0, 11, 5}, {0, 5, 1},  {0, 1, 7},   {0, 7, 10}, {0, 10, 11},
      {1, 5, 9},  {5, 11, 4}, {11, 10, 2}, {10, 7, 6}, {7, 1, 8},
      {3, 9, 4},  {3, 4, 2},  {3, 2, 6},   {3, 6, 8},  {3, 8, 9},
      {4, 9, 5},  {2, 4, 11}, {6, 2, 10},  {8, 6, 7},  {9, 8, 1},
  };
  return {std::move(v), std::move(f)};
}

void subdivide(IcosphereData& m) {
  std::map<std::pair<int, int>, int> midpoint;
  auto mid = [&](int a, int b) {
    auto key = std::minmax(a, b);
    auto it = midpoint.find(key);
    if (it != midpoint.end()) return it->second;
    int idx = static_cast<int>(m.vertices.size());
    m.vertices.push_back(normalized(0.5 * (m.vertices[a] + m.vertices[b])));
    midpoint.emplace(key, idx);
    return idx;
  };
  std::vector<std::array<int, 3>> out;
  out.reserve(m.triangles.size() * 4);
  for (const auto& t : m.triangles) {
    int ab = mid(t[0], t[1]), bc = mid(t[1], t[2]), ca = mid(t[2], t[0]);
    out.push_back({t[0], ab, ca});
    out.push_back({t[1], bc, ab});
    out.push_back({t[2], ca, bc});
    out.push_back({ab, bc, ca});
  }
  m.triangles = std::move(out);
}

}  // namespace

SurfaceMesh build_marked_icosphere(int level, const std::array<Vec3, 3>& markers) {
  if (level < 0 || level > 9) throw std::invalid_argument("icosphere level out of range [0,9]");

  IcosphereData m = base_icosahedron();
  for (int i = 0; i < level; ++i) subdivide(m);

  std::array<Vec3, 3> unit_markers;
  for (int k = 0; k < 3; ++k) {
    double n = norm(markers[k]);
    if (n < 1e-12) throw std::invalid_argument("marker must be a nonzero direction");
    unit_markers[k] = {markers[k][0] / n, markers[k][1] / n, markers[k][2] / n};
  }

  // Snap each marker onto its nearest vertex. Ties cannot occur for distinct
  // markers except at absurd coarseness, which is rejected below anyway.
  std::array<int, 3> snapped{};
  for (int k = 0; k < 3; ++k) {
    int best = 0;
    double best_dot = -2.0;
    for (int v = 0; v < static_cast<int>(m.vertices.size()); ++v) {
      double d = dot(m.vertices[v], unit_markers[k]);
      if (d > best_dot) {
        best_dot = d;
        best = v;
      }
    }
    snapped[k] = best;
  }
  if (snapped[0] == snapped[1] || snapped[1] == snapped[2] || snapped[0] == snapped[2])
    throw std::invalid_argument("markers too close together for this refinement level");
  for (int k = 0; k < 3; ++k) m.vertices[snapped[k]] = unit_markers[k];

  std::vector<double> weights(m.triangles.size());
  long double area_sum = 0.0L;
  for (size_t t = 0; t < m.triangles.size(); ++t) {
    const auto& tri = m.triangles[t];
    weights[t] = spherical_triangle_area(m.vertices[tri[0]], m.vertices[tri[1]], m.vertices[tri[2]]);
    area_sum += weights[t];
  }
  for (double& w : weights) w = static_cast<double>(w / area_sum);

  return SurfaceMesh(std::move(m.vertices), std::move(m.triangles), std::move(weights),
                     {snapped[0], snapped[1], snapped[2]});
}

VertexSet make_vertex_set(const SurfaceMesh& mesh, std::vector<int> members, SetKind kind) {
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  if (!members.empty() && (members.front() < 0 || members.back() >= mesh.vertex_count()))
    throw std::invalid_argument("vertex set member out of range");
  return VertexSet{std::move(members), kind, mesh.id()};
}

VertexSet complement(const SurfaceMesh& mesh, const VertexSet& s) {
  check_same_mesh(mesh, s.mesh_id);
  std::vector<char> in(mesh.vertex_count(), 0);
  for (int v : s.members) in[v] = 1;
  std::vector<int> out;
  out.reserve(mesh.vertex_count() - s.members.size());
  for (int v = 0; v < mesh.vertex_count(); ++v)
    if (!in[v]) out.push_back(v);
  SetKind kind = s.kind == SetKind::open ? SetKind::closed : SetKind::open;
  return VertexSet{std::move(out), kind, mesh.id()};
}

std::vector<VertexSet> connected_components(const SurfaceMesh& mesh, const VertexSet& s) {
  check_same_mesh(mesh, s.mesh_id);
  std::vector<char> in(mesh.vertex_count(), 0);
  for (int v : s.members) in[v] = 1;

  std::vector<VertexSet> out;
  std::vector<char> seen(mesh.vertex_count(), 0);
  std::vector<int> stack;
  const auto& off = mesh.adjacency_offsets();
  const auto& nbr = mesh.neighbors();

  // Seeds scanned in ascending order, so components come out ordered by their
  // smallest member.
  for (int seed : s.members) {
    if (seen[seed]) continue;
    std::vector<int> comp;
    stack.assign(1, seed);
    seen[seed] = 1;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      comp.push_back(v);
      for (int i = off[v]; i < off[v + 1]; ++i) {
        int u = nbr[i];
        if (in[u] && !seen[u]) {
          seen[u] = 1;
          stack.push_back(u);
        }
      }
    }
    std::sort(comp.begin(), comp.end());
    out.push_back(VertexSet{std::move(comp), s.kind, mesh.id()});
  }
  return out;
}

bool is_solid(const SurfaceMesh& mesh, const VertexSet& s) {
  check_same_mesh(mesh, s.mesh_id);
  if (s.members.empty() || static_cast<int>(s.members.size()) == mesh.vertex_count())
    throw std::invalid_argument("solidity undefined for the empty or the full set");
  if (connected_components(mesh, s).size() != 1) return false;
  return connected_components(mesh, complement(mesh, s)).size() == 1;
}

double set_area(const SurfaceMesh& mesh, const VertexSet& s) {
  check_same_mesh(mesh, s.mesh_id);
  std::vector<char> in(mesh.vertex_count(), 0);
  for (int v : s.members) in[v] = 1;
  long double acc = 0.0L;
  const auto& tris = mesh.triangles();
  const auto& w = mesh.weights();
  for (size_t t = 0; t < tris.size(); ++t) {
    int cnt = in[tris[t][0]] + in[tris[t][1]] + in[tris[t][2]];
    if (cnt) acc += w[t] * cnt;
  }
  return static_cast<double>(acc / 3.0L);
}

int euler_characteristic(const SurfaceMesh& mesh) {
  return mesh.vertex_count() - mesh.edge_count() + mesh.triangle_count();
}

}  // namespace pbsharp
