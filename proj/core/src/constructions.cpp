#include "pbsharp/constructions.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <stdexcept>
#include <utility>

namespace pbsharp {

double rho(const SmoothStepProfile& profile, double x, double y) {
  double r2 = x * x + y * y;
  if (2.0 * r2 - 1.0 <= 0.0) return 0.0;  // also guards the origin
  double radial = profile(2.0 * r2 - 1.0);
  double s = (x + y) / std::sqrt(r2);
  if (s <= 0.0) return 0.0;
  return radial * profile(s);
}

PlanePair fg_plane(const SmoothStepProfile& profile, double x, double y) {
  double p = rho(profile, x, y);
  if (p == 0.0) return {};
  double r = std::sqrt(x * x + y * y);
  double ax = x > 0.0 ? profile(x / r) : 0.0;
  double ay = y > 0.0 ? profile(y / r) : 0.0;
  PlanePair out;
  if (ay == 0.0) {
    out.f = p;
  } else if (ax == 0.0) {
    out.g = p;
  } else if (ax >= ay) {
    // The larger share by its ratio (>= 1/2, so the remainder subtraction is
    // exact by Sterbenz) and the smaller as the remainder: f + g == p holds
    // bit for bit, keeping the top level set of F+G a single band.
    out.f = p * (ax / (ax + ay));
    out.g = p - out.f;
  } else {
    out.g = p * (ay / (ax + ay));
    out.f = p - out.g;
  }
  return out;
}

Theorem1Construction theorem1_fields(const ConstructionParams& params) {
  SurfaceMesh mesh = build_marked_icosphere(
      params.level, {Vec3{1, 0, 0}, Vec3{0, 1, 0}, Vec3{0, 0, 1}});

  std::vector<double> fv(mesh.vertex_count()), gv(mesh.vertex_count());
  for (int v = 0; v < mesh.vertex_count(); ++v) {
    PlanePair p = fg_plane(params.profile, mesh.vertices()[v][0], mesh.vertices()[v][1]);
    fv[v] = p.f;
    gv[v] = p.g;
  }
  ScalarField f(mesh, std::move(fv));
  ScalarField g(mesh, std::move(gv));
  return Theorem1Construction{std::move(mesh), std::move(f), std::move(g),
                              params.profile.name, params.level};
}

namespace {

// Lattice resolution: enough rows that the corner bites stay clear of the
// chords (n >= 5/eps) and the doubled surface has a few thousand triangles,
// scaled up by the level knob. Prefers an n that represents eps exactly as
// k/n; otherwise snaps eps to the nearest lattice fraction.
struct LatticeChoice {
  int n;
  int k;
};

LatticeChoice choose_lattice(double epsilon, int level) {
  int n_min = std::max(26 * (level + 2), static_cast<int>(std::ceil(5.0 / epsilon)));
  for (int n = n_min; n <= n_min + 2000; ++n) {
    double kf = epsilon * n;
    int k = static_cast<int>(std::lround(kf));
    if (k >= 1 && 4 * k < n && std::abs(kf - k) < 1e-9) return {n, k};
  }
  int k = std::max(1, static_cast<int>(std::lround(epsilon * n_min)));
  if (4 * k >= n_min) throw std::invalid_argument("epsilon too close to 1/4 for this lattice");
  return {n_min, k};
}

}  // namespace

Theorem2Construction theorem2_surface(const ConstructionParams& params) {
  const double epsilon = params.epsilon;
  if (!(epsilon > 0.0) || !(epsilon < 0.25))
    throw std::invalid_argument("epsilon must lie in (0, 1/4)");
  if (params.level < 0 || params.level > 12)
    throw std::invalid_argument("lattice level out of range [0,12]");

  const auto [n, k] = choose_lattice(epsilon, params.level);
  const double eps_eff = static_cast<double>(k) / static_cast<double>(n);
  const double step = 1.0 / static_cast<double>(n);
  const double bite_radius = 0.45 * eps_eff;

  // One sheet: triangular lattice on {i,j >= 0, i+j <= n}, coordinates
  // (i/n, j/n). Lattice lines i = const, j = const, i+j = const are edge
  // paths, so the three chords (i = k, j = k, i+j = n-k) never cross a
  // triangle interior.
  auto vid = [n](int i, int j) { return j * (n + 2) - j * (j + 1) / 2 + i; };
  const int sheet_vertex_count = (n + 1) * (n + 2) / 2;

  struct SheetTri {
    std::array<int, 3> vi;   // lattice vertex ids
    int ci3, cj3;            // 3 * centroid * n, exact integers
  };
  std::vector<SheetTri> tris;
  tris.reserve(n * n);
  for (int j = 0; j <= n - 1; ++j) {
    for (int i = 0; i + j <= n - 1; ++i) {
      tris.push_back({{vid(i, j), vid(i + 1, j), vid(i, j + 1)}, 3 * i + 1, 3 * j + 1});
      if (i + j <= n - 2)
        tris.push_back({{vid(i + 1, j), vid(i + 1, j + 1), vid(i, j + 1)}, 3 * i + 2, 3 * j + 2});
    }
  }

  // Corner bites: drop every sheet triangle that has a vertex strictly
  // inside one of the three corner disks. The disk radius is under eps/2 and
  // a removed triangle reaches at most radius + step from its corner, which
  // stays short of the nearest chord (distance eps/sqrt(2)) because
  // step <= eps/5.
  std::array<std::pair<double, double>, 3> corners = {{{0.0, 0.0}, {0.0, 1.0}, {1.0, 0.0}}};
  std::vector<std::pair<double, double>> coord(sheet_vertex_count);
  for (int j = 0; j <= n; ++j)
    for (int i = 0; i + j <= n; ++i)
      coord[vid(i, j)] = {static_cast<double>(i) / n, static_cast<double>(j) / n};
  auto in_bite = [&](int v) {
    for (const auto& [cx, cy] : corners) {
      double dx = coord[v].first - cx, dy = coord[v].second - cy;
      if (dx * dx + dy * dy < bite_radius * bite_radius) return true;
    }
    return false;
  };
  std::vector<char> vertex_bitten(sheet_vertex_count, 0);
  for (int v = 0; v < sheet_vertex_count; ++v) vertex_bitten[v] = in_bite(v) ? 1 : 0;
  std::vector<SheetTri> kept;
  kept.reserve(tris.size());
  for (const SheetTri& t : tris)
    if (!vertex_bitten[t.vi[0]] && !vertex_bitten[t.vi[1]] && !vertex_bitten[t.vi[2]])
      kept.push_back(t);

  // Region 1..7 from exact integer centroid comparisons against the chords.
  std::array<int, 8> region_count{};
  std::vector<int> region(kept.size());
  for (size_t t = 0; t < kept.size(); ++t) {
    bool left = kept[t].ci3 < 3 * k;
    bool bottom = kept[t].cj3 < 3 * k;
    bool far = kept[t].ci3 + kept[t].cj3 > 3 * (n - k);
    int r;
    if (left && bottom) r = 1;
    else if (left && far) r = 2;
    else if (bottom && far) r = 3;
    else if (left) r = 4;
    else if (far) r = 5;
    else if (bottom) r = 6;
    else r = 7;
    region[t] = r;
    ++region_count[r];
  }
  for (int r = 1; r <= 7; ++r)
    if (region_count[r] == 0) throw std::logic_error("empty region in the median surface lattice");

  const std::array<double, 7> masses = {0.2, 0.2, 0.2, 0.1, 0.1, 0.1, 0.1};

  // Compact sheet vertex ids.
  std::vector<int> used(sheet_vertex_count, -1);
  int nv_sheet = 0;
  for (const SheetTri& t : kept)
    for (int v : t.vi)
      if (used[v] < 0) used[v] = nv_sheet++;

  std::vector<std::pair<double, double>> xy(nv_sheet);
  for (int v = 0; v < sheet_vertex_count; ++v)
    if (used[v] >= 0) xy[used[v]] = coord[v];

  struct FlatTri {
    std::array<int, 3> vi;
    int region;
  };
  std::vector<FlatTri> flat;
  flat.reserve(kept.size());
  for (size_t t = 0; t < kept.size(); ++t)
    flat.push_back({{used[kept[t].vi[0]], used[kept[t].vi[1]], used[kept[t].vi[2]]}, region[t]});

  auto edge_census = [](const std::vector<FlatTri>& ts, int nv) {
    std::map<std::pair<int, int>, int> edge_use;
    for (const FlatTri& t : ts)
      for (int e = 0; e < 3; ++e) {
        auto key = std::minmax(t.vi[e], t.vi[(e + 1) % 3]);
        ++edge_use[{key.first, key.second}];
      }
    std::vector<char> boundary(nv, 0);
    for (const auto& [key, uses] : edge_use) {
      if (uses > 2) throw std::logic_error("non-manifold edge in the median surface lattice");
      if (uses == 1) {
        boundary[key.first] = 1;
        boundary[key.second] = 1;
      }
    }
    return std::pair{std::move(edge_use), std::move(boundary)};
  };

  auto [edge_use, on_boundary] = edge_census(flat, nv_sheet);

  // Doubling welds the two copies along boundary vertices, so an interior
  // edge with both endpoints on the boundary would put its top and bottom
  // copies onto the same vertex pair and pinch the surface. Such edges only
  // arise along the bite arcs; splitting them at their midpoints (red-green
  // subdivision of the touched triangles) moves the collision onto fresh
  // interior vertices. Children stay inside the parent, so they inherit its
  // region.
  {
    std::map<std::pair<int, int>, int> mid_of_edge;
    for (const auto& [key, uses] : edge_use)
      if (uses == 2 && on_boundary[key.first] && on_boundary[key.second]) {
        mid_of_edge[key] = nv_sheet++;
        xy.push_back({0.5 * (xy[key.first].first + xy[key.second].first),
                      0.5 * (xy[key.first].second + xy[key.second].second)});
      }
    if (!mid_of_edge.empty()) {
      auto mid = [&](int a, int b) {
        auto key = std::minmax(a, b);
        auto it = mid_of_edge.find({key.first, key.second});
        return it == mid_of_edge.end() ? -1 : it->second;
      };
      std::vector<FlatTri> split;
      split.reserve(flat.size() + 3 * mid_of_edge.size());
      for (const FlatTri& t : flat) {
        const int a = t.vi[0], b = t.vi[1], c = t.vi[2];
        const int mab = mid(a, b), mbc = mid(b, c), mca = mid(c, a);
        const int r = t.region;
        const int n_bad = (mab >= 0) + (mbc >= 0) + (mca >= 0);
        if (n_bad == 0) {
          split.push_back(t);
        } else if (n_bad == 3) {
          split.push_back({{a, mab, mca}, r});
          split.push_back({{mab, b, mbc}, r});
          split.push_back({{mca, mbc, c}, r});
          split.push_back({{mab, mbc, mca}, r});
        } else {
          // Rotate so the first edge is split; handle one or two midpoints.
          std::array<int, 3> v = {a, b, c};
          std::array<int, 3> m = {mab, mbc, mca};
          while (m[0] < 0) {
            v = {v[1], v[2], v[0]};
            m = {m[1], m[2], m[0]};
          }
          if (n_bad == 1) {
            split.push_back({{v[0], m[0], v[2]}, r});
            split.push_back({{m[0], v[1], v[2]}, r});
          } else if (m[1] >= 0) {  // edges v0v1 and v1v2
            split.push_back({{v[0], m[0], m[1]}, r});
            split.push_back({{m[0], v[1], m[1]}, r});
            split.push_back({{v[0], m[1], v[2]}, r});
          } else {  // edges v0v1 and v2v0
            split.push_back({{v[0], m[0], m[2]}, r});
            split.push_back({{m[0], v[1], m[2]}, r});
            split.push_back({{m[2], v[1], v[2]}, r});
          }
        }
      }
      flat = std::move(split);
      std::tie(edge_use, on_boundary) = edge_census(flat, nv_sheet);
      for (const auto& [key, uses] : edge_use)
        if (uses == 2 && on_boundary[key.first] && on_boundary[key.second])
          throw std::logic_error("pinched edge survived the median surface subdivision");
    }
  }

  // Glue two oppositely oriented copies along the boundary. Interior
  // vertices are duplicated, boundary vertices shared.
  std::vector<int> mirror(nv_sheet);
  int nv_total = nv_sheet;
  for (int v = 0; v < nv_sheet; ++v) mirror[v] = on_boundary[v] ? v : nv_total++;

  // Tent embedding: hop distance to the boundary lifts the two sheets apart.
  std::vector<int> hops(nv_sheet, -1);
  {
    std::vector<int> frontier;
    for (int v = 0; v < nv_sheet; ++v)
      if (on_boundary[v]) {
        hops[v] = 0;
        frontier.push_back(v);
      }
    std::vector<std::vector<int>> adj(nv_sheet);
    for (const auto& [key, uses] : edge_use) {
      (void)uses;
      adj[key.first].push_back(key.second);
      adj[key.second].push_back(key.first);
    }
    while (!frontier.empty()) {
      std::vector<int> next;
      for (int v : frontier)
        for (int u : adj[v])
          if (hops[u] < 0) {
            hops[u] = hops[v] + 1;
            next.push_back(u);
          }
      frontier = std::move(next);
    }
  }

  std::vector<Vec3> positions(nv_total);
  for (int v = 0; v < nv_sheet; ++v) {
    double z = 0.5 * step * hops[v];
    positions[v] = {xy[v].first, xy[v].second, z};
    if (mirror[v] != v) positions[mirror[v]] = {xy[v].first, xy[v].second, -z};
  }

  // Region masses are split evenly over each region's final triangles; the
  // two mirror copies of a triangle share its allocation.
  std::array<int, 8> final_count{};
  for (const FlatTri& t : flat) ++final_count[t.region];

  std::vector<std::array<int, 3>> triangles;
  std::vector<double> weights;
  std::vector<int> triangle_region;
  triangles.reserve(2 * flat.size());
  weights.reserve(2 * flat.size());
  triangle_region.reserve(2 * flat.size());
  for (const FlatTri& t : flat) {
    const int a = t.vi[0], b = t.vi[1], c = t.vi[2];
    const double w = masses[t.region - 1] / (2.0 * final_count[t.region]);
    triangles.push_back({a, b, c});
    weights.push_back(w);
    triangle_region.push_back(t.region);
    triangles.push_back({mirror[c], mirror[b], mirror[a]});
    weights.push_back(w);
    triangle_region.push_back(t.region);
  }

  SurfaceMesh mesh(std::move(positions), std::move(triangles), std::move(weights));
  if (euler_characteristic(mesh) != 2)
    throw std::logic_error("doubled median surface is not a sphere");

  std::vector<double> fv(mesh.vertex_count()), gv(mesh.vertex_count());
  for (int v = 0; v < mesh.vertex_count(); ++v) {
    fv[v] = mesh.vertices()[v][0];
    gv[v] = mesh.vertices()[v][1];
  }
  ScalarField f(mesh, std::move(fv));
  ScalarField g(mesh, std::move(gv));

  return Theorem2Construction{std::move(mesh),
                              std::move(f),
                              std::move(g),
                              epsilon,
                              eps_eff,
                              n,
                              bite_radius,
                              masses,
                              std::move(triangle_region)};
}

namespace {

struct ImageTriangle {
  double fa, ga, fb, gb, fc, gc;
};

constexpr double kGrazeTol = 1e-12;

// -1 graze, 0 outside, 1 strictly inside.
int classify_point(const ImageTriangle& t, double u, double v) {
  double d = (t.fb - t.fa) * (t.gc - t.ga) - (t.fc - t.fa) * (t.gb - t.ga);
  if (std::abs(d) < 1e-18) return 0;  // degenerate image, contributes nothing
  double sign = d > 0 ? 1.0 : -1.0;
  double s0 = ((t.fb - t.fa) * (v - t.ga) - (u - t.fa) * (t.gb - t.ga)) * sign;
  double s1 = ((t.fc - t.fb) * (v - t.gb) - (u - t.fb) * (t.gc - t.gb)) * sign;
  double s2 = ((t.fa - t.fc) * (v - t.gc) - (u - t.fc) * (t.ga - t.gc)) * sign;
  double lo = std::min({s0, s1, s2});
  if (lo > kGrazeTol) return 1;
  if (lo < -kGrazeTol) return 0;
  return -1;
}

}  // namespace

std::optional<int> preimage_count(const SurfaceMesh& mesh, const ScalarField& f,
                                  const ScalarField& g, double u, double v) {
  check_same_mesh(mesh, f.mesh_id);
  check_same_mesh(mesh, g.mesh_id);
  int count = 0;
  for (const auto& tr : mesh.triangles()) {
    ImageTriangle t{f.values[tr[0]], g.values[tr[0]], f.values[tr[1]],
                    g.values[tr[1]], f.values[tr[2]], g.values[tr[2]]};
    int c = classify_point(t, u, v);
    if (c < 0) return std::nullopt;
    count += c;
  }
  return count;
}

CoveringCountResult covering_count_diagnostic(const SurfaceMesh& mesh, const ScalarField& f,
                                              const ScalarField& g, int samples,
                                              std::uint64_t seed) {
  check_same_mesh(mesh, f.mesh_id);
  check_same_mesh(mesh, g.mesh_id);
  if (samples <= 0) throw std::invalid_argument("sample count must be positive");

  // Bucket image triangles on a uniform grid over [0,1]^2 so each sample
  // only tests nearby triangles.
  const int nt = mesh.triangle_count();
  std::vector<ImageTriangle> images(nt);
  for (int t = 0; t < nt; ++t) {
    const auto& tr = mesh.triangles()[t];
    images[t] = {f.values[tr[0]], g.values[tr[0]], f.values[tr[1]],
                 g.values[tr[1]], f.values[tr[2]], g.values[tr[2]]};
  }
  const int cells = 64;
  auto cell_of = [cells](double x) {
    int c = static_cast<int>(x * cells);
    return std::clamp(c, 0, cells - 1);
  };
  std::vector<std::vector<int>> buckets(cells * cells);
  for (int t = 0; t < nt; ++t) {
    const ImageTriangle& it = images[t];
    double flo = std::min({it.fa, it.fb, it.fc}), fhi = std::max({it.fa, it.fb, it.fc});
    double glo = std::min({it.ga, it.gb, it.gc}), ghi = std::max({it.ga, it.gb, it.gc});
    if (flo == fhi && glo == ghi) continue;  // degenerate point image
    int c0 = cell_of(flo - kGrazeTol), c1 = cell_of(fhi + kGrazeTol);
    int r0 = cell_of(glo - kGrazeTol), r1 = cell_of(ghi + kGrazeTol);
    for (int r = r0; r <= r1; ++r)
      for (int c = c0; c <= c1; ++c) buckets[r * cells + c].push_back(t);
  }

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);

  CoveringCountResult result;
  long long total = 0;
  long long attempts = 0;
  const long long max_attempts = 200LL * samples;
  while (result.samples < samples) {
    if (++attempts > max_attempts)
      throw std::runtime_error("covering diagnostic could not find enough interior samples");
    double a = unif(rng), b = unif(rng);
    if (a + b > 1.0) {
      a = 1.0 - a;
      b = 1.0 - b;
    }
    if (a <= 0.0 || b <= 0.0 || a + b >= 1.0) continue;

    int count = 0;
    bool grazed = false;
    for (int t : buckets[cell_of(b) * cells + cell_of(a)]) {
      int c = classify_point(images[t], a, b);
      if (c < 0) {
        grazed = true;
        break;
      }
      count += c;
    }
    if (grazed) {
      ++result.excluded;
      continue;
    }
    total += count;
    ++result.samples;
  }
  result.mean = static_cast<double>(total) / result.samples;
  return result;
}

}  // namespace pbsharp
