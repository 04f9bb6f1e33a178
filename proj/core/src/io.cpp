#include "pbsharp/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <system_error>

namespace pbsharp {

std::string format_double(double x) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  if (ec != std::errc()) throw std::runtime_error("failed to format a double");
  return std::string(buf, ptr);
}

nlohmann::ordered_json mesh_to_json(const SurfaceMesh& mesh) {
  nlohmann::ordered_json j;
  j["vertices"] = nlohmann::ordered_json::array();
  for (const Vec3& p : mesh.vertices()) j["vertices"].push_back({p[0], p[1], p[2]});
  j["triangles"] = nlohmann::ordered_json::array();
  for (const auto& t : mesh.triangles()) j["triangles"].push_back({t[0], t[1], t[2]});
  j["weights"] = mesh.weights();
  j["markers"] = mesh.marker_vertices();
  return j;
}

SurfaceMesh mesh_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("vertices") || !j.contains("triangles") ||
      !j.contains("weights"))
    throw std::invalid_argument("mesh json needs vertices, triangles and weights");

  std::vector<Vec3> vertices;
  for (const auto& row : j.at("vertices")) {
    if (!row.is_array() || row.size() != 3)
      throw std::invalid_argument("vertex rows must hold three coordinates");
    vertices.push_back({row[0].get<double>(), row[1].get<double>(), row[2].get<double>()});
  }
  std::vector<std::array<int, 3>> triangles;
  for (const auto& row : j.at("triangles")) {
    if (!row.is_array() || row.size() != 3)
      throw std::invalid_argument("triangle rows must hold three vertex indices");
    triangles.push_back({row[0].get<int>(), row[1].get<int>(), row[2].get<int>()});
  }
  std::vector<double> weights = j.at("weights").get<std::vector<double>>();
  std::vector<int> markers;
  if (j.contains("markers")) markers = j.at("markers").get<std::vector<int>>();
  return SurfaceMesh(std::move(vertices), std::move(triangles), std::move(weights),
                     std::move(markers));
}

void save_mesh(const SurfaceMesh& mesh, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << mesh_to_json(mesh).dump() << '\n';
}

SurfaceMesh load_mesh(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open mesh file: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument("mesh file is not valid json: " + std::string(e.what()));
  }
  return mesh_from_json(j);
}

void save_field(const ScalarField& field, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  for (double v : field.values) out << format_double(v) << '\n';
}

ScalarField load_field(const SurfaceMesh& mesh, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open field file: " + path);
  std::vector<double> values;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const char* begin = line.data();
    const char* end = line.data() + line.size();
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(begin, end, v);
    if (ec != std::errc() || ptr != end)
      throw std::invalid_argument("bad field value at line " + std::to_string(line_no));
    values.push_back(v);
  }
  return ScalarField(mesh, std::move(values));
}

}  // namespace pbsharp
