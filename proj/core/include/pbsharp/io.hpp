#pragma once

#include <string>

#include <json.hpp>

#include "pbsharp/mesh.hpp"

namespace pbsharp {

/// Mesh wire format: {"vertices": [[x,y,z]...], "triangles": [[i,j,k]...],
/// "weights": [...], "markers": [...]}. Loading runs the full closed-surface
/// validation.
nlohmann::ordered_json mesh_to_json(const SurfaceMesh& mesh);
SurfaceMesh mesh_from_json(const nlohmann::json& j);

void save_mesh(const SurfaceMesh& mesh, const std::string& path);
SurfaceMesh load_mesh(const std::string& path);

/// Field wire format: CSV with one value per line, line i = vertex i.
/// Values are written shortest-round-trip so a load reproduces the exact
/// doubles.
void save_field(const ScalarField& field, const std::string& path);
ScalarField load_field(const SurfaceMesh& mesh, const std::string& path);

std::string format_double(double x);

}  // namespace pbsharp
