#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <random>
#include <stdexcept>
#include <string>

#include "pbsharp/io.hpp"
#include "pbsharp/mesh.hpp"
#include "pbsharp/random_fields.hpp"

using namespace pbsharp;

namespace {

SurfaceMesh axis_icosphere(int level) {
  return build_marked_icosphere(level, {Vec3{1, 0, 0}, Vec3{0, 1, 0}, Vec3{0, 0, 1}});
}

struct TempFile {
  std::string path;
  explicit TempFile(const std::string& name) : path("io_test_" + name) {}
  ~TempFile() { std::remove(path.c_str()); }
  void write(const std::string& text) const {
    std::ofstream out(path);
    out << text;
  }
  std::string read() const {
    std::ifstream in(path);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  }
};

}  // namespace

TEST_CASE("doubles format to their shortest exact decimal") {
  CHECK(format_double(0.0) == "0");
  CHECK(format_double(1.0) == "1");
  CHECK(format_double(0.1) == "0.1");
  CHECK(format_double(-2.5) == "-2.5");
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> dist(-10.0, 10.0);
  for (int i = 0; i < 200; ++i) {
    double x = dist(rng);
    CHECK(std::stod(format_double(x)) == x);
  }
}

TEST_CASE("mesh json survives a save/load/save cycle byte for byte") {
  SurfaceMesh m = axis_icosphere(2);
  TempFile first("mesh_a.json"), second("mesh_b.json");
  save_mesh(m, first.path);
  SurfaceMesh loaded = load_mesh(first.path);
  CHECK(loaded.vertices() == m.vertices());
  CHECK(loaded.triangles() == m.triangles());
  CHECK(loaded.weights() == m.weights());
  CHECK(loaded.marker_vertices() == m.marker_vertices());
  save_mesh(loaded, second.path);
  CHECK(first.read() == second.read());
}

TEST_CASE("mesh loading validates the file before trusting it") {
  TempFile bad("mesh_bad.json");

  SUBCASE("missing file") { CHECK_THROWS_AS(load_mesh("no_such_file.json"), std::runtime_error); }
  SUBCASE("not json") {
    bad.write("plainly not json");
    CHECK_THROWS_AS(load_mesh(bad.path), std::invalid_argument);
  }
  SUBCASE("missing keys") {
    bad.write(R"({"vertices": []})");
    CHECK_THROWS_AS(load_mesh(bad.path), std::invalid_argument);
  }
  SUBCASE("short vertex row") {
    bad.write(R"({"vertices": [[0, 0]], "triangles": [], "weights": []})");
    CHECK_THROWS_AS(load_mesh(bad.path), std::invalid_argument);
  }
  SUBCASE("open surface rejected by mesh validation") {
    // A single triangle is not a closed surface.
    bad.write(R"({"vertices": [[1,0,0],[0,1,0],[0,0,1]],
                  "triangles": [[0,1,2]], "weights": [1.0]})");
    CHECK_THROWS(load_mesh(bad.path));
  }
}

TEST_CASE("field csv reloads the exact same doubles") {
  SurfaceMesh m = axis_icosphere(2);
  std::mt19937_64 rng(2);
  ScalarField f = random_smooth_field(m, rng);
  TempFile csv("field.csv");
  save_field(f, csv.path);
  ScalarField back = load_field(m, csv.path);
  CHECK(back.values == f.values);
}

TEST_CASE("field loading reports the offending line") {
  SurfaceMesh m = axis_icosphere(0);
  TempFile csv("field_bad.csv");

  SUBCASE("missing file") {
    CHECK_THROWS_AS(load_field(m, "no_such_field.csv"), std::runtime_error);
  }
  SUBCASE("non-numeric line") {
    csv.write("0.5\nnot-a-number\n0.25\n");
    try {
      load_field(m, csv.path);
      FAIL("expected a parse failure");
    } catch (const std::invalid_argument& e) {
      CHECK(std::string(e.what()).find("line 2") != std::string::npos);
    }
  }
  SUBCASE("trailing garbage on a line") {
    csv.write("0.5 extra\n");
    CHECK_THROWS_AS(load_field(m, csv.path), std::invalid_argument);
  }
  SUBCASE("wrong value count") {
    csv.write("0.5\n0.25\n");
    CHECK_THROWS_AS(load_field(m, csv.path), std::invalid_argument);
  }
}
