// Command-line harness: builds the extremal constructions, runs the
// randomized verification suites, and emits machine-readable reports.
// Exit codes: 0 all checks pass, 1 a verified claim or internal invariant
// failed, 2 usage or input error.

#include <algorithm>
#include <charconv>
#include <fstream>
#include <iostream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "pbsharp/constructions.hpp"
#include "pbsharp/io.hpp"
#include "pbsharp/run.hpp"

namespace {

int parse_int_strict(const std::string& s) {
  int v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size()) {
    throw std::invalid_argument("bad integer: " + s);
  }
  return v;
}

double parse_double_strict(const std::string& s) {
  double v = 0.0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size()) {
    throw std::invalid_argument("bad number: " + s);
  }
  return v;
}

std::vector<std::string> split_commas(const std::string& text) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t comma = text.find(',', start);
    if (comma == std::string::npos) comma = text.size();
    out.push_back(text.substr(start, comma - start));
    start = comma + 1;
  }
  return out;
}

// "5", "3,4,5" or "3..6".
std::vector<int> parse_levels(const std::string& text) {
  std::vector<int> out;
  const std::size_t dots = text.find("..");
  if (dots != std::string::npos) {
    const int lo = parse_int_strict(text.substr(0, dots));
    const int hi = parse_int_strict(text.substr(dots + 2));
    if (hi < lo) throw std::invalid_argument("empty level range: " + text);
    if (hi - lo > 12) throw std::invalid_argument("level range too wide: " + text);
    for (int l = lo; l <= hi; ++l) out.push_back(l);
    return out;
  }
  for (const std::string& tok : split_commas(text)) out.push_back(parse_int_strict(tok));
  return out;
}

std::vector<double> parse_epsilons(const std::string& text) {
  std::vector<double> out;
  for (const std::string& tok : split_commas(text)) out.push_back(parse_double_strict(tok));
  return out;
}

int emit(const pbsharp::RunReport& report, const std::string& out_path,
         const std::string& format) {
  const std::string body =
      format == "csv" ? report.to_csv() : report.to_json().dump(2) + "\n";
  std::cout << body;
  if (!out_path.empty()) {
    std::ofstream out(out_path);
    if (!out) throw std::runtime_error("cannot open for writing: " + out_path);
    out << body;
  }
  return report.passed() ? 0 : 1;
}

void export_fields(const pbsharp::SurfaceMesh& mesh, const pbsharp::ScalarField& f,
                   const pbsharp::ScalarField& g, const std::string& mesh_out,
                   const std::string& fields_prefix) {
  if (!mesh_out.empty()) pbsharp::save_mesh(mesh, mesh_out);
  if (!fields_prefix.empty()) {
    pbsharp::save_field(f, fields_prefix + "_f.csv");
    pbsharp::save_field(g, fields_prefix + "_g.csv");
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Simple quasi-states and the Poisson bracket l1 norm on triangulated spheres"};
  app.require_subcommand(1);

  std::string out_path;
  std::string format = "json";
  std::string mesh_out;
  std::string fields_prefix;

  auto add_output_options = [&](CLI::App* cmd) {
    cmd->add_option("--out", out_path, "write the report to this file as well as stdout");
    cmd->add_option("--format", format, "report format on stdout and in --out")
        ->check(CLI::IsMember({"json", "csv"}));
  };

  // theorem1: the three-point extremal pair on the icosphere.
  std::string level_text = "5";
  pbsharp::Theorem1Options t1;
  CLI::App* theorem1 =
      app.add_subcommand("theorem1", "three-point extremal pair: zeta triple, bracket norm, "
                                     "sharpness ratio and fold count");
  theorem1->add_option("--level", level_text, "refinement level, list 3,4,5 or range 3..6")
      ->capture_default_str();
  theorem1->add_option("--profile", t1.profile, "smoothstep profile: exp or quintic")
      ->capture_default_str();
  theorem1->add_option("--covering-samples", t1.covering_samples,
                       "Monte-Carlo samples for the fold count, 0 to skip")
      ->capture_default_str();
  theorem1->add_option("--seed", t1.seed, "random seed")->capture_default_str();
  theorem1->add_option("--mesh-out", mesh_out, "save the finest mesh as JSON");
  theorem1->add_option("--fields-out", fields_prefix,
                       "save the finest F,G as <prefix>_f.csv, <prefix>_g.csv");
  add_output_options(theorem1);

  // theorem2: the median extremal pair on the doubled lattice triangle.
  std::string epsilon_text = "0.1";
  pbsharp::Theorem2Options t2;
  CLI::App* theorem2 =
      app.add_subcommand("theorem2", "median extremal pair: zeta triple and the squeeze of the "
                                     "sharpness ratio toward 1 as epsilon shrinks");
  theorem2->add_option("--epsilon", epsilon_text, "corner parameter in (0, 1/4), comma list")
      ->capture_default_str();
  theorem2->add_option("--level", t2.level, "lattice resolution step (0 is already fine)")
      ->capture_default_str();
  theorem2->add_option("--mesh-out", mesh_out, "save the smallest-epsilon mesh as JSON");
  theorem2->add_option("--fields-out", fields_prefix,
                       "save the smallest-epsilon F,G as <prefix>_f.csv, <prefix>_g.csv");
  add_output_options(theorem2);

  // verify: randomized measure axioms, bracket inequality, median oracle.
  pbsharp::VerifyOptions vo;
  std::string replay_file;
  CLI::App* verify =
      app.add_subcommand("verify", "randomized verification: quasi-measure axioms, the bracket "
                                   "inequality on seeded field pairs, median-oracle agreement");
  verify->add_option("--quasi-state", vo.quasi_state, "three-point or median")
      ->capture_default_str();
  verify->add_option("--level", vo.level, "icosphere refinement when no mesh file is given")
      ->capture_default_str();
  verify->add_option("--mesh", vo.mesh_file, "mesh JSON file to verify on");
  verify->add_option("--field", vo.field_files,
                     "field CSV (give twice for an explicit pair to check)");
  verify->add_option("--trials", vo.trials, "random field pairs for the inequality")
      ->capture_default_str();
  verify->add_option("--oracle-fields", vo.oracle_fields,
                     "random fields for the median oracle, 0 to skip")
      ->capture_default_str();
  verify->add_option("--seed", vo.seed, "random seed")->capture_default_str();
  verify->add_option("--replay", replay_file,
                     "re-run the violations stored in this report or row file");
  add_output_options(verify);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    pbsharp::RunReport report;
    if (app.got_subcommand(theorem1)) {
      t1.levels = parse_levels(level_text);
      report = pbsharp::run_theorem1(t1);
      if (!mesh_out.empty() || !fields_prefix.empty()) {
        auto built = pbsharp::theorem1_fields(
            {.level = *std::max_element(t1.levels.begin(), t1.levels.end()),
             .profile = pbsharp::SmoothStepProfile::from_name(t1.profile)});
        export_fields(built.mesh, built.f, built.g, mesh_out, fields_prefix);
      }
    } else if (app.got_subcommand(theorem2)) {
      t2.epsilons = parse_epsilons(epsilon_text);
      report = pbsharp::run_theorem2(t2);
      if (!mesh_out.empty() || !fields_prefix.empty()) {
        auto built = pbsharp::theorem2_surface(
            {.level = t2.level,
             .epsilon = *std::min_element(t2.epsilons.begin(), t2.epsilons.end())});
        export_fields(built.mesh, built.f, built.g, mesh_out, fields_prefix);
      }
    } else if (!replay_file.empty()) {
      report = pbsharp::run_replay(replay_file);
    } else {
      report = pbsharp::run_verify(vo);
    }
    return emit(report, out_path, format);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::runtime_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "invariant violated: " << e.what() << "\n";
    return 1;
  }
}
