#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "seasonlv/commands.hpp"

namespace fs = std::filesystem;
using namespace seasonlv;

namespace {

struct Options {
  std::string scenario;
  std::string x0;
  std::size_t n = kDefaultWindow;
  std::size_t transient = kDefaultTransient;
  std::optional<double> rel_tol;
  std::optional<double> abs_tol;
  bool oracle = false;
  std::uint64_t seed = 0;
  unsigned jobs = 0;
  bool force = false;
  std::string out = "out";
  int resolution = 20;
  int iterations = 200;
  std::optional<std::size_t> samples;
  std::string spec;
};

Vec3 parse_x0(const std::string& text) {
  std::stringstream ss(text);
  std::string item;
  Vec3 x{};
  int i = 0;
  while (std::getline(ss, item, ',')) {
    if (i == 3) throw ParseError("--x0: expected three comma-separated numbers");
    x[i++] = parse_number(Json(item), "--x0");
  }
  if (i != 3) throw ParseError("--x0: expected three comma-separated numbers");
  return StateVec(x).values();
}

Scenario require_scenario(const Options& opt) {
  if (opt.scenario.empty()) throw ParseError("--scenario is required");
  Scenario sc = load_scenario(opt.scenario);
  if (opt.rel_tol) sc.integrator.rel_tol = *opt.rel_tol;
  if (opt.abs_tol) sc.integrator.abs_tol = *opt.abs_tol;
  sc.integrator.validate();
  return sc;
}

fs::path prepare_dir(const Options& opt, const std::string& name, const std::string& command) {
  const fs::path dir = fs::path(opt.out) / name / command;
  if (fs::exists(dir) && !fs::is_empty(dir)) {
    if (!opt.force) throw Error("output directory " + dir.string() + " exists; pass --force to overwrite");
    fs::remove_all(dir);
  }
  fs::create_directories(dir);
  return dir;
}

void write_json(const fs::path& path, const Json& doc) {
  std::ofstream os(path);
  if (!os) throw Error("cannot write " + path.string());
  os << doc.dump(2) << '\n';
}

template <class Writer>
void write_csv(const fs::path& path, Writer&& writer) {
  std::ofstream os(path);
  if (!os) throw Error("cannot write " + path.string());
  writer(os);
}

int emit(const Json& report, int status) {
  std::cout << report.dump(2) << '\n';
  return status;
}

int run_classify(const Options& opt) {
  const Scenario sc = require_scenario(opt);
  const fs::path dir = prepare_dir(opt, sc.name, "classify");
  CommandOutput res = classify_report(sc.params, opt.oracle);
  res.report["scenario"] = sc.name;
  write_json(dir / "classify.json", res.report);
  return emit(res.report, res.status);
}

int run_fixed_points(const Options& opt) {
  const Scenario sc = require_scenario(opt);
  const fs::path dir = prepare_dir(opt, sc.name, "fixed-points");
  CommandOutput res = fixed_points_report(sc.params, sc.integrator, opt.seed);
  res.report["scenario"] = sc.name;
  write_json(dir / "fixed_points.json", res.report);
  return emit(res.report, res.status);
}

int run_verify_index(const Options& opt) {
  const Scenario sc = require_scenario(opt);
  const fs::path dir = prepare_dir(opt, sc.name, "verify-index");
  CommandOutput res = verify_index_report(sc.params, sc.integrator, opt.seed);
  res.report["scenario"] = sc.name;
  write_json(dir / "verify_index.json", res.report);
  return emit(res.report, res.status);
}

int run_orbit(const Options& opt) {
  const Scenario sc = require_scenario(opt);
  Vec3 x0{};
  if (!opt.x0.empty()) x0 = parse_x0(opt.x0);
  else if (sc.x0) x0 = *sc.x0;
  else throw ParseError("orbit needs --x0 or an x0 entry in the scenario");
  const fs::path dir = prepare_dir(opt, sc.name, "orbit");
  OrbitOutput res = orbit_report(sc.params, x0, opt.n, opt.transient, sc.integrator, opt.seed);
  res.report["scenario"] = sc.name;
  write_csv(dir / "orbit.csv", [&](std::ostream& os) { write_orbit_csv(os, res.trace); });
  write_json(dir / "limit_set.json", res.report);
  return emit(res.report, kExitOk);
}

int run_simplex(const Options& opt) {
  const Scenario sc = require_scenario(opt);
  if (!derive(sc.params).admissible)
    return emit(Json{{"status", "inadmissible"}, {"scenario", sc.name}}, kExitDegenerate);
  const fs::path dir = prepare_dir(opt, sc.name, "simplex");
  SimplexOutput res = simplex_report(sc.params, opt.resolution, opt.iterations, sc.integrator, 1);
  res.report["scenario"] = sc.name;
  write_csv(dir / "mesh.csv", [&](std::ostream& os) { write_mesh_csv(os, res.mesh); });
  write_json(dir / "simplex.json", res.report);
  return emit(res.report, kExitOk);
}

int run_sweep(const Options& opt) {
  SweepSpec spec;
  std::string name = "sweep";
  if (!opt.spec.empty()) {
    std::ifstream in(opt.spec);
    if (!in) throw ParseError("cannot open sweep spec " + opt.spec);
    Json doc;
    try {
      doc = Json::parse(in);
    } catch (const Json::exception& e) {
      throw ParseError(opt.spec + ": " + e.what());
    }
    spec = parse_sweep_spec(doc);
    name = fs::path(opt.spec).stem().string();
  }
  if (opt.samples) spec.samples = *opt.samples;
  IntegratorConfig config;
  if (opt.rel_tol) config.rel_tol = *opt.rel_tol;
  if (opt.abs_tol) config.abs_tol = *opt.abs_tol;
  config.validate();
  const fs::path dir = prepare_dir(opt, name, "sweep");
  SweepOutput res = sweep_report(spec, config, opt.seed, opt.jobs);
  write_json(dir / "summary.json", res.summary);
  write_json(dir / "samples.json", res.samples);
  return emit(res.summary, kExitOk);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Seasonal-succession Lotka-Volterra toolkit"};
  app.require_subcommand(1);
  app.fallthrough();
  Options opt;
  app.add_option("--scenario", opt.scenario, "Scenario JSON file");
  app.add_option("--x0", opt.x0, "Initial state a,b,c (orbit)");
  app.add_option("--n", opt.n, "Iterates kept after the transient (orbit)")->check(CLI::PositiveNumber);
  app.add_option("--transient", opt.transient, "Iterates discarded first (orbit)");
  app.add_option("--rel-tol", opt.rel_tol, "Integrator relative tolerance");
  app.add_option("--abs-tol", opt.abs_tol, "Integrator absolute tolerance");
  app.add_flag("--oracle", opt.oracle, "Also print the Leslie-Gower oracle signature (classify)");
  app.add_option("--seed", opt.seed, "Seed for sampling and Newton seed jitter");
  app.add_option("--jobs", opt.jobs, "Worker threads for sweep (0: all cores)");
  app.add_flag("--force", opt.force, "Overwrite an existing output directory");
  app.add_option("--out", opt.out, "Output root directory")->capture_default_str();
  app.add_option("--resolution", opt.resolution, "Barycentric mesh resolution (simplex)")->check(CLI::PositiveNumber);
  app.add_option("--iterations", opt.iterations, "Iterations per mesh ray (simplex)")->check(CLI::PositiveNumber);
  app.add_option("--samples", opt.samples, "Number of samples (sweep)")->check(CLI::PositiveNumber);
  app.add_option("--spec", opt.spec, "Sweep spec JSON: samples and sampling box");

  int (*handler)(const Options&) = nullptr;
  app.add_subcommand("classify", "Boundary signature and equivalence class")->callback([&] { handler = run_classify; });
  app.add_subcommand("fixed-points", "All fixed points with stability and index")->callback([&] {
    handler = run_fixed_points;
  });
  app.add_subcommand("orbit", "Iterate the map and classify the limit set")->callback([&] { handler = run_orbit; });
  app.add_subcommand("simplex", "Point cloud on the carrying simplex")->callback([&] { handler = run_simplex; });
  app.add_subcommand("verify-index", "Check the fixed-point index formula")->callback([&] {
    handler = run_verify_index;
  });
  app.add_subcommand("sweep", "Classify sampled instances and check the index formula")->callback([&] {
    handler = run_sweep;
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitError;
  }
  try {
    return handler(opt);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitError;
  }
}
