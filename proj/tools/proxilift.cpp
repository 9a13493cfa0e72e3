// proxilift: best approximation, linear selections and quotient lifts from
// the command line. See README.md for the report formats.

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "proxilift/function_space.hpp"
#include "proxilift/propcheck.hpp"
#include "proxilift/report.hpp"

namespace fs = std::filesystem;
using namespace proxilift;

namespace {

constexpr int kExitCertificateMismatch = 3;

struct CommonFlags {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<double> tol;
  std::optional<int> grid;
  std::string out;
  bool timings = false;

  void attach(CLI::App* cmd, bool with_grid) {
    cmd->add_option("--config", config_path, "key=value configuration file");
    cmd->add_option("--seed", seed, "RNG seed (falls back to PROXILIFT_SEED, then 42)");
    cmd->add_option("--tol", tol, "relative equality tolerance eps_eq");
    if (with_grid) cmd->add_option("--grid", grid, "uniform grid size per axis");
    cmd->add_option("--out", out, "output file (JSON commands) or directory (CSV commands)");
    cmd->add_flag("--timings", timings, "include wall-clock timings in the report");
  }

  RunConfig resolve() const {
    RunConfig c;
    if (!config_path.empty()) c = load_config(config_path, c);
    if (seed) c.seed = seed;
    if (tol) c.tol.eps_eq = *tol;
    if (grid) c.grid_n = *grid;
    if (!out.empty()) c.out = out;
    if (timings) c.timings = true;
    c.validate();
    return c;
  }
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot read '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  out << text;
}

void emit(const std::string& json, const std::string& out) {
  if (out.empty()) {
    std::cout << json;
  } else {
    write_file(out, json);
  }
}

Subspace subspace_from(const std::string& space_spec, const std::string& basis_spec, const Tolerance& tol) {
  const Space x = parse_space(space_spec);
  std::vector<Vector> vectors;
  if (!basis_spec.empty() && basis_spec != "0") vectors = parse_vectors(basis_spec);
  for (const auto& v : vectors) {
    if (v.size() != x.dim) {
      throw DimensionError("basis vector has " + std::to_string(v.size()) + " entries, space has dimension " +
                           std::to_string(x.dim));
    }
  }
  return Subspace::span(x, vectors, tol);
}

// id | poly:c0,c1,... | csv:path
GridFunction function_1d(const std::string& spec, const ClosedSet1D& d, int grid_n) {
  if (spec.rfind("csv:", 0) == 0) return parse_csv_1d(read_file(spec.substr(4)));
  const auto xs = aligned_grid(grid_n, d);
  if (spec == "id") return sample([](double x) { return x; }, xs);
  if (spec.rfind("poly:", 0) == 0) {
    const Vector c = parse_vector(spec.substr(5));
    return sample(
        [c](double x) {
          double acc = 0.0;
          for (Eigen::Index i = c.size() - 1; i >= 0; --i) acc = acc * x + c(i);
          return acc;
        },
        xs);
  }
  throw std::invalid_argument("unknown function spec '" + spec + "' (expected id, poly:..., csv:path)");
}

// const:c | radius | x | y | xy
GridFunction2D function_2d(const std::string& spec, int n) {
  if (spec.rfind("const:", 0) == 0) {
    const double c = parse_vector(spec.substr(6))(0);
    return sample_2d([c](double, double) { return c; }, n);
  }
  if (spec == "radius") return sample_2d([](double x, double y) { return std::hypot(x, y); }, n);
  if (spec == "x") return sample_2d([](double x, double) { return x; }, n);
  if (spec == "y") return sample_2d([](double, double y) { return y; }, n);
  if (spec == "xy") return sample_2d([](double x, double y) { return x * y; }, n);
  throw std::invalid_argument("unknown 2-D function spec '" + spec + "' (expected const:c, radius, x, y, xy)");
}

int run_analyze(const CommonFlags& flags, const std::string& space, const std::string& basis) {
  const RunConfig config = flags.resolve();
  const auto report = analyze(subspace_from(space, basis, config.tol), config);
  emit(to_json(report, config.timings), config.out);
  return exit_code(report.qlp);
}

int run_lift_cmd(const CommonFlags& flags, const std::string& op_file, const std::string& space,
                 const std::string& basis) {
  const RunConfig config = flags.resolve();
  const QuotientSpace q(subspace_from(space, basis, config.tol), config.tol);
  const LinearMap S = parse_operator(read_file(op_file), q);
  const LiftRun run = run_lift(S, config);
  emit(to_json(run, config.timings), config.out);
  return run.lift ? 0 : 2;
}

int run_select_c01(const CommonFlags& flags, const std::string& d_spec, const std::string& f_spec) {
  const RunConfig config = flags.resolve();
  const ClosedSet1D d = ClosedSet1D::parse(d_spec);
  const GridFunction f = function_1d(f_spec, d, config.grid_n);
  const GridFunction f1 = star_selection_1d(f, d);
  const C01Certificate cert = certify_c01(f, f1, d, config.grid_n);
  const std::string json = to_json(cert);
  if (!config.out.empty()) {
    const fs::path dir(config.out);
    fs::create_directories(dir);
    GridFunction residual{f.xs, f.values};
    for (std::size_t i = 0; i < residual.values.size(); ++i) residual.values[i] -= f1.values[i];
    write_file(dir / "f.csv", to_csv(f));
    write_file(dir / "f1.csv", to_csv(f1));
    write_file(dir / "residual.csv", to_csv(residual));
    write_file(dir / "certificate.json", json);
  }
  std::cout << json;
  return cert.equal && cert.vanishes_on_d ? 0 : kExitCertificateMismatch;
}

int run_select_c01_2d(const CommonFlags& flags, const std::string& region_spec, const std::string& f_spec) {
  RunConfig config = flags.resolve();
  // 1025^2 points make unwieldy CSVs; the 2-D command defaults to 129
  if (!flags.grid && flags.config_path.empty()) config.grid_n = 129;
  const Region2D d = parse_region(region_spec);
  const GridFunction2D f = function_2d(f_spec, config.grid_n);
  const Star2DResult result = star_selection_2d(f, d);
  const C01Certificate2D cert = certify_c01_2d(result.f1, result, d, region_spec);
  const std::string json = to_json(cert);
  if (!config.out.empty()) {
    const fs::path dir(config.out);
    fs::create_directories(dir);
    write_file(dir / "f.csv", to_csv(f));
    write_file(dir / "f1.csv", to_csv(result.f1));
    write_file(dir / "certificate.json", json);
  }
  std::cout << json;
  return cert.max_abs_f1_on_d == 0.0 ? 0 : kExitCertificateMismatch;
}

int run_propcheck(const CommonFlags& flags, const std::string& suite, int trials) {
  const RunConfig config = flags.resolve();
  const SuiteResult result = run_suite(suite, trials, config.effective_seed(), config.tol);
  emit(to_json(result, config.timings), config.out);
  return result.ok() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"proxilift: metric projections, linear selections and quotient lifts"};
  app.require_subcommand(1);

  CommonFlags flags;
  std::string space, basis, op_file, d_spec, f_spec, region, suite;
  int trials = 100;

  auto* analyze_cmd = app.add_subcommand("analyze", "Chebyshev verdict, J0 shape and lifting property of J in X");
  analyze_cmd->add_option("--space", space, "linf:N, l1:N or l2:N")->required();
  analyze_cmd->add_option("--subspace", basis, "basis vectors, e.g. \"1,1,0;0,0,1\"")->required();
  flags.attach(analyze_cmd, false);

  auto* lift_cmd = app.add_subcommand("lift", "Norm-preserving lift of S : Y -> X/J");
  lift_cmd->add_option("--operator", op_file, "JSON operator file")->required()->check(CLI::ExistingFile);
  lift_cmd->add_option("--space", space, "linf:N, l1:N or l2:N")->required();
  lift_cmd->add_option("--subspace", basis, "basis vectors of J")->required();
  flags.attach(lift_cmd, false);

  auto* c01_cmd = app.add_subcommand("select-c01", "Linear selection onto the functions vanishing on D in C[0,1]");
  c01_cmd->add_option("--D,-D", d_spec, "closed set, e.g. \"[0.2,0.4];[0.6,0.8]\"")->required();
  c01_cmd->add_option("--f,-f", f_spec, "id | poly:c0,c1,... | csv:path")->required();
  flags.attach(c01_cmd, true);

  auto* c01_2d_cmd = app.add_subcommand("select-c01-2d", "Per-ray selection on [0,1]^2");
  c01_2d_cmd->add_option("--region", region, "e.g. \"annulus:0.4,0.6\" or \"box:0,0,0.5,0.5;disk:1,1,0.2\"")
      ->required();
  c01_2d_cmd->add_option("--f,-f", f_spec, "const:c | radius | x | y | xy")->required();
  flags.attach(c01_2d_cmd, true);

  auto* prop_cmd = app.add_subcommand("propcheck", "Run a seeded property suite");
  prop_cmd->add_option("suite", suite, "suite name")->required();
  prop_cmd->add_option("--trials", trials, "number of trials")->check(CLI::NonNegativeNumber);
  flags.attach(prop_cmd, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitInputError;
  }

  try {
    if (*analyze_cmd) return run_analyze(flags, space, basis);
    if (*lift_cmd) return run_lift_cmd(flags, op_file, space, basis);
    if (*c01_cmd) return run_select_c01(flags, d_spec, f_spec);
    if (*c01_2d_cmd) return run_select_c01_2d(flags, region, f_spec);
    if (*prop_cmd) return run_propcheck(flags, suite, trials);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInputError;
  }
  return kExitInputError;
}
