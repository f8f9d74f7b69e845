// Command-line front end: simulate, spectrum, cfl, laplacian, convergence,
// export-geometry. Exit codes: 0 success, 1 module error, 2 usage error.

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sierpfvm/analysis.hpp"
#include "sierpfvm/io.hpp"
#include "sierpfvm/scheme.hpp"
#include "sierpfvm/spectral.hpp"
#include "sierpfvm/vertex_graph.hpp"

namespace fs = std::filesystem;
using namespace sierpfvm;

namespace {

std::string default_output_dir() {
  if (const char* env = std::getenv("SIERPFVM_OUTPUT_DIR"); env && *env) return env;
  return "sierpfvm-out";
}

std::ofstream open_output(const fs::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file " + path.string());
  return out;
}

std::vector<std::int64_t> parse_step_list(const std::string& text) {
  std::vector<std::int64_t> steps;
  std::istringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) steps.push_back(std::stoll(item));
  std::sort(steps.begin(), steps.end());
  steps.erase(std::unique(steps.begin(), steps.end()), steps.end());
  return steps;
}

struct SimulateCli {
  std::string preset_name;
  std::string config_path;
  std::string out_dir;
  std::string snapshots_text;
  std::string scheme_text, boundary_text, policy_text;
  int d = 0, m = 0, ghost = 2;
  double T = 0.0, cg_tol = 0.0;
  std::int64_t N = 0, cg_max = 0;
  std::string init_text;
};

int run_simulate(const SimulateCli& cli, const CLI::App& sub) {
  // Precedence: preset, then config file, then explicit flags.
  SimulateOptions opts;
  if (!cli.preset_name.empty()) opts = preset(cli.preset_name);
  if (!cli.config_path.empty()) opts = parse_config_file(cli.config_path, std::move(opts));
  if (sub.count("--d")) opts.d = cli.d;
  if (sub.count("--m")) opts.m = cli.m;
  if (sub.count("--T")) opts.T = cli.T;
  if (sub.count("--N")) opts.N = cli.N;
  if (sub.count("--scheme")) opts.scheme = scheme_from_string(cli.scheme_text);
  if (sub.count("--boundary")) opts.boundary_mode = boundary_mode_from_string(cli.boundary_text);
  if (sub.count("--cfl-policy")) opts.cfl_policy = cfl_policy_from_string(cli.policy_text);
  if (sub.count("--ghost-increment")) opts.ghost_increment = cli.ghost;
  if (sub.count("--cg-tolerance")) opts.cg_tolerance = cli.cg_tol;
  if (sub.count("--cg-max-iterations")) opts.cg_max_iterations = cli.cg_max;
  if (sub.count("--init")) opts.initial = cli.init_text;
  if (sub.count("--snapshots")) opts.snapshots = parse_step_list(cli.snapshots_text);
  opts.require_complete();

  const SchemeConfig config = opts.to_scheme_config();
  const int d = *opts.d, m = *opts.m;
  const double bound = cfl_max_h(d, m);
  const bool admissible = cfl_admissible(d, m, config.step_size());
  const std::string verdict = admissible ? "admissible" : "violated";

  const SimplexSpace space = SimplexSpace::regular(d);
  const InitialCondition ic = InitialCondition::parse(opts.initial, d);

  const fs::path dir = cli.out_dir.empty() ? fs::path(default_output_dir()) : fs::path(cli.out_dir);
  fs::create_directories(dir);

  const auto t0 = std::chrono::steady_clock::now();
  const RunResult result = run(config, initial_state(ic, d, m), d, m);
  const auto t1 = std::chrono::steady_clock::now();

  for (std::size_t s = 0; s < result.series.steps.size(); ++s) {
    const std::int64_t step = result.series.steps[s];
    std::ostringstream name;
    name << "snapshot_k" << step << ".csv";
    auto out = open_output(dir / name.str());
    write_snapshot_csv(out, space, m, step, static_cast<double>(step) * config.step_size(),
                       result.series.values[s]);
  }

  RunManifest manifest;
  manifest.options = opts;
  manifest.options.snapshots = config.snapshot_steps;
  manifest.cfl_bound = bound;
  manifest.cfl_verdict = verdict;
  manifest.wall_seconds = std::chrono::duration<double>(t1 - t0).count();
  {
    auto out = open_output(dir / "manifest.txt");
    manifest.write(out);
  }
  {
    auto out = open_output(dir / "summary.txt");
    write_run_summary(out, result, config, bound, verdict);
  }
  manifest.write(std::cout);
  write_run_summary(std::cout, result, config, bound, verdict);
  if (!result.ok) {
    std::cerr << "error: run aborted at step " << result.failed_step << ": " << result.error
              << "\n";
    return 1;
  }
  return 0;
}

}  // namespace

namespace {

int run_app(int argc, char** argv) {
  CLI::App app{"Finite volume heat-equation solver on Sierpinski simplices"};
  app.require_subcommand(1);
  app.failure_message(CLI::FailureMessage::help);
  app.set_help_flag("--help", "Print help and exit");  // frees -h/--h for step sizes

  SimulateCli sim;
  auto* simulate = app.add_subcommand("simulate", "Run the heat-equation scheme");
  simulate->add_option("--preset", sim.preset_name, "Named parameter set")
      ->check(CLI::IsMember(preset_names()));
  simulate->add_option("--config", sim.config_path, "key=value configuration file");
  simulate->add_option("--d", sim.d, "Branching number");
  simulate->add_option("--m", sim.m, "Mesh level");
  simulate->add_option("--T", sim.T, "Final time");
  simulate->add_option("--N", sim.N, "Number of steps");
  simulate->add_option("--scheme", sim.scheme_text, "explicit | implicit");
  simulate->add_option("--boundary", sim.boundary_text, "neumann-cells | dirichlet-ghost");
  simulate->add_option("--cfl-policy", sim.policy_text, "enforce | warn | ignore");
  simulate->add_option("--ghost-increment", sim.ghost, "Dirichlet ghost diagonal increment (1 or 2)");
  simulate->add_option("--cg-tolerance", sim.cg_tol, "CG relative residual bound");
  simulate->add_option("--cg-max-iterations", sim.cg_max, "CG iteration cap (0: 10 n)");
  simulate->add_option("--init", sim.init_text, "spike:<cell> | spline:<word>:<corner> | file:<path>");
  simulate->add_option("--snapshots", sim.snapshots_text, "Comma-separated step indices");
  simulate->add_option("--out", sim.out_dir, "Output directory");

  struct {
    int d = 0, m = 0;
    double h = 0.0;
  } cfl_args;
  auto* cfl = app.add_subcommand("cfl", "Check a step size against the stability bound");
  cfl->set_help_flag("--help", "Print help and exit");
  cfl->add_option("--d", cfl_args.d, "Branching number")->required();
  cfl->add_option("--m", cfl_args.m, "Mesh level")->required();
  cfl->add_option("--h", cfl_args.h, "Step size")->required();

  struct {
    int d = 0, m = 0, ghost = 2;
    std::string graph = "cell", boundary = "dirichlet-ghost", variant = "fused", out;
  } lap_args;
  auto* lap = app.add_subcommand("laplacian", "Export a Laplacian in sparse coordinate format");
  lap->add_option("--d", lap_args.d, "Branching number")->required();
  lap->add_option("--m", lap_args.m, "Mesh level")->required();
  lap->add_option("--graph", lap_args.graph, "cell | vertex");
  lap->add_option("--boundary", lap_args.boundary, "Cell-graph boundary mode");
  lap->add_option("--ghost-increment", lap_args.ghost, "Dirichlet ghost diagonal increment");
  lap->add_option("--variant", lap_args.variant, "Vertex-graph variant: fused | merged");
  lap->add_option("--out", lap_args.out, "Output file (default stdout)");

  struct {
    int d = 0, m = 0, ghost = 2;
    std::string boundary = "neumann-cells", out;
    bool verify = false;
  } spec_args;
  auto* spec = app.add_subcommand("spectrum", "Eigenvalues of the cell Laplacian");
  spec->add_option("--d", spec_args.d, "Branching number")->required();
  spec->add_option("--m", spec_args.m, "Mesh level")->required();
  spec->add_option("--boundary", spec_args.boundary, "Boundary mode");
  spec->add_option("--ghost-increment", spec_args.ghost, "Dirichlet ghost diagonal increment");
  spec->add_flag("--verify", spec_args.verify, "Annotate with the level m-1 decimation check");
  spec->add_option("--out", spec_args.out, "Output file (default stdout)");

  struct {
    int d = 0;
    std::string levels = "2,3,4", scheme = "implicit", out;
    double T = 0.1;
    std::int64_t N = 0;
  } conv_args;
  auto* conv = app.add_subcommand("convergence", "Self-convergence study across levels");
  conv->add_option("--d", conv_args.d, "Branching number")->required();
  conv->add_option("--levels", conv_args.levels, "Comma-separated ascending levels");
  conv->add_option("--scheme", conv_args.scheme, "explicit | implicit");
  conv->add_option("--T", conv_args.T, "Final time");
  conv->add_option("--N", conv_args.N, "Shared step count (0: default)");
  conv->add_option("--out", conv_args.out, "Table output file (default stdout)");

  struct {
    int d = 0, m = 0;
    std::string out;
  } geo_args;
  auto* geo = app.add_subcommand("export-geometry", "Cell words, barycenters and measures");
  geo->add_option("--d", geo_args.d, "Branching number")->required();
  geo->add_option("--m", geo_args.m, "Mesh level")->required();
  geo->add_option("--out", geo_args.out, "Output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (simulate->parsed()) return run_simulate(sim, *simulate);

    if (cfl->parsed()) {
      const double bound = cfl_max_h(cfl_args.d, cfl_args.m);
      const bool ok = cfl_admissible(cfl_args.d, cfl_args.m, cfl_args.h);
      std::cout << "h = " << format_double(cfl_args.h) << "\n";
      std::cout << "bound = " << format_double(bound) << "\n";
      std::cout << "verdict = " << (ok ? "admissible" : "violated") << "\n";
      return 0;
    }

    if (lap->parsed()) {
      std::ostringstream buf;
      if (lap_args.graph == "cell") {
        const CellLaplacian L =
            build_cell_laplacian(build_cell_graph(lap_args.d, lap_args.m),
                                 boundary_mode_from_string(lap_args.boundary), lap_args.ghost);
        write_laplacian_coo(buf, L);
      } else if (lap_args.graph == "vertex") {
        const VertexGraph g = build_vertex_laplacian(lap_args.d, lap_args.m,
                                                     vertex_mode_from_string(lap_args.variant));
        write_laplacian_coo(buf, g);
      } else {
        throw std::invalid_argument("unknown graph '" + lap_args.graph +
                                    "' (expected cell or vertex)");
      }
      if (lap_args.out.empty()) {
        std::cout << buf.str();
      } else {
        auto out = open_output(lap_args.out);
        out << buf.str();
      }
      return 0;
    }

    if (spec->parsed()) {
      const BoundaryMode mode = boundary_mode_from_string(spec_args.boundary);
      SpectrumReport report;
      if (spec_args.verify) {
        const DecimationReport rep =
            verify_decimation(spec_args.d, spec_args.m, mode, spec_args.ghost);
        report = rep.fine;
        std::cerr << "conforming " << report.conforming_count() << " / " << report.dimension
                  << ", exceptional " << report.exceptional_count() << "\n";
      } else {
        report = direct_spectrum(build_cell_laplacian(
            build_cell_graph(spec_args.d, spec_args.m), mode, spec_args.ghost));
      }
      std::ostringstream buf;
      write_spectrum_csv(buf, report);
      if (spec_args.out.empty()) {
        std::cout << buf.str();
      } else {
        auto out = open_output(spec_args.out);
        out << buf.str();
      }
      return 0;
    }

    if (conv->parsed()) {
      std::vector<int> levels;
      for (std::int64_t v : parse_step_list(conv_args.levels)) levels.push_back(static_cast<int>(v));
      const ConvergenceTable table = self_convergence_study(
          conv_args.d, levels, scheme_from_string(conv_args.scheme), conv_args.T, conv_args.N);
      std::ostringstream buf;
      write_convergence_csv(buf, table);
      if (conv_args.out.empty()) {
        std::cout << buf.str();
      } else {
        auto out = open_output(conv_args.out);
        out << buf.str();
      }
      const bool monotone = table.monotone_decreasing();
      std::cout << "d = " << table.d << "\n";
      std::cout << "m_ref = " << table.m_ref << "\n";
      std::cout << "scheme = " << to_string(table.scheme) << "\n";
      std::cout << "T = " << format_double(table.T) << "\n";
      std::cout << "N = " << table.N << "\n";
      std::cout << "monotone_decrease = " << (monotone ? "yes" : "no") << "\n";
      return monotone ? 0 : 1;
    }

    if (geo->parsed()) {
      const SimplexSpace space = SimplexSpace::regular(geo_args.d);
      std::ostringstream buf;
      write_geometry_csv(buf, space, geo_args.m);
      if (geo_args.out.empty()) {
        std::cout << buf.str();
      } else {
        auto out = open_output(geo_args.out);
        out << buf.str();
      }
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run_app(argc, argv);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
