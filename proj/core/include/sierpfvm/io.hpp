#ifndef SIERPFVM_IO_HPP
#define SIERPFVM_IO_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "sierpfvm/analysis.hpp"
#include "sierpfvm/cell_graph.hpp"
#include "sierpfvm/scheme.hpp"
#include "sierpfvm/spectral.hpp"
#include "sierpfvm/vertex_graph.hpp"

namespace sierpfvm {

inline constexpr const char* kVersion = "0.1.0";

/// Shortest round-trip decimal representation, locale independent.
std::string format_double(double v);

/// Full description of a simulate invocation.
struct SimulateOptions {
  std::optional<int> d;
  std::optional<int> m;
  std::optional<double> T;
  std::optional<std::int64_t> N;
  Scheme scheme = Scheme::explicit_euler;
  BoundaryMode boundary_mode = BoundaryMode::dirichlet_ghost;
  CflPolicy cfl_policy = CflPolicy::enforce;
  int ghost_increment = 2;
  double cg_tolerance = 1e-10;
  std::int64_t cg_max_iterations = 0;
  std::string initial = "spline:1:1";
  std::vector<std::int64_t> snapshots;  // empty: {0,10,100,500,N} clipped

  /// Throws std::invalid_argument listing every missing required key.
  void require_complete() const;
  SchemeConfig to_scheme_config() const;
};

/// Named parameter sets reproducing the reference experiments:
///   gasket-paper: d=3, m=6, T=1, N=200000, explicit
///   tetra-paper:  d=4, m=4, T=1, N=100000, explicit
SimulateOptions preset(const std::string& name);
std::vector<std::string> preset_names();

/// Parses a plain-text key=value configuration file into options, starting
/// from `base` and overriding exactly the keys present. Unknown keys,
/// malformed values and duplicate keys are reported with their line number.
/// '#' starts a comment.
SimulateOptions parse_config_file(const std::string& path, SimulateOptions base = {});
SimulateOptions parse_config_text(const std::string& text, const std::string& origin,
                                  SimulateOptions base = {});

/// Snapshot schedule used when none is given: {0, 10, 100, 500, N}, clipped
/// to [0, N].
std::vector<std::int64_t> default_snapshots(std::int64_t N);

/// Echo of one run: configuration, tool version, CFL verdict, duration.
/// Re-running with an identical manifest reproduces data files byte for byte.
struct RunManifest {
  SimulateOptions options;
  std::string version = kVersion;
  std::string cfl_verdict;
  double cfl_bound = 0.0;
  double wall_seconds = 0.0;

  void write(std::ostream& out) const;
};

void write_geometry_csv(std::ostream& out, const SimplexSpace& space, int m);
void write_snapshot_csv(std::ostream& out, const SimplexSpace& space, int m,
                        std::int64_t step, double time, const std::vector<double>& values);
void write_run_summary(std::ostream& out, const RunResult& result, const SchemeConfig& config,
                       double cfl_bound, const std::string& cfl_verdict);

/// Coordinate-format sparse export: first line "rows,cols,entries", then
/// zero-based "row,col,value" triples.
void write_laplacian_coo(std::ostream& out, const CellLaplacian& L);
void write_laplacian_coo(std::ostream& out, const VertexGraph& g);

void write_spectrum_csv(std::ostream& out, const SpectrumReport& report);
void write_convergence_csv(std::ostream& out, const ConvergenceTable& table);
void write_fdm_comparison_csv(std::ostream& out, const FdmComparison& cmp);

}  // namespace sierpfvm

#endif
