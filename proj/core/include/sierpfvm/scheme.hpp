#ifndef SIERPFVM_SCHEME_HPP
#define SIERPFVM_SCHEME_HPP

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "sierpfvm/cell_graph.hpp"
#include "sierpfvm/simplex.hpp"

namespace sierpfvm {

enum class Scheme { explicit_euler, implicit_euler };
const char* to_string(Scheme s);
Scheme scheme_from_string(const std::string& s);

enum class CflPolicy { enforce, warn, ignore };
const char* to_string(CflPolicy p);
CflPolicy cfl_policy_from_string(const std::string& s);

struct SchemeConfig {
  double T = 1.0;
  std::int64_t N = 1;
  Scheme scheme = Scheme::explicit_euler;
  BoundaryMode boundary_mode = BoundaryMode::dirichlet_ghost;
  CflPolicy cfl_policy = CflPolicy::enforce;
  std::vector<std::int64_t> snapshot_steps;  // sorted indices in [0, N]
  double cg_tolerance = 1e-10;
  std::int64_t cg_max_iterations = 0;  // 0 means 10 * n_cells
  int ghost_increment = 2;
  MeasureSpec measure;  // defaults to the standard measure at assembly
  bool record_trajectory = false;

  double step_size() const { return T / static_cast<double>(N); }
  void validate() const;
};

/// Time-step coefficient c(d, m) = (d/2) (d+2)^m multiplying the
/// combinatorial cell Laplacian. Equivalently (h/mu(C)) r^{-m} (d/2) with
/// the renormalization factor r = d/(d+2).
double scheme_coefficient(int d, int m);

/// Assembled one-step operator, held as L plus scalars (A = I - h c L for
/// the explicit scheme, A~ = I + h c L for the implicit one).
struct SchemeMatrix {
  int d = 0;
  int m = 0;
  Scheme scheme = Scheme::explicit_euler;
  double h = 0.0;
  double coefficient = 0.0;  // c(d, m)
  CellLaplacian laplacian;

  std::int64_t n() const { return laplacian.n; }

  /// Conjugate-gradient statistics of the most recent implicit solve.
  std::int64_t last_cg_iterations() const;
  double last_cg_error() const;

  // Shared implicit-solver state (sparse operator + CG); set by assemble()
  // for the implicit scheme. The solve statistics make a SchemeMatrix
  // unsuitable for concurrent implicit stepping; assemble one per run.
  struct ImplicitSolver;
  std::shared_ptr<ImplicitSolver> implicit_solver;
};

/// Builds the scheme operator for (d, m). Explicit assembly under
/// cfl_policy = enforce rejects steps above the CFL bound; warn prints to
/// stderr; ignore stays silent. Non-standard measures are rejected.
SchemeMatrix assemble(int d, int m, const SchemeConfig& config);

/// Initial cell averages u0_J.
struct InitialCondition {
  enum class Kind { spike, vertex_spline, custom } kind = Kind::vertex_spline;
  std::int64_t spike_cell = 0;    // spike: indicator of one cell
  Word spline_word;               // vertex_spline: the point F_w(P_corner)
  int spline_corner = 1;
  std::vector<double> custom;     // custom: one value per cell

  static InitialCondition spike(std::int64_t cell);
  static InitialCondition vertex_spline(Word w, int corner);
  static InitialCondition custom_values(std::vector<double> values);
  /// Parse "spike:<cell>", "spline:<word>:<corner>" or "file:<path>".
  static InitialCondition parse(const std::string& text, int d);

  std::string describe() const;
};

/// Cell-average vector of length d^m. The vertex spline uses the boundary
/// average of the cell integral: value (1/d) * (number of cell corners at
/// which the spline equals 1).
std::vector<double> initial_state(const InitialCondition& g, int d, int m);

std::vector<double> step_explicit(const SchemeMatrix& M, const std::vector<double>& u);
std::vector<double> step_implicit(const SchemeMatrix& M, const std::vector<double>& u);

/// Time-indexed snapshots of the cell-average vector.
struct StateSeries {
  int d = 0;
  int m = 0;
  std::vector<std::int64_t> steps;
  std::vector<std::vector<double>> values;
  std::vector<double> masses;        // d^{-m} sum u per snapshot
  double running_norm_2_inf = 0.0;   // max over all visited steps
  std::vector<std::vector<double>> trajectory;  // optional full history
};

struct RunResult {
  StateSeries series;
  bool ok = true;
  std::string error;
  std::int64_t failed_step = -1;
  std::int64_t total_cg_iterations = 0;
};

/// Advances the chosen stepper N times from the initial state, recording
/// snapshots, per-snapshot mass and the running scaled norm. A step error
/// aborts with its index; snapshots gathered so far are kept.
RunResult run(const SchemeConfig& config, const std::vector<double>& initial, int d, int m);

/// d^{-m/2}-scaled Euclidean norm of one state vector.
double scaled_l2(int d, int m, const std::vector<double>& u);

/// Total mass d^{-m} sum_J u_J.
double total_mass(int d, int m, const std::vector<double>& u);

}  // namespace sierpfvm

#endif
