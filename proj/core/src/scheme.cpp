#include "sierpfvm/scheme.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include <Eigen/IterativeLinearSolvers>
#include <Eigen/SparseCore>

#include "sierpfvm/spectral.hpp"

namespace sierpfvm {

const char* to_string(Scheme s) {
  return s == Scheme::explicit_euler ? "explicit" : "implicit";
}

Scheme scheme_from_string(const std::string& s) {
  if (s == "explicit") return Scheme::explicit_euler;
  if (s == "implicit") return Scheme::implicit_euler;
  throw std::invalid_argument("unknown scheme '" + s + "' (expected explicit or implicit)");
}

const char* to_string(CflPolicy p) {
  switch (p) {
    case CflPolicy::enforce: return "enforce";
    case CflPolicy::warn: return "warn";
    case CflPolicy::ignore: return "ignore";
  }
  return "?";
}

CflPolicy cfl_policy_from_string(const std::string& s) {
  if (s == "enforce") return CflPolicy::enforce;
  if (s == "warn") return CflPolicy::warn;
  if (s == "ignore") return CflPolicy::ignore;
  throw std::invalid_argument("unknown cfl policy '" + s + "'");
}

void SchemeConfig::validate() const {
  if (N < 1) throw std::invalid_argument("step count N must be >= 1");
  if (!(T > 0.0)) throw std::invalid_argument("final time T must be > 0");
  if (!(cg_tolerance > 0.0)) throw std::invalid_argument("cg tolerance must be > 0");
  for (std::size_t i = 0; i < snapshot_steps.size(); ++i) {
    if (snapshot_steps[i] < 0 || snapshot_steps[i] > N)
      throw std::invalid_argument("snapshot step " + std::to_string(snapshot_steps[i]) +
                                  " outside [0, N]");
    if (i > 0 && snapshot_steps[i] <= snapshot_steps[i - 1])
      throw std::invalid_argument("snapshot steps must be strictly increasing");
  }
}

double scheme_coefficient(int d, int m) {
  if (d < 2) throw std::invalid_argument("branching number d must be >= 2");
  if (m < 0) throw std::invalid_argument("level m must be >= 0");
  return 0.5 * d * std::pow(static_cast<double>(d + 2), m);
}

struct SchemeMatrix::ImplicitSolver {
  Eigen::SparseMatrix<double> A;  // I + h c L
  Eigen::ConjugateGradient<Eigen::SparseMatrix<double>, Eigen::Lower | Eigen::Upper> cg;
  std::int64_t last_iterations = 0;
  double last_error = 0.0;
};

std::int64_t SchemeMatrix::last_cg_iterations() const {
  return implicit_solver ? implicit_solver->last_iterations : 0;
}

double SchemeMatrix::last_cg_error() const {
  return implicit_solver ? implicit_solver->last_error : 0.0;
}

SchemeMatrix assemble(int d, int m, const SchemeConfig& config) {
  config.validate();
  MeasureSpec measure = config.measure;
  if (measure.weights.empty()) measure = MeasureSpec::standard(d);
  measure.validate();
  if (!measure.is_standard(d))
    throw std::invalid_argument(
        "the scheme requires the standard self-similar measure (all ratios 1/2)");

  const double h = config.step_size();
  if (config.scheme == Scheme::explicit_euler && !cfl_admissible(d, m, h)) {
    const double bound = cfl_max_h(d, m);
    std::ostringstream msg;
    msg << "explicit step h = " << h << " violates the CFL bound 2/(d^2 (d+2)^m) = " << bound
        << " for d = " << d << ", m = " << m;
    if (config.cfl_policy == CflPolicy::enforce) throw std::invalid_argument(msg.str());
    if (config.cfl_policy == CflPolicy::warn) std::cerr << "warning: " << msg.str() << "\n";
  }

  SchemeMatrix M;
  M.d = d;
  M.m = m;
  M.scheme = config.scheme;
  M.h = h;
  M.coefficient = scheme_coefficient(d, m);
  M.laplacian = build_cell_laplacian(build_cell_graph(d, m), config.boundary_mode,
                                     config.ghost_increment);

  if (config.scheme == Scheme::implicit_euler) {
    auto solver = std::make_shared<SchemeMatrix::ImplicitSolver>();
    Eigen::SparseMatrix<double> A = M.laplacian.to_sparse();
    A *= M.h * M.coefficient;
    for (int i = 0; i < A.rows(); ++i) A.coeffRef(i, i) += 1.0;
    A.makeCompressed();
    solver->A.swap(A);
    solver->cg.setTolerance(config.cg_tolerance);
    const std::int64_t cap =
        config.cg_max_iterations > 0 ? config.cg_max_iterations : 10 * M.laplacian.n;
    solver->cg.setMaxIterations(static_cast<Eigen::Index>(cap));
    solver->cg.compute(solver->A);
    M.implicit_solver = std::move(solver);
  }
  return M;
}

InitialCondition InitialCondition::spike(std::int64_t cell) {
  InitialCondition ic;
  ic.kind = Kind::spike;
  ic.spike_cell = cell;
  return ic;
}

InitialCondition InitialCondition::vertex_spline(Word w, int corner) {
  InitialCondition ic;
  ic.kind = Kind::vertex_spline;
  ic.spline_word = std::move(w);
  ic.spline_corner = corner;
  return ic;
}

InitialCondition InitialCondition::custom_values(std::vector<double> values) {
  InitialCondition ic;
  ic.kind = Kind::custom;
  ic.custom = std::move(values);
  return ic;
}

InitialCondition InitialCondition::parse(const std::string& text, int d) {
  const auto colon = text.find(':');
  const std::string head = text.substr(0, colon);
  if (head == "spike") {
    if (colon == std::string::npos)
      throw std::invalid_argument("spike initial condition needs a cell index: spike:<cell>");
    return spike(std::stoll(text.substr(colon + 1)));
  }
  if (head == "spline") {
    const auto second = text.find(':', colon + 1);
    if (colon == std::string::npos || second == std::string::npos)
      throw std::invalid_argument("spline initial condition format is spline:<word>:<corner>");
    Word w = Word::parse(text.substr(colon + 1, second - colon - 1), d);
    return vertex_spline(std::move(w), std::stoi(text.substr(second + 1)));
  }
  if (head == "file") {
    if (colon == std::string::npos)
      throw std::invalid_argument("custom initial condition needs a path: file:<path>");
    const std::string path = text.substr(colon + 1);
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open initial-condition file " + path);
    std::vector<double> vals;
    double v = 0.0;
    while (in >> v) vals.push_back(v);
    return custom_values(std::move(vals));
  }
  throw std::invalid_argument("unknown initial condition '" + text +
                              "' (expected spike:, spline: or file:)");
}

std::string InitialCondition::describe() const {
  switch (kind) {
    case Kind::spike: return "spike:" + std::to_string(spike_cell);
    case Kind::vertex_spline:
      return "spline:" + spline_word.to_string() + ":" + std::to_string(spline_corner);
    case Kind::custom: return "custom(" + std::to_string(custom.size()) + " values)";
  }
  return "?";
}

std::vector<double> initial_state(const InitialCondition& g, int d, int m) {
  const std::int64_t n = cell_count(d, m);
  std::vector<double> u(static_cast<std::size_t>(n), 0.0);
  switch (g.kind) {
    case InitialCondition::Kind::spike: {
      if (g.spike_cell < 0 || g.spike_cell >= n)
        throw std::out_of_range("spike cell " + std::to_string(g.spike_cell) + " outside [0, " +
                                std::to_string(n) + ")");
      u[static_cast<std::size_t>(g.spike_cell)] = 1.0;
      return u;
    }
    case InitialCondition::Kind::vertex_spline: {
      if (g.spline_word.level() > m)
        throw std::invalid_argument("spline vertex word is finer than the mesh level");
      if (g.spline_corner < 0 || g.spline_corner >= d)
        throw std::out_of_range("spline corner outside [0, d)");
      const BaryPoint x = rescale_bary(vertex_bary(d, g.spline_word, g.spline_corner), m);
      for (std::int64_t c = 0; c < n; ++c) {
        const Word w = word_from_index(d, m, c);
        int hits = 0;
        for (int i = 0; i < d; ++i)
          if (vertex_bary(d, w, i) == x) ++hits;
        if (hits > 0) u[static_cast<std::size_t>(c)] = static_cast<double>(hits) / d;
      }
      return u;
    }
    case InitialCondition::Kind::custom: {
      if (static_cast<std::int64_t>(g.custom.size()) != n)
        throw std::invalid_argument("custom initial condition has " +
                                    std::to_string(g.custom.size()) + " values, expected " +
                                    std::to_string(n));
      return g.custom;
    }
  }
  throw std::logic_error("unreachable");
}

std::vector<double> step_explicit(const SchemeMatrix& M, const std::vector<double>& u) {
  if (static_cast<std::int64_t>(u.size()) != M.n())
    throw std::invalid_argument("state length does not match the scheme dimension");
  std::vector<double> lu;
  M.laplacian.apply(u, lu);
  const double hc = M.h * M.coefficient;
  std::vector<double> v(u.size());
  for (std::size_t i = 0; i < u.size(); ++i)
    v[i] = static_cast<double>(static_cast<long double>(u[i]) -
                               static_cast<long double>(hc) * lu[i]);
  return v;
}

std::vector<double> step_implicit(const SchemeMatrix& M, const std::vector<double>& u) {
  if (!M.implicit_solver)
    throw std::logic_error("scheme matrix was not assembled for the implicit scheme");
  if (static_cast<std::int64_t>(u.size()) != M.n())
    throw std::invalid_argument("state length does not match the scheme dimension");
  auto& solver = *M.implicit_solver;
  const Eigen::Map<const Eigen::VectorXd> b(u.data(), static_cast<Eigen::Index>(u.size()));
  // Solve at unit scale: the relative-residual test degrades once the decayed
  // state reaches the denormal range, and the solve is scale-equivariant.
  const double scale = b.cwiseAbs().maxCoeff();
  if (scale == 0.0) return std::vector<double>(u.size(), 0.0);
  if (!std::isfinite(scale)) return u;  // propagates; the run loop flags it
  const Eigen::VectorXd bs = b / scale;
  Eigen::VectorXd x = solver.cg.solveWithGuess(bs, bs);
  solver.last_iterations = solver.cg.iterations();
  solver.last_error = solver.cg.error();
  if (solver.cg.info() != Eigen::Success)
    throw std::runtime_error("conjugate gradient failed to reach tolerance after " +
                             std::to_string(solver.cg.iterations()) +
                             " iterations (relative residual " +
                             std::to_string(solver.cg.error()) + ")");
  x *= scale;
  return std::vector<double>(x.data(), x.data() + x.size());
}

double scaled_l2(int d, int m, const std::vector<double>& u) {
  long double s = 0.0;
  for (double v : u) s += static_cast<long double>(v) * v;
  const long double scale = std::pow(static_cast<long double>(d), -m);
  return static_cast<double>(std::sqrt(scale * s));
}

double total_mass(int d, int m, const std::vector<double>& u) {
  long double s = 0.0;
  for (double v : u) s += v;
  return static_cast<double>(std::pow(static_cast<long double>(d), -m) * s);
}

RunResult run(const SchemeConfig& config, const std::vector<double>& initial, int d, int m) {
  const SchemeMatrix M = assemble(d, m, config);
  if (static_cast<std::int64_t>(initial.size()) != M.n())
    throw std::invalid_argument("initial state has length " + std::to_string(initial.size()) +
                                ", expected " + std::to_string(M.n()));

  std::vector<std::int64_t> snaps = config.snapshot_steps;
  if (snaps.empty()) snaps.push_back(config.N);

  RunResult result;
  result.series.d = d;
  result.series.m = m;

  std::vector<double> u = initial;
  std::size_t next_snap = 0;
  auto record = [&](std::int64_t step) {
    result.series.steps.push_back(step);
    result.series.values.push_back(u);
    result.series.masses.push_back(total_mass(d, m, u));
  };
  auto visit = [&](std::int64_t step) -> bool {
    for (double v : u) {
      if (!std::isfinite(v)) {
        result.ok = false;
        result.failed_step = step;
        result.error = "non-finite state value at step " + std::to_string(step);
        return false;
      }
    }
    result.series.running_norm_2_inf =
        std::max(result.series.running_norm_2_inf, scaled_l2(d, m, u));
    if (config.record_trajectory) result.series.trajectory.push_back(u);
    if (next_snap < snaps.size() && snaps[next_snap] == step) {
      record(step);
      ++next_snap;
    }
    return true;
  };

  if (!visit(0)) return result;
  for (std::int64_t step = 1; step <= config.N; ++step) {
    try {
      u = config.scheme == Scheme::explicit_euler ? step_explicit(M, u) : step_implicit(M, u);
    } catch (const std::exception& e) {
      result.ok = false;
      result.failed_step = step;
      result.error = e.what();
      return result;
    }
    if (config.scheme == Scheme::implicit_euler)
      result.total_cg_iterations += M.last_cg_iterations();
    if (!visit(step)) return result;
  }
  return result;
}

}  // namespace sierpfvm
