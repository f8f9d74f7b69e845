#include "sierpfvm/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <Eigen/Dense>

#include "sierpfvm/spectral.hpp"
#include "sierpfvm/vertex_graph.hpp"

namespace sierpfvm {

double norm_2_inf(const StateSeries& series) {
  if (series.values.empty()) throw std::invalid_argument("empty state series");
  double best = 0.0;
  for (const auto& u : series.values)
    best = std::max(best, scaled_l2(series.d, series.m, u));
  return best;
}

std::vector<double> restrict_state(int d, const std::vector<double>& fine) {
  if (d < 2) throw std::invalid_argument("branching number d must be >= 2");
  if (fine.empty() || fine.size() % static_cast<std::size_t>(d) != 0)
    throw std::invalid_argument("fine state length is not a multiple of d");
  std::vector<double> coarse(fine.size() / static_cast<std::size_t>(d));
  for (std::size_t j = 0; j < coarse.size(); ++j) {
    // Shifted mean: equal children restrict to their exact common value,
    // making restriction a true left inverse of constant prolongation.
    const double base = fine[j * static_cast<std::size_t>(d)];
    long double acc = 0.0;
    for (int i = 1; i < d; ++i) acc += fine[j * static_cast<std::size_t>(d) + i] - base;
    coarse[j] = static_cast<double>(base + acc / d);
  }
  return coarse;
}

std::vector<double> prolong_state(int d, const std::vector<double>& coarse) {
  if (d < 2) throw std::invalid_argument("branching number d must be >= 2");
  std::vector<double> fine(coarse.size() * static_cast<std::size_t>(d));
  for (std::size_t j = 0; j < coarse.size(); ++j)
    for (int i = 0; i < d; ++i) fine[j * static_cast<std::size_t>(d) + i] = coarse[j];
  return fine;
}

bool ConvergenceTable::monotone_decreasing() const {
  double prev = 0.0;
  bool have_prev = false;
  for (const auto& row : rows) {
    if (row.failed) continue;
    if (have_prev && !(row.error < prev)) return false;
    prev = row.error;
    have_prev = true;
  }
  return true;
}

namespace {

std::vector<std::int64_t> even_snapshots(std::int64_t N, int count) {
  std::vector<std::int64_t> steps;
  steps.push_back(0);
  for (int k = 1; k < count; ++k) {
    const std::int64_t s = (N * k) / (count - 1);
    if (s > steps.back()) steps.push_back(s);
  }
  if (steps.back() != N) steps.push_back(N);
  return steps;
}

InitialCondition study_initial_condition() {
  // The junction f_1(P_1) = f_2(P_0) exists at every level m >= 1.
  return InitialCondition::vertex_spline(Word({1}), 1);
}

}  // namespace

ConvergenceTable self_convergence_study(int d, const std::vector<int>& m_list, Scheme scheme,
                                        double T, std::int64_t N, int snapshot_count) {
  if (m_list.empty()) throw std::invalid_argument("empty level list");
  for (std::size_t i = 0; i < m_list.size(); ++i) {
    if (m_list[i] < 1) throw std::invalid_argument("study levels must be >= 1");
    if (i > 0 && m_list[i] <= m_list[i - 1])
      throw std::invalid_argument("study levels must be strictly increasing");
  }
  const int m_ref = m_list.back() + 1;
  if (N <= 0) {
    if (scheme == Scheme::explicit_euler) {
      N = static_cast<std::int64_t>(std::ceil(T / cfl_max_h(d, m_ref)));
      N = std::max<std::int64_t>(N, 1);
      while (!cfl_admissible(d, m_ref, T / static_cast<double>(N))) ++N;
    } else {
      N = 200;
    }
  }

  ConvergenceTable table;
  table.d = d;
  table.m_ref = m_ref;
  table.scheme = scheme;
  table.T = T;
  table.N = N;

  SchemeConfig config;
  config.T = T;
  config.N = N;
  config.scheme = scheme;
  config.boundary_mode = BoundaryMode::dirichlet_ghost;
  config.cfl_policy = CflPolicy::enforce;
  config.snapshot_steps = even_snapshots(N, snapshot_count);

  const InitialCondition ic = study_initial_condition();
  const RunResult ref = run(config, initial_state(ic, d, m_ref), d, m_ref);
  if (!ref.ok)
    throw std::runtime_error("reference run failed at step " + std::to_string(ref.failed_step) +
                             ": " + ref.error);

  for (int m : m_list) {
    ConvergenceRow row;
    row.m = m;
    row.h = config.step_size();
    try {
      const RunResult res = run(config, initial_state(ic, d, m), d, m);
      if (!res.ok) throw std::runtime_error(res.error);
      StateSeries diff;
      diff.d = d;
      diff.m = m;
      for (std::size_t s = 0; s < res.series.values.size(); ++s) {
        std::vector<double> restricted = ref.series.values[s];
        for (int level = m_ref; level > m; --level) restricted = restrict_state(d, restricted);
        std::vector<double> e = res.series.values[s];
        for (std::size_t i = 0; i < e.size(); ++i) e[i] -= restricted[i];
        diff.values.push_back(std::move(e));
      }
      row.error = norm_2_inf(diff);
    } catch (const std::exception& ex) {
      row.failed = true;
      row.note = ex.what();
    }
    table.rows.push_back(std::move(row));
  }

  for (std::size_t i = 1; i < table.rows.size(); ++i) {
    auto& cur = table.rows[i];
    const auto& prev = table.rows[i - 1];
    if (!cur.failed && !prev.failed && cur.error > 0.0)
      cur.rate = std::log2(prev.error / cur.error);
  }
  return table;
}

FdmComparison fdm_compare(int d, int m, double T, std::int64_t N,
                          std::vector<std::int64_t> snapshot_steps) {
  if (m < 1) throw std::invalid_argument("fdm comparison requires m >= 1");
  if (N < 1) throw std::invalid_argument("step count N must be >= 1");
  const VertexGraph vg = build_vertex_laplacian(d, m, VertexMode::merged);
  if (vg.n_vertices > kEigenSolverBudget)
    throw std::invalid_argument("vertex graph dimension " + std::to_string(vg.n_vertices) +
                                " exceeds the comparator budget");

  const double h = T / static_cast<double>(N);
  const double c = scheme_coefficient(d, m);

  // Stability of the vertex-graph explicit scheme: h c lambda_max <= 2 with
  // lambda_max <= 2 * max degree = 4(d-1), checked against the actual value.
  {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(vg.to_dense(), Eigen::EigenvaluesOnly);
    const double lmax = es.eigenvalues().maxCoeff();
    if (h * c * lmax > 2.0)
      throw std::invalid_argument("vertex-graph explicit step is unstable: need h <= " +
                                  std::to_string(2.0 / (c * lmax)));
  }

  if (snapshot_steps.empty()) snapshot_steps = even_snapshots(N, 6);

  // FVM leg.
  SchemeConfig config;
  config.T = T;
  config.N = N;
  config.scheme = Scheme::explicit_euler;
  config.boundary_mode = BoundaryMode::dirichlet_ghost;
  config.cfl_policy = CflPolicy::enforce;
  config.snapshot_steps = snapshot_steps;
  const InitialCondition ic = study_initial_condition();
  const RunResult fvm = run(config, initial_state(ic, d, m), d, m);
  if (!fvm.ok) throw std::runtime_error("fvm run failed: " + fvm.error);

  // FDM leg: explicit Euler on the merged vertex Laplacian, corners pinned
  // to the homogeneous Dirichlet value.
  const std::int64_t nv = vg.n_vertices;
  std::vector<double> u(static_cast<std::size_t>(nv), 0.0);
  {
    const BaryPoint x = rescale_bary(vertex_bary(d, Word({1}), 1), m);
    const std::int64_t cells = cell_count(d, m);
    bool placed = false;
    for (std::int64_t cidx = 0; cidx < cells && !placed; ++cidx) {
      const Word w = word_from_index(d, m, cidx);
      for (int i = 0; i < d; ++i) {
        if (vertex_bary(d, w, i) == x) {
          u[static_cast<std::size_t>(
              vg.cell_corner_vertex[static_cast<std::size_t>(cidx * d + i)])] = 1.0;
          placed = true;
          break;
        }
      }
    }
    if (!placed) throw std::logic_error("junction vertex not found in the vertex graph");
  }

  FdmComparison cmp;
  cmp.d = d;
  cmp.m = m;
  cmp.T = T;
  cmp.N = N;

  const std::int64_t n_cells = cell_count(d, m);
  auto cell_average = [&](const std::vector<double>& vu) {
    std::vector<double> avg(static_cast<std::size_t>(n_cells));
    for (std::int64_t cidx = 0; cidx < n_cells; ++cidx) {
      long double acc = 0.0;
      for (int i = 0; i < d; ++i)
        acc += vu[static_cast<std::size_t>(
            vg.cell_corner_vertex[static_cast<std::size_t>(cidx * d + i)])];
      avg[static_cast<std::size_t>(cidx)] = static_cast<double>(acc / d);
    }
    return avg;
  };
  auto pearson = [](const std::vector<double>& a, const std::vector<double>& b) {
    const std::size_t n = a.size();
    long double ma = 0.0, mb = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      ma += a[i];
      mb += b[i];
    }
    ma /= n;
    mb /= n;
    long double saa = 0.0, sbb = 0.0, sab = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const long double da = a[i] - ma, db = b[i] - mb;
      saa += da * da;
      sbb += db * db;
      sab += da * db;
    }
    if (saa <= 0.0 || sbb <= 0.0) return 0.0;
    return static_cast<double>(sab / std::sqrt(saa * sbb));
  };

  auto compare_at = [&](std::size_t snap_idx, const std::vector<double>& vu) {
    const std::vector<double> fdm_avg = cell_average(vu);
    const std::vector<double>& fvm_u = fvm.series.values[snap_idx];
    double sup_diff = 0.0, fvm_sup = 0.0, fdm_sup = 0.0;
    for (std::size_t i = 0; i < fdm_avg.size(); ++i) {
      sup_diff = std::max(sup_diff, std::abs(fvm_u[i] - fdm_avg[i]));
      fvm_sup = std::max(fvm_sup, std::abs(fvm_u[i]));
      fdm_sup = std::max(fdm_sup, std::abs(fdm_avg[i]));
    }
    cmp.steps.push_back(fvm.series.steps[snap_idx]);
    cmp.correlation.push_back(pearson(fvm_u, fdm_avg));
    cmp.sup_difference.push_back(sup_diff);
    cmp.fvm_sup.push_back(fvm_sup);
    cmp.fdm_sup.push_back(fdm_sup);
  };

  const double hc = h * c;
  std::vector<double> lu(static_cast<std::size_t>(nv));
  std::size_t next_snap = 0;
  auto maybe_snapshot = [&](std::int64_t step) {
    if (next_snap < snapshot_steps.size() && snapshot_steps[next_snap] == step) {
      compare_at(next_snap, u);
      ++next_snap;
    }
  };
  maybe_snapshot(0);
  for (std::int64_t step = 1; step <= N; ++step) {
    for (std::int64_t i = 0; i < nv; ++i) {
      long double acc = static_cast<long double>(vg.diag[static_cast<std::size_t>(i)]) *
                        u[static_cast<std::size_t>(i)];
      for (std::int32_t j : vg.adjacency[static_cast<std::size_t>(i)])
        acc -= u[static_cast<std::size_t>(j)];
      lu[static_cast<std::size_t>(i)] = static_cast<double>(acc);
    }
    for (std::int64_t i = 0; i < nv; ++i)
      u[static_cast<std::size_t>(i)] -= hc * lu[static_cast<std::size_t>(i)];
    for (std::int32_t cl : vg.corner_labels) u[static_cast<std::size_t>(cl)] = 0.0;
    maybe_snapshot(step);
  }
  return cmp;
}

}  // namespace sierpfvm
