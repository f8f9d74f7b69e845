#include "sierpfvm/cell_graph.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace sierpfvm {

const char* to_string(BoundaryMode mode) {
  return mode == BoundaryMode::neumann_cells ? "neumann-cells" : "dirichlet-ghost";
}

BoundaryMode boundary_mode_from_string(const std::string& s) {
  if (s == "neumann-cells") return BoundaryMode::neumann_cells;
  if (s == "dirichlet-ghost") return BoundaryMode::dirichlet_ghost;
  throw std::invalid_argument("unknown boundary mode '" + s +
                              "' (expected neumann-cells or dirichlet-ghost)");
}

std::int64_t CellGraph::edge_count() const {
  std::int64_t twice = 0;
  for (const auto& ns : adjacency) twice += static_cast<std::int64_t>(ns.size());
  return twice / 2;
}

namespace {

// Zero-based index of the corner cell k^m: (k-1) * (d^m - 1) / (d - 1).
std::int32_t corner_cell_index(int d, int k, std::int64_t n_cells) {
  const std::int64_t idx = static_cast<std::int64_t>(k - 1) * (n_cells - 1) / (d - 1);
  return static_cast<std::int32_t>(idx);
}

}  // namespace

CellGraph build_cell_graph(int d, int m) {
  const std::int64_t n = cell_count(d, m);
  if (n > std::int64_t{1} << 31)
    throw std::overflow_error("cell graph with d^m > 2^31 cells is not supported");

  CellGraph g;
  g.d = d;
  g.m = m;
  g.n_cells = n;
  g.adjacency.assign(static_cast<std::size_t>(n), {});

  if (m >= 1) {
    // Level 1: complete graph on the d first-letter cells.
    std::int64_t level_n = d;
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j)
        if (i != j) g.adjacency[static_cast<std::size_t>(i)].push_back(j);

    for (int level = 2; level <= m; ++level) {
      // The first level_n lists already hold the level-1..level-1 structure;
      // copy them d-1 times with offsets, then add one joining edge per pair.
      for (int copy = 1; copy < d; ++copy) {
        const std::int64_t off = copy * level_n;
        for (std::int64_t v = 0; v < level_n; ++v) {
          auto& dst = g.adjacency[static_cast<std::size_t>(off + v)];
          dst = g.adjacency[static_cast<std::size_t>(v)];
          for (auto& w : dst) w += static_cast<std::int32_t>(off);
        }
      }
      for (int a = 1; a <= d; ++a) {
        for (int b = a + 1; b <= d; ++b) {
          // Cell a b^{level-1} lives in copy a as the corner cell of letter b,
          // and symmetrically for b a^{level-1}.
          const std::int32_t va = static_cast<std::int32_t>((a - 1) * level_n) +
                                  corner_cell_index(d, b, level_n);
          const std::int32_t vb = static_cast<std::int32_t>((b - 1) * level_n) +
                                  corner_cell_index(d, a, level_n);
          g.adjacency[static_cast<std::size_t>(va)].push_back(vb);
          g.adjacency[static_cast<std::size_t>(vb)].push_back(va);
        }
      }
      level_n *= d;
    }
  }

  for (auto& ns : g.adjacency) std::sort(ns.begin(), ns.end());
  if (m >= 1)
    g.corner_cells = corner_cells(d, m);
  else
    g.corner_cells.assign(static_cast<std::size_t>(d), 0);
  return g;
}

std::vector<std::int32_t> corner_cells(int d, int m) {
  if (m < 1) throw std::invalid_argument("corner cells require level m >= 1");
  const std::int64_t n = cell_count(d, m);
  std::vector<std::int32_t> cs;
  cs.reserve(static_cast<std::size_t>(d));
  for (int k = 1; k <= d; ++k) cs.push_back(corner_cell_index(d, k, n));
  return cs;
}

void CellLaplacian::apply(const std::vector<double>& u, std::vector<double>& out) const {
  if (static_cast<std::int64_t>(u.size()) != n)
    throw std::invalid_argument("state vector length does not match the Laplacian dimension");
  out.resize(u.size());
  for (std::int64_t i = 0; i < n; ++i) {
    long double acc = static_cast<long double>(diag[static_cast<std::size_t>(i)]) *
                      u[static_cast<std::size_t>(i)];
    for (std::int32_t j : adjacency[static_cast<std::size_t>(i)])
      acc -= u[static_cast<std::size_t>(j)];
    out[static_cast<std::size_t>(i)] = static_cast<double>(acc);
  }
}

Eigen::SparseMatrix<double> CellLaplacian::to_sparse() const {
  std::vector<Eigen::Triplet<double>> ts;
  ts.reserve(static_cast<std::size_t>(n + 2 * nnz()));
  for (std::int64_t i = 0; i < n; ++i) {
    ts.emplace_back(static_cast<int>(i), static_cast<int>(i), diag[static_cast<std::size_t>(i)]);
    for (std::int32_t j : adjacency[static_cast<std::size_t>(i)])
      ts.emplace_back(static_cast<int>(i), static_cast<int>(j), -1.0);
  }
  Eigen::SparseMatrix<double> s(static_cast<int>(n), static_cast<int>(n));
  s.setFromTriplets(ts.begin(), ts.end());
  return s;
}

Eigen::MatrixXd CellLaplacian::to_dense() const {
  Eigen::MatrixXd M = Eigen::MatrixXd::Zero(static_cast<int>(n), static_cast<int>(n));
  for (std::int64_t i = 0; i < n; ++i) {
    M(static_cast<int>(i), static_cast<int>(i)) = diag[static_cast<std::size_t>(i)];
    for (std::int32_t j : adjacency[static_cast<std::size_t>(i)])
      M(static_cast<int>(i), static_cast<int>(j)) = -1.0;
  }
  return M;
}

std::vector<double> CellLaplacian::row_sums() const {
  std::vector<double> rs(static_cast<std::size_t>(n));
  for (std::int64_t i = 0; i < n; ++i)
    rs[static_cast<std::size_t>(i)] =
        diag[static_cast<std::size_t>(i)] -
        static_cast<double>(adjacency[static_cast<std::size_t>(i)].size());
  return rs;
}

std::int64_t CellLaplacian::nnz() const {
  std::int64_t count = n;
  for (const auto& ns : adjacency) count += static_cast<std::int64_t>(ns.size());
  return count;
}

CellLaplacian build_cell_laplacian(const CellGraph& g, BoundaryMode mode, int ghost_increment) {
  if (ghost_increment != 1 && ghost_increment != 2)
    throw std::invalid_argument("dirichlet ghost increment must be 1 or 2");
  CellLaplacian L;
  L.d = g.d;
  L.m = g.m;
  L.boundary_mode = mode;
  L.ghost_increment = ghost_increment;
  L.n = g.n_cells;
  L.adjacency = g.adjacency;
  L.corner_cells = g.corner_cells;
  L.diag.resize(static_cast<std::size_t>(g.n_cells));
  for (std::int64_t i = 0; i < g.n_cells; ++i)
    L.diag[static_cast<std::size_t>(i)] =
        static_cast<double>(g.adjacency[static_cast<std::size_t>(i)].size());
  if (mode == BoundaryMode::dirichlet_ghost) {
    for (std::int32_t c : g.corner_cells)
      L.diag[static_cast<std::size_t>(c)] += static_cast<double>(ghost_increment);
  }
  return L;
}

}  // namespace sierpfvm
