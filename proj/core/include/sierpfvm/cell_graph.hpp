#ifndef SIERPFVM_CELL_GRAPH_HPP
#define SIERPFVM_CELL_GRAPH_HPP

#include <cstdint>
#include <vector>

#include <Eigen/Core>
#include <Eigen/SparseCore>

#include "sierpfvm/simplex.hpp"

namespace sierpfvm {

/// Treatment of the d outer corners in the cell Laplacian.
///   neumann_cells:  pure graph Laplacian, zero row sums (no boundary flux).
///   dirichlet_ghost: homogeneous Dirichlet data enters as an extra diagonal
///                    term on each corner cell (ghost value 0 at the corner).
enum class BoundaryMode { neumann_cells, dirichlet_ghost };

const char* to_string(BoundaryMode mode);
BoundaryMode boundary_mode_from_string(const std::string& s);

/// The FVM mesh: one node per m-cell, edges between cells sharing a point.
struct CellGraph {
  int d = 0;
  int m = 0;
  std::int64_t n_cells = 0;
  std::vector<std::vector<std::int32_t>> adjacency;  // sorted, symmetric, irreflexive
  std::vector<std::int32_t> corner_cells;            // cell containing P_i, i = 0..d-1

  std::int64_t edge_count() const;
};

/// Recursive construction: level 1 is K_d; level m takes d copies of level
/// m-1 and joins, for every pair a < b, the cells a b^{m-1} and b a^{m-1}
/// (the two cells containing the touching point f_a(P_{b-1}) = f_b(P_{a-1})).
/// m = 0 yields the single-cell graph with no edges.
CellGraph build_cell_graph(int d, int m);

/// Indices of the d corner cells i^m, i = 1..d (requires m >= 1).
std::vector<std::int32_t> corner_cells(int d, int m);

/// Combinatorial Laplacian L = D - Adj of the cell graph, with the optional
/// Dirichlet ghost increment added to the corner-cell diagonals.
struct CellLaplacian {
  int d = 0;
  int m = 0;
  BoundaryMode boundary_mode = BoundaryMode::neumann_cells;
  int ghost_increment = 2;
  std::int64_t n = 0;
  std::vector<double> diag;
  std::vector<std::vector<std::int32_t>> adjacency;  // off-diagonal entries are -1
  std::vector<std::int32_t> corner_cells;

  /// out = L * u, rows accumulated in long double, fixed order.
  void apply(const std::vector<double>& u, std::vector<double>& out) const;

  Eigen::SparseMatrix<double> to_sparse() const;
  /// Dense copy; guarded by the caller's size budget.
  Eigen::MatrixXd to_dense() const;

  std::vector<double> row_sums() const;
  std::int64_t nnz() const;
};

/// The ghost increment defaults to 2: the corner flux -d u_J has no matching
/// neighbor to halve it, so it carries weight 2 in units of the (d/2)-scaled
/// operator. 1 is accepted as the halved alternative.
CellLaplacian build_cell_laplacian(const CellGraph& g, BoundaryMode mode,
                                   int ghost_increment = 2);

}  // namespace sierpfvm

#endif
