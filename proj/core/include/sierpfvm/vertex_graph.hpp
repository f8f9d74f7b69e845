#ifndef SIERPFVM_VERTEX_GRAPH_HPP
#define SIERPFVM_VERTEX_GRAPH_HPP

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Core>
#include <Eigen/SparseCore>

namespace sierpfvm {

/// Junction handling in the vertex graph.
///   fused:  every m-cell keeps its own d corner slots; the two slots of a
///           junction point are joined by an edge. Dimension d^{m+1}.
///   merged: junction slots are identified, giving the geometric vertex set
///           V_m of dimension (d^{m+1}+d)/2. Used by the FDM comparator.
enum class VertexMode { fused, merged };

const char* to_string(VertexMode mode);
VertexMode vertex_mode_from_string(const std::string& s);

/// Graph Laplacian over the level-m vertex set.
struct VertexGraph {
  int d = 0;
  int m = 0;
  VertexMode mode = VertexMode::fused;
  std::int64_t n_vertices = 0;
  std::vector<double> diag;
  std::vector<std::vector<std::int32_t>> adjacency;  // off-diagonal entries are -1
  std::vector<std::int32_t> corner_labels;           // the d outer corners P_0..P_{d-1}
  /// Vertex id of corner i of cell j: cell_corner_vertex[j*d + i].
  /// Identity layout in fused mode; the merge map in merged mode.
  std::vector<std::int32_t> cell_corner_vertex;

  Eigen::SparseMatrix<double> to_sparse() const;
  Eigen::MatrixXd to_dense() const;
  std::vector<double> row_sums() const;
  std::int64_t edge_count() const;
};

/// Recursive block construction: the base matrix is the K_d Laplacian
/// ((d-1) on the diagonal, -1 elsewhere); level m joins d copies of level
/// m-1 with one edge per copy pair between the touching corner slots,
/// raising the two fused diagonals to d.
VertexGraph build_vertex_laplacian(int d, int m, VertexMode mode = VertexMode::fused);

/// Corner-label sequences of the recursive block construction, 1-based:
/// I1(m) = 1, Id(m) = d^{m-1}, and Ik(m) = Ik(m-1) + (k-1) d^{m-2} with
/// Ik(1) = k for the middle corners. Exposed for cross-checking; the builder
/// above locates corners geometrically.
std::int64_t corner_label_offset(int d, int k, int m);

/// Ck(n, m) = Ik(m) + (n-1) d^{m-1}: corner k of copy n.
std::int64_t corner_label(int d, int k, int n, int m);

}  // namespace sierpfvm

#endif
