#include <doctest.h>

#include <algorithm>

#include <Eigen/Dense>

#include "sierpfvm/simplex.hpp"
#include "sierpfvm/vertex_graph.hpp"

using namespace sierpfvm;

namespace {

Eigen::MatrixXd k_simplex_laplacian(int d) {
  Eigen::MatrixXd A0 = Eigen::MatrixXd::Constant(d, d, -1.0);
  for (int i = 0; i < d; ++i) A0(i, i) = static_cast<double>(d - 1);
  return A0;
}

}  // namespace

TEST_CASE("base matrices match the published A0") {
  for (int d : {3, 4}) {
    for (VertexMode mode : {VertexMode::fused, VertexMode::merged}) {
      const VertexGraph g = build_vertex_laplacian(d, 0, mode);
      CHECK(g.n_vertices == d);
      CHECK(g.to_dense() == k_simplex_laplacian(d));
    }
  }
}

TEST_CASE("corner-label recursions, gasket") {
  // C1(n,m) = 1 + (n-1) 3^{m-1}
  for (int m = 1; m <= 3; ++m) {
    std::int64_t p = 1;
    for (int i = 1; i < m; ++i) p *= 3;
    for (int n = 1; n <= 3; ++n) CHECK(corner_label(3, 1, n, m) == 1 + (n - 1) * p);
    // C3(n,m) = n 3^{m-1}
    for (int n = 1; n <= 3; ++n) CHECK(corner_label(3, 3, n, m) == n * p);
  }
  // I2: 2, 3, 6 for m = 1, 2, 3
  CHECK(corner_label_offset(3, 2, 1) == 2);
  CHECK(corner_label_offset(3, 2, 2) == 3);
  CHECK(corner_label_offset(3, 2, 3) == 6);
  CHECK(corner_label(3, 1, 2, 2) == 4);
  CHECK(corner_label(3, 3, 3, 1) == 3);
}

TEST_CASE("corner-label recursions, tetrahedron") {
  // I2(m) = I2(m-1) + 4^{m-2}, I3(m) = I3(m-1) + 2*4^{m-2}
  CHECK(corner_label_offset(4, 2, 1) == 2);
  CHECK(corner_label_offset(4, 2, 2) == 3);
  CHECK(corner_label_offset(4, 2, 3) == 7);
  CHECK(corner_label_offset(4, 3, 1) == 3);
  CHECK(corner_label_offset(4, 3, 2) == 5);
  CHECK(corner_label_offset(4, 3, 3) == 13);
  for (int m = 1; m <= 3; ++m) {
    std::int64_t p = 1;
    for (int i = 1; i < m; ++i) p *= 4;
    for (int n = 1; n <= 4; ++n) {
      CHECK(corner_label(4, 1, n, m) == 1 + (n - 1) * p);  // C1
      CHECK(corner_label(4, 4, n, m) == n * p);            // C4
    }
  }
  CHECK_THROWS_AS(corner_label_offset(4, 5, 2), std::invalid_argument);
  CHECK_THROWS_AS(corner_label_offset(4, 2, 0), std::invalid_argument);
}

TEST_CASE("fused vertex graph structure") {
  for (int d : {2, 3, 4}) {
    for (int m = 0; m <= 3; ++m) {
      const VertexGraph g = build_vertex_laplacian(d, m, VertexMode::fused);
      const std::int64_t cells = cell_count(d, m);
      CHECK(g.n_vertices == cells * d);  // one slot per cell corner
      for (double rs : g.row_sums()) CHECK(rs == 0.0);
      for (std::int64_t v = 0; v < g.n_vertices; ++v) {
        const double dg = g.diag[static_cast<std::size_t>(v)];
        CHECK((dg == d - 1 || dg == d));
        for (std::int32_t w : g.adjacency[static_cast<std::size_t>(v)]) {
          const auto& back = g.adjacency[static_cast<std::size_t>(w)];
          CHECK(std::binary_search(back.begin(), back.end(), static_cast<std::int32_t>(v)));
        }
      }
      // K_d per cell plus one fusion edge per junction point.
      const std::int64_t junctions =
          static_cast<std::int64_t>(vertex_count(d, m)) - d;
      CHECK(g.edge_count() == cells * d * (d - 1) / 2 + junctions);
      // The d outer corners keep degree d-1.
      for (std::int32_t c : g.corner_labels)
        CHECK(g.diag[static_cast<std::size_t>(c)] == d - 1);
    }
  }
}

TEST_CASE("merged vertex graph structure") {
  for (int d : {2, 3, 4}) {
    for (int m = 0; m <= 3; ++m) {
      const VertexGraph g = build_vertex_laplacian(d, m, VertexMode::merged);
      CHECK(static_cast<std::uint64_t>(g.n_vertices) == vertex_count(d, m));
      for (double rs : g.row_sums()) CHECK(rs == 0.0);
      int corners = 0;
      for (std::int64_t v = 0; v < g.n_vertices; ++v) {
        const double dg = g.diag[static_cast<std::size_t>(v)];
        CHECK((dg == d - 1 || dg == 2 * (d - 1)));
        if (dg == d - 1) ++corners;
      }
      CHECK(corners == d);
      for (std::int32_t c : g.corner_labels)
        CHECK(g.diag[static_cast<std::size_t>(c)] == d - 1);
    }
  }
}

TEST_CASE("fused construction is block-diagonal copies plus fusion entries") {
  for (int d : {3, 4}) {
    const Eigen::MatrixXd prev = build_vertex_laplacian(d, 1, VertexMode::fused).to_dense();
    const Eigen::MatrixXd cur = build_vertex_laplacian(d, 2, VertexMode::fused).to_dense();
    const int s = static_cast<int>(prev.rows());
    for (int a = 0; a < d; ++a) {
      // Diagonal blocks are the level-1 matrix plus d-1 fused-corner bumps.
      Eigen::MatrixXd delta = cur.block(a * s, a * s, s, s) - prev;
      CHECK(delta.diagonal().sum() == d - 1);
      delta.diagonal().setZero();
      CHECK(delta.norm() == 0.0);
      // Off-diagonal blocks hold exactly one -1 connection per copy pair.
      for (int b = a + 1; b < d; ++b) {
        const Eigen::MatrixXd off = cur.block(a * s, b * s, s, s);
        CHECK(off.sum() == -1.0);
        CHECK(off.minCoeff() == -1.0);
      }
    }
  }
}

TEST_CASE("gasket level-2 fused matrix is a symmetric zero-row-sum Laplacian") {
  const VertexGraph g = build_vertex_laplacian(3, 2, VertexMode::fused);
  const Eigen::MatrixXd M = g.to_dense();
  CHECK(M.rows() == 27);
  CHECK((M - M.transpose()).norm() == 0.0);
  for (int i = 0; i < M.rows(); ++i) CHECK(M.row(i).sum() == 0.0);
}
