#include "sierpfvm/vertex_graph.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "sierpfvm/simplex.hpp"

namespace sierpfvm {

const char* to_string(VertexMode mode) {
  return mode == VertexMode::fused ? "fused" : "merged";
}

VertexMode vertex_mode_from_string(const std::string& s) {
  if (s == "fused") return VertexMode::fused;
  if (s == "merged") return VertexMode::merged;
  throw std::invalid_argument("unknown vertex mode '" + s + "' (expected fused or merged)");
}

Eigen::SparseMatrix<double> VertexGraph::to_sparse() const {
  std::vector<Eigen::Triplet<double>> ts;
  for (std::int64_t i = 0; i < n_vertices; ++i) {
    ts.emplace_back(static_cast<int>(i), static_cast<int>(i), diag[static_cast<std::size_t>(i)]);
    for (std::int32_t j : adjacency[static_cast<std::size_t>(i)])
      ts.emplace_back(static_cast<int>(i), static_cast<int>(j), -1.0);
  }
  Eigen::SparseMatrix<double> s(static_cast<int>(n_vertices), static_cast<int>(n_vertices));
  s.setFromTriplets(ts.begin(), ts.end());
  return s;
}

Eigen::MatrixXd VertexGraph::to_dense() const {
  Eigen::MatrixXd M = Eigen::MatrixXd::Zero(static_cast<int>(n_vertices),
                                            static_cast<int>(n_vertices));
  for (std::int64_t i = 0; i < n_vertices; ++i) {
    M(static_cast<int>(i), static_cast<int>(i)) = diag[static_cast<std::size_t>(i)];
    for (std::int32_t j : adjacency[static_cast<std::size_t>(i)])
      M(static_cast<int>(i), static_cast<int>(j)) = -1.0;
  }
  return M;
}

std::vector<double> VertexGraph::row_sums() const {
  std::vector<double> rs(static_cast<std::size_t>(n_vertices));
  for (std::int64_t i = 0; i < n_vertices; ++i)
    rs[static_cast<std::size_t>(i)] =
        diag[static_cast<std::size_t>(i)] -
        static_cast<double>(adjacency[static_cast<std::size_t>(i)].size());
  return rs;
}

std::int64_t VertexGraph::edge_count() const {
  std::int64_t twice = 0;
  for (const auto& ns : adjacency) twice += static_cast<std::int64_t>(ns.size());
  return twice / 2;
}

namespace {

// Fused vertex id of corner i of cell j is j*d + i; with cells in
// lexicographic order this is exactly the id produced by the recursive
// block layout, so the construction can be written non-recursively.
VertexGraph build_fused(int d, int m) {
  const std::int64_t n_cells = cell_count(d, m);
  const std::int64_t n = n_cells * d;
  if (n > std::int64_t{1} << 31)
    throw std::overflow_error("fused vertex graph with d^{m+1} > 2^31 vertices is not supported");

  VertexGraph g;
  g.d = d;
  g.m = m;
  g.mode = VertexMode::fused;
  g.n_vertices = n;
  g.adjacency.assign(static_cast<std::size_t>(n), {});
  g.diag.assign(static_cast<std::size_t>(n), static_cast<double>(d - 1));
  g.cell_corner_vertex.resize(static_cast<std::size_t>(n));
  for (std::int64_t v = 0; v < n; ++v)
    g.cell_corner_vertex[static_cast<std::size_t>(v)] = static_cast<std::int32_t>(v);

  // Complete graph inside every cell.
  for (std::int64_t c = 0; c < n_cells; ++c) {
    for (int i = 0; i < d; ++i) {
      auto& ns = g.adjacency[static_cast<std::size_t>(c * d + i)];
      for (int j = 0; j < d; ++j)
        if (j != i) ns.push_back(static_cast<std::int32_t>(c * d + j));
    }
  }

  // One fusion edge per copy pair at every scale: within each block of
  // d^level cells, join corner b-1 of cell a b^{level-1} with corner a-1 of
  // cell b a^{level-1}. The fused diagonals rise from d-1 to d.
  std::int64_t block = 1;  // number of cells per copy at the current scale
  for (int level = 1; level <= m; ++level) {
    const std::int64_t n_blocks = n_cells / (block * d);
    for (std::int64_t blk = 0; blk < n_blocks; ++blk) {
      const std::int64_t base = blk * block * d;
      for (int a = 1; a <= d; ++a) {
        for (int b = a + 1; b <= d; ++b) {
          const std::int64_t cell_a =
              base + (a - 1) * block + static_cast<std::int64_t>(b - 1) * (block - 1) / (d - 1);
          const std::int64_t cell_b =
              base + (b - 1) * block + static_cast<std::int64_t>(a - 1) * (block - 1) / (d - 1);
          const std::int64_t va = cell_a * d + (b - 1);
          const std::int64_t vb = cell_b * d + (a - 1);
          g.adjacency[static_cast<std::size_t>(va)].push_back(static_cast<std::int32_t>(vb));
          g.adjacency[static_cast<std::size_t>(vb)].push_back(static_cast<std::int32_t>(va));
          g.diag[static_cast<std::size_t>(va)] += 1.0;
          g.diag[static_cast<std::size_t>(vb)] += 1.0;
        }
      }
    }
    block *= d;
  }

  g.corner_labels.reserve(static_cast<std::size_t>(d));
  for (int k = 1; k <= d; ++k) {
    const std::int64_t cell = static_cast<std::int64_t>(k - 1) * (n_cells - 1) / (d - 1);
    g.corner_labels.push_back(static_cast<std::int32_t>(cell * d + (k - 1)));
  }
  for (auto& ns : g.adjacency) std::sort(ns.begin(), ns.end());
  return g;
}

VertexGraph build_merged(int d, int m) {
  const std::int64_t n_cells = cell_count(d, m);
  const std::uint64_t expected = vertex_count(d, m);

  VertexGraph g;
  g.d = d;
  g.m = m;
  g.mode = VertexMode::merged;

  // Assign ids by first occurrence of the exact point, scanning cells in
  // lexicographic order; duplicates of a junction collapse onto one id.
  std::map<std::vector<std::int64_t>, std::int32_t> ids;
  g.cell_corner_vertex.resize(static_cast<std::size_t>(n_cells * d));
  for (std::int64_t c = 0; c < n_cells; ++c) {
    const Word w = word_from_index(d, m, c);
    for (int i = 0; i < d; ++i) {
      const BaryPoint p = vertex_bary(d, w, i);
      auto [it, inserted] = ids.try_emplace(p.num, static_cast<std::int32_t>(ids.size()));
      g.cell_corner_vertex[static_cast<std::size_t>(c * d + i)] = it->second;
    }
  }
  g.n_vertices = static_cast<std::int64_t>(ids.size());
  if (static_cast<std::uint64_t>(g.n_vertices) != expected)
    throw std::logic_error("merged vertex count does not match (d^{m+1}+d)/2");

  g.adjacency.assign(static_cast<std::size_t>(g.n_vertices), {});
  for (std::int64_t c = 0; c < n_cells; ++c) {
    for (int i = 0; i < d; ++i) {
      const std::int32_t vi = g.cell_corner_vertex[static_cast<std::size_t>(c * d + i)];
      for (int j = i + 1; j < d; ++j) {
        const std::int32_t vj = g.cell_corner_vertex[static_cast<std::size_t>(c * d + j)];
        g.adjacency[static_cast<std::size_t>(vi)].push_back(vj);
        g.adjacency[static_cast<std::size_t>(vj)].push_back(vi);
      }
    }
  }
  for (auto& ns : g.adjacency) {
    std::sort(ns.begin(), ns.end());
    ns.erase(std::unique(ns.begin(), ns.end()), ns.end());
  }
  g.diag.resize(static_cast<std::size_t>(g.n_vertices));
  for (std::int64_t v = 0; v < g.n_vertices; ++v)
    g.diag[static_cast<std::size_t>(v)] =
        static_cast<double>(g.adjacency[static_cast<std::size_t>(v)].size());

  g.corner_labels.reserve(static_cast<std::size_t>(d));
  for (int k = 1; k <= d; ++k) {
    const std::int64_t cell = static_cast<std::int64_t>(k - 1) * (n_cells - 1) / (d - 1);
    g.corner_labels.push_back(g.cell_corner_vertex[static_cast<std::size_t>(cell * d + (k - 1))]);
  }
  return g;
}

}  // namespace

VertexGraph build_vertex_laplacian(int d, int m, VertexMode mode) {
  if (d < 2) throw std::invalid_argument("branching number d must be >= 2");
  if (m < 0) throw std::invalid_argument("level m must be >= 0");
  return mode == VertexMode::fused ? build_fused(d, m) : build_merged(d, m);
}

std::int64_t corner_label_offset(int d, int k, int m) {
  if (d < 2) throw std::invalid_argument("branching number d must be >= 2");
  if (k < 1 || k > d) throw std::invalid_argument("corner k must lie in 1..d");
  if (m < 1) throw std::invalid_argument("corner labels require m >= 1");
  if (k == 1) return 1;
  if (k == d) return cell_count(d, m - 1);
  std::int64_t v = k;  // Ik(1) = k
  std::int64_t power = 1;
  for (int level = 2; level <= m; ++level) {
    v += static_cast<std::int64_t>(k - 1) * power;  // + (k-1) d^{m-2}
    power *= d;
  }
  return v;
}

std::int64_t corner_label(int d, int k, int n, int m) {
  if (n < 1 || n > d) throw std::invalid_argument("copy index n must lie in 1..d");
  return corner_label_offset(d, k, m) +
         static_cast<std::int64_t>(n - 1) * cell_count(d, m - 1);
}

}  // namespace sierpfvm
