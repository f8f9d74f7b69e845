#include "support/geometric_oracle.hpp"

#include <algorithm>
#include <stdexcept>

namespace oracle {

Bary corner_coordinates(int d, const std::vector<int>& word, int corner) {
  const int m = static_cast<int>(word.size());
  if (m > 62) throw std::overflow_error("oracle denominator 2^m overflows");
  Bary num(static_cast<std::size_t>(d), 0);
  num[static_cast<std::size_t>(corner)] = 1;
  // Apply the innermost contraction first: x -> (x + P_letter)/2 halves the
  // existing coordinates and adds half a unit at the letter. Keeping integer
  // numerators means doubling the unit instead.
  std::int64_t unit = 1;
  for (auto it = word.rbegin(); it != word.rend(); ++it) {
    num[static_cast<std::size_t>(*it - 1)] += unit;
    unit *= 2;
  }
  return num;
}

std::vector<Bary> cell_corners(int d, const std::vector<int>& word) {
  std::vector<Bary> cs;
  cs.reserve(static_cast<std::size_t>(d));
  for (int i = 0; i < d; ++i) cs.push_back(corner_coordinates(d, word, i));
  return cs;
}

std::vector<std::vector<std::int32_t>> brute_force_cell_adjacency(int d, int m) {
  std::int64_t n = 1;
  for (int i = 0; i < m; ++i) n *= d;

  std::vector<std::vector<Bary>> corners;
  corners.reserve(static_cast<std::size_t>(n));
  std::vector<int> word(static_cast<std::size_t>(m), 1);
  for (std::int64_t c = 0; c < n; ++c) {
    std::int64_t rest = c;
    for (int k = m - 1; k >= 0; --k) {
      word[static_cast<std::size_t>(k)] = static_cast<int>(rest % d) + 1;
      rest /= d;
    }
    auto cs = cell_corners(d, word);
    std::sort(cs.begin(), cs.end());
    corners.push_back(std::move(cs));
  }

  std::vector<std::vector<std::int32_t>> adj(static_cast<std::size_t>(n));
  for (std::int64_t a = 0; a < n; ++a) {
    for (std::int64_t b = a + 1; b < n; ++b) {
      bool shared = false;
      for (const auto& p : corners[static_cast<std::size_t>(a)]) {
        if (std::binary_search(corners[static_cast<std::size_t>(b)].begin(),
                               corners[static_cast<std::size_t>(b)].end(), p)) {
          shared = true;
          break;
        }
      }
      if (shared) {
        adj[static_cast<std::size_t>(a)].push_back(static_cast<std::int32_t>(b));
        adj[static_cast<std::size_t>(b)].push_back(static_cast<std::int32_t>(a));
      }
    }
  }
  for (auto& ns : adj) std::sort(ns.begin(), ns.end());
  return adj;
}

}  // namespace oracle
