#pragma once

#include "svpcp/csp.hpp"

#include <string>
#include <utility>
#include <vector>

namespace svpcp {

// Circulant graph: i ~ i+s for each offset s (offsets must avoid n/2).
inline ColoringInstance circulant(std::uint32_t n, std::vector<std::uint32_t> offsets) {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> e;
  for (auto s : offsets)
    for (std::uint32_t i = 0; i < n; ++i) e.push_back({i, (i + s) % n});
  return ColoringInstance(n, std::move(e));
}

inline ColoringInstance complete_graph5() {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> e;
  for (std::uint32_t a = 0; a < 5; ++a)
    for (std::uint32_t b = a + 1; b < 5; ++b) e.push_back({a, b});
  return ColoringInstance(5, std::move(e));
}

inline ColoringInstance complete_bipartite44() {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> e;
  for (std::uint32_t a = 0; a < 4; ++a)
    for (std::uint32_t b = 4; b < 8; ++b) e.push_back({a, b});
  return ColoringInstance(8, std::move(e));
}

// Every edge of the n-cycle taken twice (n >= 2).
inline ColoringInstance doubled_cycle(std::uint32_t n) {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> e;
  if (n == 2) {
    for (int r = 0; r < 4; ++r) e.push_back({0, 1});
    return ColoringInstance(2, std::move(e));
  }
  for (int r = 0; r < 2; ++r)
    for (std::uint32_t i = 0; i < n; ++i) e.push_back({i, (i + 1) % n});
  return ColoringInstance(n, std::move(e));
}

inline ColoringInstance octahedron() { return circulant(6, {1, 2}); }

inline ColoringInstance disjoint_union(const ColoringInstance& a, const ColoringInstance& b) {
  auto e = a.edges;
  for (auto [u, v] : b.edges) e.push_back({u + a.n, v + a.n});
  return ColoringInstance(a.n + b.n, std::move(e));
}

// Degree-4 multigraphs on at most 8 vertices.
inline std::vector<std::pair<std::string, ColoringInstance>> coloring_corpus() {
  return {
      {"k5", complete_graph5()},
      {"octahedron", octahedron()},
      {"c7_12", circulant(7, {1, 2})},
      {"c8_12", circulant(8, {1, 2})},
      {"c7_13", circulant(7, {1, 3})},
      {"c8_13", circulant(8, {1, 3})},
      {"k44", complete_bipartite44()},
      {"double_edge2", doubled_cycle(2)},
      {"double_c3", doubled_cycle(3)},
      {"double_c5", doubled_cycle(5)},
      {"double_c7", doubled_cycle(7)},
      {"k5_plus_double_c3", disjoint_union(complete_graph5(), doubled_cycle(3))},
  };
}

}  // namespace svpcp
