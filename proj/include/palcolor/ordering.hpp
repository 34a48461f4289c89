#pragma once

// Static vertex orderings shared by the conflict-graph and full-graph
// greedy colorers. Ties always go to the smaller vertex id.

#include <algorithm>
#include <functional>
#include <numeric>
#include <queue>
#include <utility>
#include <vector>

#include "palcolor/core.hpp"
#include "palcolor/graph.hpp"

namespace palcolor {

inline std::vector<vertex_t> natural_order(std::size_t n) {
  std::vector<vertex_t> order(n);
  std::iota(order.begin(), order.end(), vertex_t{0});
  return order;
}

/// Descending degree.
inline std::vector<vertex_t> largest_first_order(const ExplicitGraph& g) {
  auto order = natural_order(g.num_vertices());
  std::stable_sort(order.begin(), order.end(), [&](vertex_t a, vertex_t b) { return g.degree(a) > g.degree(b); });
  return order;
}

/// Degeneracy order: repeatedly remove a minimum-degree vertex; the
/// returned coloring order is the reverse of the removal order.
inline std::vector<vertex_t> smallest_last_order(const ExplicitGraph& g) {
  const std::size_t n = g.num_vertices();
  std::vector<std::size_t> degree(n);
  using Key = std::pair<std::size_t, vertex_t>;
  std::priority_queue<Key, std::vector<Key>, std::greater<>> heap;
  for (vertex_t v = 0; v < n; ++v) {
    degree[v] = g.degree(v);
    heap.emplace(degree[v], v);
  }
  std::vector<char> removed(n, 0);
  std::vector<vertex_t> removal;
  removal.reserve(n);
  while (!heap.empty()) {
    auto [d, v] = heap.top();
    heap.pop();
    if (removed[v] || d != degree[v]) continue;
    removed[v] = 1;
    removal.push_back(v);
    for (vertex_t u : g.neighbors(v)) {
      if (removed[u]) continue;
      heap.emplace(--degree[u], u);
    }
  }
  std::reverse(removal.begin(), removal.end());
  return removal;
}

}  // namespace palcolor
