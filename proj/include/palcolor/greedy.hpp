#pragma once

// Full-graph sequential greedy coloring, the quality baseline. Unlike the
// palette driver it stores every edge of the view.
//
//   LF   static, descending degree
//   SL   smallest-last (degeneracy) order
//   DLF  next = max degree within the still-uncolored subgraph
//   ID   next = max number of already-colored neighbors, starting from a
//        max-degree vertex
//   NAT  ascending vertex id
//
// Ties go to the smallest vertex id.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <functional>
#include <queue>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "palcolor/core.hpp"
#include "palcolor/graph.hpp"
#include "palcolor/ordering.hpp"

namespace palcolor {

enum class Ordering { LF, SL, DLF, ID, NAT };

constexpr std::string_view to_string(Ordering o) noexcept {
  switch (o) {
    case Ordering::LF: return "LF";
    case Ordering::SL: return "SL";
    case Ordering::DLF: return "DLF";
    case Ordering::ID: return "ID";
    case Ordering::NAT: return "NAT";
  }
  return "?";
}

inline Ordering parse_ordering(std::string_view name) {
  for (auto o : {Ordering::LF, Ordering::SL, Ordering::DLF, Ordering::ID, Ordering::NAT})
    if (name == to_string(o)) return o;
  throw Error(Errc::bad_params, "unknown ordering '" + std::string(name) + "'");
}

struct GreedyResult {
  std::vector<color_t> color;  // indexed like the input (graph vertex / universe id)
  std::size_t colors_used = 0;
  Ordering ordering = Ordering::LF;
  double runtime_s = 0.0;
  std::size_t stored_adjacency_entries = 0;
};

namespace detail {

// Heap key (score, ~id): among equal scores the smallest id is largest.
using MaxKey = std::pair<std::size_t, std::uint64_t>;

inline MaxKey max_key(std::size_t key, vertex_t v) { return {key, ~static_cast<std::uint64_t>(v)}; }
inline vertex_t key_vertex(const MaxKey& k) { return static_cast<vertex_t>(~k.second); }

/// Dynamic orders: `first` goes first, then repeatedly the remaining vertex
/// with the largest score. Each pick moves its remaining neighbors' scores
/// by one in the direction of `delta`.
inline std::vector<vertex_t> dynamic_order(const ExplicitGraph& g, std::vector<std::size_t> score, int delta,
                                           vertex_t first) {
  const std::size_t n = g.num_vertices();
  std::priority_queue<MaxKey> heap;
  for (vertex_t v = 0; v < n; ++v) heap.push(max_key(score[v], v));
  std::vector<char> done(n, 0);
  std::vector<vertex_t> order;
  order.reserve(n);
  auto take = [&](vertex_t v) {
    done[v] = 1;
    order.push_back(v);
    for (vertex_t u : g.neighbors(v)) {
      if (done[u]) continue;
      score[u] = delta > 0 ? score[u] + 1 : score[u] - 1;
      heap.push(max_key(score[u], u));
    }
  };
  if (n > 0) take(first);
  while (!heap.empty()) {
    const auto top = heap.top();
    heap.pop();
    const vertex_t v = key_vertex(top);
    if (done[v] || top.first != score[v]) continue;
    take(v);
  }
  return order;
}

}  // namespace detail

inline std::vector<vertex_t> greedy_order(const ExplicitGraph& g, Ordering ordering) {
  const std::size_t n = g.num_vertices();
  switch (ordering) {
    case Ordering::LF: return largest_first_order(g);
    case Ordering::SL: return smallest_last_order(g);
    case Ordering::NAT: return natural_order(n);
    case Ordering::DLF: {
      std::vector<std::size_t> degree(n);
      for (vertex_t v = 0; v < n; ++v) degree[v] = g.degree(v);
      if (n == 0) return {};
      const auto lf = largest_first_order(g);
      return detail::dynamic_order(g, degree, -1, lf.front());
    }
    case Ordering::ID: {
      if (n == 0) return {};
      const auto lf = largest_first_order(g);
      return detail::dynamic_order(g, std::vector<std::size_t>(n, 0), +1, lf.front());
    }
  }
  return natural_order(n);
}

/// Greedy coloring of a stored graph: each vertex in order takes the
/// smallest color absent from its colored neighbors. Colors are 0-based.
inline GreedyResult greedy_color(const ExplicitGraph& g, Ordering ordering) {
  const auto started = std::chrono::steady_clock::now();
  const std::size_t n = g.num_vertices();
  GreedyResult res;
  res.ordering = ordering;
  res.color.assign(n, kUncolored);
  res.stored_adjacency_entries = g.adjacency().size();
  std::vector<std::uint32_t> stamp(n + 1, 0);
  for (vertex_t v : greedy_order(g, ordering)) {
    for (vertex_t u : g.neighbors(v))
      if (res.color[u] != kUncolored && res.color[u] <= n) stamp[res.color[u]] = v + 1;
    color_t c = 0;
    while (stamp[c] == v + 1) ++c;
    res.color[v] = c;
    res.colors_used = std::max<std::size_t>(res.colors_used, c + 1);
  }
  res.runtime_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  return res;
}

/// Baseline over a view: materializes its edges first (all-pairs scan).
inline GreedyResult greedy_color(const EdgeOracleView& view, Ordering ordering) {
  if (view.size() > kExactPairLimit) {
    throw Error(Errc::too_large_for_baseline, std::to_string(view.size()) + " vertices exceeds " +
                                                  std::to_string(kExactPairLimit));
  }
  const auto started = std::chrono::steady_clock::now();
  const ExplicitGraph local = materialize(view);
  GreedyResult inner = greedy_color(local, ordering);
  GreedyResult res;
  res.ordering = ordering;
  res.colors_used = inner.colors_used;
  res.stored_adjacency_entries = inner.stored_adjacency_entries;
  res.color.assign(view.universe(), kUncolored);
  const auto act = view.active();
  for (std::size_t i = 0; i < act.size(); ++i) res.color[act[i]] = inner.color[i];
  res.runtime_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  return res;
}

}  // namespace palcolor
