#include <gtest/gtest.h>

#include "support/reference.hpp"

namespace palcolor {
namespace {

constexpr Ordering kAll[] = {Ordering::LF, Ordering::SL, Ordering::DLF, Ordering::ID, Ordering::NAT};

ExplicitGraph complete(std::size_t n) {
  std::vector<Edge> e;
  for (vertex_t u = 0; u < n; ++u)
    for (vertex_t v = u + 1; v < n; ++v) e.emplace_back(u, v);
  return ExplicitGraph::from_edges(n, e);
}

bool proper(const ExplicitGraph& g, const GreedyResult& r) {
  for (auto [u, v] : g.edges())
    if (r.color[u] == r.color[v]) return false;
  for (auto c : r.color)
    if (c == kUncolored) return false;
  return true;
}

TEST(Greedy, CompleteGraph) {
  const auto k4 = complete(4);
  for (auto o : kAll) EXPECT_EQ(greedy_color(k4, o).colors_used, 4u) << to_string(o);
}

TEST(Greedy, StarLargestFirst) {
  const auto star = ExplicitGraph::from_edges(6, std::vector<Edge>{{0, 1}, {0, 2}, {0, 3}, {0, 4}, {0, 5}});
  const auto r = greedy_color(star, Ordering::LF);
  EXPECT_EQ(r.colors_used, 2u);
  EXPECT_EQ(r.color[0], 0u);
}

TEST(Greedy, OddCycleMatchesChromaticNumber) {
  const auto c5 = ExplicitGraph::from_edges(5, std::vector<Edge>{{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}});
  ASSERT_EQ(reference::chromatic_number(c5), 3u);
  for (auto o : kAll) EXPECT_EQ(greedy_color(c5, o).colors_used, 3u) << to_string(o);
}

TEST(Greedy, OrderingsArePermutations) {
  const auto g = gnp_graph(60, 0.2, 4);
  for (auto o : kAll) {
    auto order = greedy_order(g, o);
    std::sort(order.begin(), order.end());
    EXPECT_EQ(order, natural_order(60)) << to_string(o);
    EXPECT_EQ(parse_ordering(to_string(o)), o);
  }
  EXPECT_THROW(parse_ordering("XYZ"), Error);
}

TEST(Greedy, DynamicOrderPicksLargestRemainingDegree) {
  // path 0-1-2-3-4 plus pendant 5 on 3: after 3 goes, vertex 1 (degree 2)
  // beats the rest (degree <= 1 once 3 is gone)
  const auto g = ExplicitGraph::from_edges(6, std::vector<Edge>{{0, 1}, {1, 2}, {2, 3}, {3, 4}, {3, 5}});
  const auto order = greedy_order(g, Ordering::DLF);
  EXPECT_EQ(order[0], 3u);
  EXPECT_EQ(order[1], 1u);
}

TEST(Greedy, ProperAndBoundedOnRandomGraphs) {
  for (std::uint64_t seed = 0; seed < 8; ++seed) {
    const auto g = gnp_graph(120, 0.05 + 0.1 * static_cast<double>(seed), seed);
    std::size_t max_degree = 0;
    for (vertex_t v = 0; v < g.num_vertices(); ++v) max_degree = std::max(max_degree, g.degree(v));
    for (auto o : kAll) {
      const auto r = greedy_color(g, o);
      EXPECT_TRUE(proper(g, r)) << to_string(o);
      EXPECT_LE(r.colors_used, max_degree + 1);
      EXPECT_EQ(r.stored_adjacency_entries, 2 * g.num_edges());
    }
  }
}

TEST(Greedy, SmallGraphsNeverBelowChromaticNumber) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto g = gnp_graph(9, 0.45, seed);
    const auto chi = reference::chromatic_number(g);
    for (auto o : kAll) EXPECT_GE(greedy_color(g, o).colors_used, chi);
  }
}

TEST(Greedy, ViewOverloadMatchesMaterialized) {
  const auto view = reference::random_pauli_view(150, 6, 2);
  const auto sub = view.induce(std::vector<vertex_t>{1, 5, 9, 20, 33, 40, 77, 100, 149});
  for (auto o : kAll) {
    const auto r = greedy_color(sub, o);
    EXPECT_EQ(r.color.size(), 150u);
    EXPECT_EQ(reference::count_violations(sub, r.color), 0u);
    EXPECT_EQ(r.color[0], kUncolored);
  }
}

TEST(Greedy, DlfNoWorseThanLfOnDenseRandomGraphs) {
  double lf = 0, dlf = 0;
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto g = gnp_graph(1000, 0.5, seed);
    lf += static_cast<double>(greedy_color(g, Ordering::LF).colors_used);
    dlf += static_cast<double>(greedy_color(g, Ordering::DLF).colors_used);
  }
  EXPECT_LE(dlf / 5, lf / 5);
}

}  // namespace
}  // namespace palcolor
