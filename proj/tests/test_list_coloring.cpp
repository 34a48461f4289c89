#include <gtest/gtest.h>

#include <numeric>

#include "support/reference.hpp"

namespace palcolor {
namespace {

ColorLists lists_of(std::size_t palette, const std::vector<std::vector<color_t>>& rows) {
  return ColorLists::from_rows({1, palette, 0, 1}, rows);
}

ConflictGraph whole(const EdgeOracleView& view) {
  ConflictGraph gc;
  gc.member_local.assign(view.active().begin(), view.active().end());
  gc.member_original = gc.member_local;
  gc.csr = materialize(view);
  return gc;
}

bool proper_on(const ConflictGraph& gc, const ConflictColoringOutcome& out) {
  for (auto [a, b] : gc.csr.edges())
    if (out.color[a] != kUncolored && out.color[a] == out.color[b]) return false;
  return true;
}

TEST(BucketQueue, LowestAndRekey) {
  BucketQueue q(4, 5);
  q.insert(0, 5);
  q.insert(1, 3);
  q.insert(2, 3);
  EXPECT_EQ(q.lowest_key(), 3u);
  q.rekey(0, 1);
  EXPECT_EQ(q.lowest_key(), 1u);
  SplitMix64 rng(1);
  EXPECT_EQ(q.pick_lowest(rng), 0u);
  q.erase(0);
  EXPECT_EQ(q.lowest_key(), 3u);
  EXPECT_EQ(q.size(), 2u);
  EXPECT_FALSE(q.contains(0));
}

TEST(DynamicColoring, SingleVertex) {
  const auto lists = lists_of(6, {{5}});
  const auto out = color_dynamic(whole(reference::graph_view(1, {})), lists, 0);
  EXPECT_EQ(out.color, (std::vector<color_t>{5}));
  EXPECT_TRUE(out.uncolored.empty());
}

TEST(DynamicColoring, EdgeWithSameSingleton) {
  const auto view = reference::graph_view(2, {{0, 1}});
  const auto lists = lists_of(2, {{1}, {1}});
  const auto gc = build_conflict_graph(view, lists);
  const auto out = color_dynamic(gc, lists, 3);
  EXPECT_EQ(out.uncolored.size(), 1u);
  EXPECT_EQ(out.colors_used, 1u);
  EXPECT_EQ(out.color[out.uncolored[0] ^ 1], 1u);
}

TEST(DynamicColoring, PathShortListFirst) {
  // u - v - w with lists {1,2}, {1}, {2}
  const auto view = reference::graph_view(3, {{0, 1}, {1, 2}});
  const auto lists = lists_of(3, {{1, 2}, {1}, {2}});
  const auto gc = whole(view);  // v-w shares no color, but list coloring sees the whole path
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    std::vector<vertex_t> picks;
    const auto out = color_dynamic(gc, lists, seed, [&](vertex_t v, auto, auto) { picks.push_back(v); });
    EXPECT_TRUE(out.uncolored.empty());
    EXPECT_EQ(out.color, (std::vector<color_t>{2, 1, 2}));
    EXPECT_NE(picks.front(), 0u);  // u never goes first
  }
}

TEST(DynamicColoring, EmptyListGoesStraightToUncolored) {
  const auto view = reference::graph_view(2, {{0, 1}});
  const auto lists = lists_of(2, {{}, {1}});
  const auto out = color_dynamic(whole(view), lists, 0);
  EXPECT_EQ(out.uncolored, (std::vector<vertex_t>{0}));
  EXPECT_EQ(out.color[1], 1u);
}

TEST(StaticColoring, EdgeSharedPair) {
  const auto view = reference::graph_view(2, {{0, 1}});
  const auto lists = lists_of(3, {{1, 2}, {1, 2}});
  const auto out = color_static(whole(view), lists, ConflictStrategy::natural, 0);
  EXPECT_EQ(out.color, (std::vector<color_t>{1, 2}));
}

TEST(StaticColoring, NaturalOrderFirstFit) {
  const auto view = reference::graph_view(3, {{0, 1}, {1, 2}});
  const auto lists = lists_of(3, {{0, 1}, {0, 1}, {0, 2}});
  const auto gc = build_conflict_graph(view, lists);
  const auto out = color_static(gc, lists, ConflictStrategy::natural, 0);
  EXPECT_EQ(out.color, (std::vector<color_t>{0, 1, 0}));
  EXPECT_TRUE(out.uncolored.empty());
}

TEST(StaticColoring, GivesUpWhenListExhausted) {
  const auto view = reference::graph_view(3, {{0, 1}, {1, 2}, {0, 2}});
  const auto lists = lists_of(2, {{0, 1}, {0, 1}, {0, 1}});
  const auto gc = build_conflict_graph(view, lists);
  const auto out = color_static(gc, lists, ConflictStrategy::natural, 0);
  EXPECT_EQ(out.uncolored, (std::vector<vertex_t>{2}));
}

TEST(DynamicColoring, BucketDiscipline) {
  const auto view = reference::random_pauli_view(300, 6, 4);
  const auto plan = plan_iteration(1, 300, PaletteParams::normal());
  const auto lists = assign_random_lists(plan, view.active(), 4);
  const auto gc = build_conflict_graph(view, lists);
  ASSERT_GT(gc.size(), 10u);
  std::size_t picks = 0;
  auto observer = [&](vertex_t v, std::span<const std::uint32_t> len, std::span<const std::uint8_t> processed) {
    ++picks;
    EXPECT_FALSE(processed[v]);
    std::uint32_t lowest = ~0u;
    for (std::size_t k = 0; k < len.size(); ++k)
      if (!processed[k]) lowest = std::min(lowest, len[k]);
    EXPECT_EQ(len[v], lowest);
    EXPECT_GE(len[v], 1u);
  };
  const auto out = color_dynamic(gc, lists, 8, observer);
  EXPECT_EQ(picks + out.uncolored.size(), gc.size());
  EXPECT_TRUE(proper_on(gc, out));
  EXPECT_LE(out.removal_ops, gc.edge_count() * lists.list_size());
  for (vertex_t m = 0; m < gc.size(); ++m) {
    if (out.color[m] == kUncolored) continue;
    const auto row = lists.row(gc.member_local[m]);
    EXPECT_TRUE(std::binary_search(row.begin(), row.end(), out.color[m]));
  }
}

TEST(ConflictStrategies, AllProperAndFromLists) {
  const auto view = reference::gnp_view(250, 0.4, 6);
  const auto plan = plan_iteration(1, 250, PaletteParams::normal());
  const auto lists = assign_random_lists(plan, view.active(), 6);
  const auto gc = build_conflict_graph(view, lists);
  for (auto s : {ConflictStrategy::dynamic, ConflictStrategy::natural, ConflictStrategy::largest_degree_first,
                 ConflictStrategy::smallest_degree_last, ConflictStrategy::random}) {
    EXPECT_EQ(parse_conflict_strategy(to_string(s)), s);
    const auto out = color_conflict_graph(gc, lists, s, 2);
    EXPECT_TRUE(proper_on(gc, out)) << to_string(s);
    std::size_t missing = 0;
    for (auto c : out.color) missing += c == kUncolored;
    EXPECT_EQ(missing, out.uncolored.size());
  }
  EXPECT_THROW(parse_conflict_strategy("bogus"), Error);
}

TEST(ConflictStrategies, DynamicLosesNoMoreThanNatural) {
  double dynamic_loss = 0, natural_loss = 0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto view = reference::random_pauli_view(200, 6, 100 + seed);
    const auto plan = plan_iteration(1, 200, PaletteParams::normal());
    const auto lists = assign_random_lists(plan, view.active(), seed);
    const auto gc = build_conflict_graph(view, lists);
    dynamic_loss += static_cast<double>(color_dynamic(gc, lists, seed).uncolored.size());
    natural_loss += static_cast<double>(color_static(gc, lists, ConflictStrategy::natural, seed).uncolored.size());
  }
  EXPECT_LE(dynamic_loss / 20, natural_loss / 20);
}

TEST(Ordering, SmallestLastIsDegeneracyOrder) {
  // star K1,4 plus an isolated vertex: center last removed, so first
  const auto g = ExplicitGraph::from_edges(6, std::vector<Edge>{{0, 1}, {0, 2}, {0, 3}, {0, 4}});
  const auto order = smallest_last_order(g);
  EXPECT_EQ(order.size(), 6u);
  auto sorted = order;
  std::sort(sorted.begin(), sorted.end());
  EXPECT_EQ(sorted, natural_order(6));
  // each vertex has at most one earlier neighbor (degeneracy 1)
  std::vector<std::size_t> pos(6);
  for (std::size_t i = 0; i < 6; ++i) pos[order[i]] = i;
  for (vertex_t v = 0; v < 6; ++v) {
    std::size_t earlier = 0;
    for (vertex_t u : g.neighbors(v)) earlier += pos[u] < pos[v];
    EXPECT_LE(earlier, 1u);
  }
  EXPECT_EQ(largest_first_order(g).front(), 0u);
}

}  // namespace
}  // namespace palcolor
