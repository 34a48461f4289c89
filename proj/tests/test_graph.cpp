#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "palcolor/generate.hpp"
#include "palcolor/graph.hpp"
#include "support/reference.hpp"

namespace palcolor {
namespace {

using reference::graph_view;

ExplicitGraph parse(const std::string& text, ExplicitGraph::BuildReport* rep = nullptr) {
  std::istringstream in(text);
  return load_edge_list(in, GraphFormat::automatic, rep);
}

template <class F>
Errc error_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected an error";
  return Errc::bad_params;
}

TEST(EdgeList, PathToCsr) {
  const auto g = parse("0 1\n1 2\n");
  EXPECT_EQ(g.offsets(), (std::vector<std::uint64_t>{0, 1, 3, 4}));
  EXPECT_EQ(g.adjacency(), (std::vector<vertex_t>{1, 0, 2, 1}));
  EXPECT_EQ(g.num_edges(), 2u);
}

TEST(EdgeList, DeduplicatesAndDropsSelfLoops) {
  ExplicitGraph::BuildReport rep;
  const auto g = parse("0 1\n1 0\n2 2\n", &rep);
  EXPECT_EQ(g.num_edges(), 1u);
  EXPECT_EQ(g.num_vertices(), 3u);
  EXPECT_EQ(rep.self_loops_dropped, 1u);
  EXPECT_EQ(rep.duplicates_merged, 1u);
}

TEST(EdgeList, DirectiveAndMatrixMarket) {
  EXPECT_EQ(parse("# vertices: 5\n0 1\n").num_vertices(), 5u);
  const auto m = parse("%%MatrixMarket matrix coordinate pattern symmetric\n% c\n3 3 3\n2 1\n3 1\n3 2\n");
  EXPECT_EQ(m.num_vertices(), 3u);
  EXPECT_EQ(m.num_edges(), 3u);
}

TEST(EdgeList, Errors) {
  EXPECT_EQ(error_of([] { parse("0 -1\n"); }), Errc::bad_index);
  EXPECT_EQ(error_of([] { parse("# vertices: 2\n0 2\n"); }), Errc::bad_index);
  EXPECT_EQ(error_of([] { parse("0 x\n"); }), Errc::parse_error);
  EXPECT_EQ(error_of([] { parse("7\n"); }), Errc::parse_error);
  EXPECT_EQ(error_of([] { parse("%%MatrixMarket matrix coordinate pattern general\n2 2 1\n0 1\n"); }),
            Errc::bad_index);
}

TEST(Csr, BinaryRoundTripAndLittleEndianHeader) {
  const auto g = gnp_graph(40, 0.3, 5);
  std::stringstream buf;
  write_csr_binary(buf, g);
  const std::string bytes = buf.str();
  ASSERT_GE(bytes.size(), 24u);
  EXPECT_EQ(bytes.substr(0, 4), "PCSR");
  EXPECT_EQ(static_cast<unsigned char>(bytes[4]), 1u);  // version, LE
  EXPECT_EQ(static_cast<unsigned char>(bytes[8]), 40u);  // n, LE
  EXPECT_EQ(read_csr_binary(buf), g);

  std::stringstream text;
  write_edge_list(text, g);
  EXPECT_EQ(parse(text.str()), g);
  std::stringstream mtx;
  write_matrix_market(mtx, g);
  EXPECT_EQ(parse(mtx.str()), g);
}

TEST(View, HasEdgeModes) {
  EXPECT_FALSE(reference::pauli_view({"X", "Y"}).has_edge(0, 1));
  EXPECT_TRUE(reference::pauli_view({"XX", "YY"}).has_edge(0, 1));
  const std::vector<Edge> triangle{{0, 1}, {1, 2}, {0, 2}};
  EXPECT_TRUE(graph_view(3, triangle).has_edge(0, 1));
  EXPECT_FALSE(graph_view(3, triangle, true).has_edge(0, 1));
}

TEST(View, QueryErrors) {
  const auto view = graph_view(4, {{0, 1}});
  EXPECT_EQ(error_of([&] { view.has_edge(1, 1); }), Errc::same_vertex);
  const auto sub = view.induce(std::vector<vertex_t>{0, 1});
  EXPECT_EQ(error_of([&] { sub.has_edge(0, 3); }), Errc::inactive_vertex);
  EXPECT_EQ(error_of([&] { sub.induce(std::vector<vertex_t>{2}); }), Errc::not_subset);
  EXPECT_EQ(error_of([&] { view.induce(std::vector<vertex_t>{1, 1}); }), Errc::not_subset);
}

TEST(View, SymmetryAndComplementInvolution) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    auto g = std::make_shared<const ExplicitGraph>(gnp_graph(30, 0.4, seed));
    const auto plain = EdgeOracleView::of(g);
    const auto comp = EdgeOracleView::of(g, true);
    const auto pauli = reference::random_pauli_view(30, 5, seed);
    for (vertex_t u = 0; u < 30; ++u)
      for (vertex_t v = 0; v < 30; ++v) {
        if (u == v) continue;
        EXPECT_EQ(plain.has_edge(u, v), plain.has_edge(v, u));
        EXPECT_EQ(pauli.has_edge(u, v), pauli.has_edge(v, u));
        EXPECT_EQ(comp.has_edge(u, v), !plain.has_edge(u, v));
        EXPECT_EQ(pauli.has_edge(u, v), reference::edge(pauli, u, v));
      }
  }
}

TEST(View, InduceIdentityEmptyAndSubset) {
  const auto view = reference::gnp_view(10, 0.5, 3);
  const auto all = view.induce(view.active());
  EXPECT_TRUE(std::equal(all.active().begin(), all.active().end(), view.active().begin(), view.active().end()));
  EXPECT_TRUE(view.induce({}).empty());

  const std::vector<vertex_t> pick{7, 2, 9, 4, 0};
  const auto sub = view.induce(pick);
  EXPECT_EQ(sub.size(), 5u);
  EXPECT_EQ(view.size(), 10u);  // original untouched
  for (vertex_t u : pick)
    for (vertex_t v : pick)
      if (u != v) {
        EXPECT_EQ(sub.has_edge(u, v), view.graph()->has_edge(u, v));
      }
  for (vertex_t v = 0; v < 10; ++v)
    EXPECT_EQ(sub.contains(v), std::find(pick.begin(), pick.end(), v) != pick.end());
}

TEST(View, InductionConsistencyExhaustive) {
  SplitMix64 rng(11);
  for (int trial = 0; trial < 10; ++trial) {
    const std::size_t n = 5 + uniform_below(rng, 46);
    const auto view = trial % 2 ? reference::gnp_view(n, 0.5, trial, true) : reference::random_pauli_view(n, 4, trial);
    std::vector<vertex_t> subset;
    for (vertex_t v = 0; v < n; ++v)
      if (uniform_below(rng, 2)) subset.push_back(v);
    const auto sub = view.induce(subset);
    const auto local = materialize(sub);
    std::size_t expected = 0;
    for (std::size_t i = 0; i < subset.size(); ++i)
      for (std::size_t j = i + 1; j < subset.size(); ++j)
        if (reference::edge(view, subset[i], subset[j])) {
          ++expected;
          EXPECT_TRUE(local.has_edge(static_cast<vertex_t>(i), static_cast<vertex_t>(j)));
        }
    EXPECT_EQ(local.num_edges(), expected);
  }
}

TEST(DegreeStats, SmallCases) {
  const std::vector<Edge> triangle{{0, 1}, {1, 2}, {0, 2}};
  auto s = degree_stats(graph_view(3, triangle));
  EXPECT_EQ(s.max_degree, 2u);
  EXPECT_DOUBLE_EQ(s.average_degree, 2.0);
  EXPECT_EQ(degree_stats(graph_view(3, triangle, true)).max_degree, 0u);

  s = degree_stats(graph_view(7, {}, true));
  EXPECT_EQ(s.max_degree, 6u);
  EXPECT_EQ(s.histogram.back(), 7u);
  EXPECT_DOUBLE_EQ(s.edges, 21.0);
}

TEST(DegreeStats, SampledWithinTenPercentOfExact) {
  const auto view = reference::gnp_view(1000, 0.5, 21);
  const auto exact = degree_stats(view, {DegreeMode::exact});
  const auto sampled = degree_stats(view, {DegreeMode::sampled, 50000, 64, 9});
  EXPECT_TRUE(sampled.sampled);
  EXPECT_EQ(sampled.sample_pairs, 50000u);
  EXPECT_NEAR(sampled.average_degree, exact.average_degree, 0.10 * exact.average_degree);
  EXPECT_GE(static_cast<double>(exact.max_degree), exact.average_degree);
  EXPECT_LE(exact.max_degree, 999u);
}

}  // namespace
}  // namespace palcolor
