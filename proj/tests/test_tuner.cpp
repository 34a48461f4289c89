#include <gtest/gtest.h>

#include <sstream>

#include "support/reference.hpp"

namespace palcolor {
namespace {

SweepRecord rec(std::string inst, double n, double m, double p, double a, double colors, double ec,
                std::uint64_t seed = 0) {
  return {std::move(inst), static_cast<std::size_t>(n), m, p, a, colors, ec, 0.0, seed};
}

TEST(Grid, Parsing) {
  EXPECT_EQ(parse_grid("1,2.5,5"), (std::vector<double>{1, 2.5, 5}));
  EXPECT_EQ(parse_grid("0.5..4.5"), default_alpha_grid());
  EXPECT_EQ(parse_grid("1..9:2"), (std::vector<double>{1, 3, 5, 7, 9}));
  EXPECT_EQ(parse_grid("1,2.5,5,7.5,10,12.5,15,17.5,20"), default_palette_grid());
  EXPECT_THROW(parse_grid("1,x"), Error);
}

TEST(Sweep, SingleCell) {
  const auto view = reference::random_pauli_view(100, 6, 1);
  const std::vector<double> p{12.5}, a{2.0};
  const std::vector<std::uint64_t> seeds{7};
  const auto res = sweep(view, p, a, seeds);
  ASSERT_EQ(res.records.size(), 1u);
  EXPECT_TRUE(res.failures.empty());
  const auto direct = run(view, {12.5, 2.0, 7});
  EXPECT_EQ(res.records[0].colors, static_cast<double>(direct.colors_used));
  EXPECT_EQ(res.records[0].ec_max, static_cast<double>(direct.peak_conflict_edges));
  EXPECT_EQ(res.records[0].n, 100u);
  EXPECT_EQ(res.records[0].m, degree_stats(view).edges);
}

TEST(Sweep, DefaultGridHasEightyOneCells) {
  const auto view = reference::random_pauli_view(60, 5, 2);
  const std::vector<std::uint64_t> seeds{0};
  SweepOptions opts;
  opts.threads = 2;
  const auto res = sweep(view, default_palette_grid(), default_alpha_grid(), seeds, opts);
  EXPECT_EQ(res.records.size() + res.failures.size(), 81u);
  std::set<std::pair<double, double>> cells;
  for (const auto& r : res.records) cells.emplace(r.palette_pct, r.alpha);
  EXPECT_EQ(cells.size(), res.records.size());
  // independent of how many cells ran at once
  opts.threads = 1;
  const auto again = sweep(view, default_palette_grid(), default_alpha_grid(), seeds, opts);
  ASSERT_EQ(again.records.size(), res.records.size());
  for (std::size_t i = 0; i < res.records.size(); ++i) EXPECT_EQ(again.records[i].colors, res.records[i].colors);
}

TEST(Sweep, ConflictsGrowWithAlpha) {
  // longer lists overlap more, so peak |E_c| grows with alpha
  const auto view = reference::random_pauli_view(400, 8, 3);
  const std::vector<double> p{12.5}, a{0.5, 4.5};
  const std::vector<std::uint64_t> seeds{0, 1, 2};
  const auto res = sweep(view, p, a, seeds);
  const auto scores = cell_scores(res.records);
  ASSERT_EQ(scores.size(), 2u);
  EXPECT_LT(scores[0].ec_norm, scores[1].ec_norm);
}

TEST(Select, DegenerateWeights) {
  const std::vector<SweepRecord> r{rec("g", 100, 1000, 1, 1, 20, 500), rec("g", 100, 1000, 2, 1, 40, 100),
                                   rec("g", 100, 1000, 3, 1, 30, 300)};
  EXPECT_EQ(select_optimal(r, 1.0), (std::pair<double, double>{1, 1}));
  EXPECT_EQ(select_optimal(r, 0.0), (std::pair<double, double>{2, 1}));
}

TEST(Select, TwoCellArithmetic) {
  // C/n = 0.2, Ec/m = 0.5 versus C/n = 0.3, Ec/m = 0.1 at beta = 0.5
  const std::vector<SweepRecord> r{rec("g", 100, 1000, 5, 1, 20, 500), rec("g", 100, 1000, 10, 2, 30, 100)};
  EXPECT_EQ(select_optimal(r, 0.5), (std::pair<double, double>{10, 2}));
}

TEST(Select, TieBreaks) {
  // equal objective at beta = 0.5; the smaller Ec/m wins
  const std::vector<SweepRecord> r{rec("g", 10, 10, 1, 1, 4, 2), rec("g", 10, 10, 2, 1, 2, 4)};
  EXPECT_EQ(select_optimal(r, 0.5), (std::pair<double, double>{1, 1}));
  // full tie: smaller palette, then smaller alpha
  const std::vector<SweepRecord> t{rec("g", 10, 10, 2, 1, 3, 3), rec("g", 10, 10, 1, 3, 3, 3),
                                   rec("g", 10, 10, 1, 2, 3, 3)};
  EXPECT_EQ(select_optimal(t, 0.3), (std::pair<double, double>{1, 2}));
}

TEST(Select, Errors) {
  EXPECT_THROW(select_optimal({}, 0.5), Error);
  const std::vector<SweepRecord> r{rec("g", 10, 10, 1, 1, 4, 2)};
  EXPECT_THROW(select_optimal(r, 1.5), Error);
}

TEST(Select, MatchesBruteForceAndIsScaleInvariant) {
  SplitMix64 rng(31);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<SweepRecord> r;
    for (double p : {1.0, 5.0, 10.0})
      for (double a : {0.5, 1.0, 2.0})
        for (std::uint64_t s = 0; s < 3; ++s)
          r.push_back(rec("g", 500, 20000, p, a, static_cast<double>(20 + uniform_below(rng, 60)),
                          static_cast<double>(uniform_below(rng, 4000)), s));
    for (double beta : default_beta_grid()) {
      const auto got = select_optimal(r, beta);
      EXPECT_EQ(got, reference::argmin_objective(r, beta));
      auto scaled = r;
      for (auto& x : scaled) {
        x.ec_max *= 4;
        x.m *= 4;
      }
      EXPECT_EQ(select_optimal(scaled, beta), got);
    }
  }
}

TEST(Csv, RoundTrip) {
  const std::vector<SweepRecord> r{rec("h2", 100, 2475.5, 12.5, 2, 17, 120, 3), rec("h2", 100, 2475.5, 1, 0.5, 9, 4, 4)};
  std::stringstream buf;
  write_sweep_csv(buf, r);
  EXPECT_EQ(buf.str().substr(0, kSweepCsvHeader.size()), kSweepCsvHeader);
  const auto back = read_sweep_csv(buf);
  ASSERT_EQ(back.size(), 2u);
  EXPECT_EQ(back[0].instance, "h2");
  EXPECT_EQ(back[0].m, 2475.5);
  EXPECT_EQ(back[1].alpha, 0.5);
  EXPECT_EQ(back[1].seed, 4u);
  std::istringstream bad("a,b,c\n");
  EXPECT_THROW(read_sweep_csv(bad), Error);
}

TEST(Knn, SinglePointAlwaysReturned) {
  const auto model = KnnPredictor::train({{0.5, 1000, 2e5, 7.5, 1.5}});
  EXPECT_EQ(model.predict(0.1, 10, 10), (std::pair<double, double>{7.5, 1.5}));
  EXPECT_EQ(model.predict(0.9, 1e6, 1e11), (std::pair<double, double>{7.5, 1.5}));
}

TEST(Knn, ExactMatchAndHull) {
  std::vector<TrainingPoint> pts;
  SplitMix64 rng(3);
  for (int i = 0; i < 30; ++i) {
    const double n = 100.0 + static_cast<double>(uniform_below(rng, 5000));
    pts.push_back({0.1 * static_cast<double>(1 + uniform_below(rng, 9)), n, n * n / 4,
                   default_palette_grid()[uniform_below(rng, 9)], default_alpha_grid()[uniform_below(rng, 9)]});
  }
  const auto grid_p = default_palette_grid();
  const auto grid_a = default_alpha_grid();
  const auto model = KnnPredictor::train(pts, 3, grid_p, grid_a);
  for (const auto& p : pts) {
    // duplicates in the training set would average; skip those
    std::size_t same = 0;
    for (const auto& q : pts) same += q.beta == p.beta && q.n == p.n && q.m == p.m;
    if (same == 1) {
      EXPECT_EQ(model.predict(p.beta, p.n, p.m), (std::pair<double, double>{p.palette_pct, p.alpha}));
    }
  }
  for (int i = 0; i < 50; ++i) {
    const double beta = uniform_unit(rng), n = 100.0 + static_cast<double>(uniform_below(rng, 5000));
    const auto [rp, ra] = model.predict_raw(beta, n, n * n / 4);
    double lo_p = 1e9, hi_p = -1e9, lo_a = 1e9, hi_a = -1e9;
    for (const auto& q : pts) {
      lo_p = std::min(lo_p, q.palette_pct), hi_p = std::max(hi_p, q.palette_pct);
      lo_a = std::min(lo_a, q.alpha), hi_a = std::max(hi_a, q.alpha);
    }
    EXPECT_GE(rp, lo_p - 1e-9);
    EXPECT_LE(rp, hi_p + 1e-9);
    EXPECT_GE(ra, lo_a - 1e-9);
    EXPECT_LE(ra, hi_a + 1e-9);
    const auto [sp, sa] = model.predict(beta, n, n * n / 4);
    EXPECT_TRUE(std::ranges::count(grid_p, sp) == 1);
    EXPECT_TRUE(std::ranges::count(grid_a, sa) == 1);
  }
}

TEST(Knn, WeightedAverageOfThreeNeighbors) {
  // query sits between neighbors; raw prediction is inside their targets' range
  const std::vector<TrainingPoint> pts{{0.5, 100, 1000, 1, 0.5}, {0.5, 200, 4000, 5, 1.5},
                                       {0.5, 400, 16000, 10, 2.5}, {0.9, 1e6, 1e11, 20, 4.5}};
  const auto model = KnnPredictor::train(pts, 3);
  const auto [p, a] = model.predict_raw(0.5, 250, 6000);
  EXPECT_GT(p, 1.0);
  EXPECT_LT(p, 10.0);
  EXPECT_GT(a, 0.5);
  EXPECT_LT(a, 2.5);
}

TEST(Knn, TrainingFromSweepRecordsAndPersistence) {
  std::vector<SweepRecord> r{rec("a", 100, 1000, 5, 1, 20, 500), rec("a", 100, 1000, 10, 2, 30, 100),
                             rec("b", 900, 90000, 5, 1, 90, 9000), rec("b", 900, 90000, 10, 2, 200, 100)};
  const auto pts = training_points(r, default_beta_grid());
  EXPECT_EQ(pts.size(), 18u);
  const auto model = KnnPredictor::train(pts, 3, {5, 10}, {1, 2});
  // a duplicate of a training instance retrieves its own optimum
  EXPECT_EQ(model.predict(0.5, 100, 1000), select_optimal(std::span(r).first(2), 0.5));

  std::stringstream buf;
  model.save(buf);
  const auto loaded = KnnPredictor::load(buf);
  for (double beta : default_beta_grid())
    for (double n : {100.0, 500.0, 900.0})
      EXPECT_EQ(loaded.predict(beta, n, n * 50), model.predict(beta, n, n * 50));

  EXPECT_THROW(KnnPredictor{}.predict(0.5, 10, 10), Error);
  EXPECT_THROW(KnnPredictor::train({}), Error);
}

}  // namespace
}  // namespace palcolor
