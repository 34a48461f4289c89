#pragma once

// Parameter tuning: grid sweeps over (palette percentage, alpha), the
// beta-weighted choice of the best cell, and a nearest-neighbor predictor
// that maps (beta, n, m) of a new instance to a grid cell.

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <istream>
#include <limits>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>
#include <vector>

#include "palcolor/core.hpp"
#include "palcolor/driver.hpp"
#include "palcolor/graph.hpp"
#include "palcolor/parallel.hpp"

namespace palcolor {

inline std::vector<double> default_palette_grid() { return {1.0, 2.5, 5.0, 7.5, 10.0, 12.5, 15.0, 17.5, 20.0}; }
inline std::vector<double> default_alpha_grid() { return {0.5, 1.0, 1.5, 2.0, 2.5, 3.0, 3.5, 4.0, 4.5}; }
inline std::vector<double> default_beta_grid() { return {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9}; }

namespace detail {

double parse_double(std::string_view token);
std::string format_double(double v);
std::vector<std::string_view> split(std::string_view s, char sep);

}  // namespace detail

/// Parses "1,2.5,5" and ranges "0.5..4.5" (step 0.5) or "1..9:2", in any
/// comma-separated mix.
std::vector<double> parse_grid(std::string_view text);

// ---------------------------------------------------------------------------
// Sweep

struct SweepRecord {
  std::string instance;
  std::size_t n = 0;
  double m = 0;             // edges of the colored graph (exact or estimated)
  double palette_pct = 0;
  double alpha = 0;
  double colors = 0;        // final colors
  double ec_max = 0;        // peak conflict edges over iterations
  double runtime_s = 0;
  std::uint64_t seed = 0;
};

struct SweepFailure {
  double palette_pct = 0;
  double alpha = 0;
  std::uint64_t seed = 0;
  std::string message;
};

struct SweepResult {
  std::vector<SweepRecord> records;  // grid order: palette major, alpha, then seed
  std::vector<SweepFailure> failures;
};

struct SweepOptions {
  std::string instance = "instance";
  unsigned threads = 1;        // concurrent cells; each run is single-threaded
  RunOptions run;
  std::size_t max_iterations = 64;
  double edges = -1;           // m; computed from the view when negative
};

SweepResult sweep(const EdgeOracleView& view, std::span<const double> grid_p, std::span<const double> grid_a,
                  std::span<const std::uint64_t> seeds, const SweepOptions& opts = {});

inline constexpr std::string_view kSweepCsvHeader = "instance,n,m,palette_pct,alpha,colors,ec_max,runtime_s,seed";

void write_sweep_csv(std::ostream& out, std::span<const SweepRecord> records, bool header = true);
std::vector<SweepRecord> read_sweep_csv(std::istream& in);

// ---------------------------------------------------------------------------
// Selection

struct CellScore {
  double palette_pct = 0;
  double alpha = 0;
  double colors_norm = 0;  // mean colors / n
  double ec_norm = 0;      // mean peak conflict edges / m
};

/// Seed-averaged, normalized scores per grid cell of one instance, sorted by
/// (palette_pct, alpha).
std::vector<CellScore> cell_scores(std::span<const SweepRecord> records);

/// Grid argmin of beta * C/n + (1 - beta) * Ec/m over one instance's
/// records. Ties: smaller Ec/m, then smaller palette_pct, then smaller alpha.
std::pair<double, double> select_optimal(std::span<const SweepRecord> records, double beta);

// ---------------------------------------------------------------------------
// Prediction

struct TrainingPoint {
  double beta = 0;
  double n = 0;
  double m = 0;
  double palette_pct = 0;  // target
  double alpha = 0;        // target
};

/// For every instance in `records` and every beta, the selected optimum.
std::vector<TrainingPoint> training_points(std::span<const SweepRecord> records, std::span<const double> betas);

/// Anything that maps (beta, n, m) to a (palette_pct, alpha) cell.
class Predictor {
 public:
  virtual ~Predictor() = default;
  virtual std::pair<double, double> predict(double beta, double n, double m) const = 0;
};

/// k-nearest-neighbor regression on standardized (beta, ln n, ln(1 + m)),
/// inverse-distance weighted, snapped to the sweep grid.
class KnnPredictor final : public Predictor {
 public:
  static constexpr std::size_t kDefaultK = 3;

  KnnPredictor() = default;

  static KnnPredictor train(std::vector<TrainingPoint> points, std::size_t k = kDefaultK,
                            std::vector<double> grid_p = {}, std::vector<double> grid_a = {});

  bool trained() const noexcept { return !points_.empty(); }
  const std::vector<TrainingPoint>& points() const noexcept { return points_; }
  const std::vector<double>& grid_p() const noexcept { return grid_p_; }
  const std::vector<double>& grid_a() const noexcept { return grid_a_; }

  /// Weighted neighbor average before snapping.
  std::pair<double, double> predict_raw(double beta, double n, double m) const;
  std::pair<double, double> predict(double beta, double n, double m) const override;

  /// Flat text table:
  ///   knn <k>
  ///   grid_p <v,...>
  ///   grid_a <v,...>
  ///   point <beta> <n> <m> <palette_pct> <alpha>   (one per line)
  void save(std::ostream& out) const;
  static KnnPredictor load(std::istream& in);

 private:
  static std::vector<double> sorted_unique(std::vector<double> xs) {
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    return xs;
  }

  static double snap(const std::vector<double>& grid, double x) {
    double best = grid.front();
    for (double g : grid)
      if (std::abs(g - x) < std::abs(best - x)) best = g;
    return best;
  }

  static std::array<double, 3> raw_feature(double beta, double n, double m) {
    return {beta, std::log(std::max(n, 1.0)), std::log1p(std::max(m, 0.0))};
  }

  std::array<double, 3> standardized(double beta, double n, double m) const {
    auto f = raw_feature(beta, n, m);
    for (std::size_t d = 0; d < 3; ++d) f[d] = (f[d] - mean_[d]) / scale_[d];
    return f;
  }

  std::size_t k_ = kDefaultK;
  std::vector<TrainingPoint> points_;
  std::vector<double> grid_p_, grid_a_;
  std::array<double, 3> mean_{}, scale_{1, 1, 1};
};

}  // namespace palcolor
