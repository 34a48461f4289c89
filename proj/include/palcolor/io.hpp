#pragma once

// JSON result documents. Key order is fixed (ordered_json) and timing
// fields can be left out, so identical runs serialize byte-identically.

#include <istream>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "palcolor/core.hpp"
#include "palcolor/driver.hpp"
#include "palcolor/greedy.hpp"
#include "palcolor/palette.hpp"
#include "palcolor/validator.hpp"

namespace palcolor {

using Json = nlohmann::ordered_json;

inline constexpr int kFormatVersion = 1;

constexpr std::string_view to_string(RunStatus s) noexcept {
  return s == RunStatus::complete ? "complete" : "iteration_limit_exceeded";
}

/// Baseline results reuse the driver's schema: a single pass, no conflict
/// graphs, and the full adjacency as stored edge entries.
ColoringResult to_coloring_result(const GreedyResult& g);

Json coloring_json(const ColoringResult& r, std::string_view algorithm = "palette");
Json iteration_json(const IterationRecord& it);

struct StatsContext {
  std::string algorithm = "palette";
  PaletteParams params;
  std::string strategy = "dynamic";
  double edges = 0;            // m
  bool edges_estimated = false;
  bool timing = true;
};

Json stats_json(const ColoringResult& r, const StatsContext& ctx);
Json report_json(const ValidationReport& rep);

/// Reads the "colors" array of a coloring document; null means uncolored.
std::vector<color_t> read_coloring_json(std::istream& in);

}  // namespace palcolor
