#pragma once

// The iterative palette coloring loop. Each iteration draws a fresh palette
// disjoint from all earlier ones, gives every active vertex a random color
// list, colors the vertices whose lists clash with no neighbor directly,
// list-colors the conflict graph, and recurses on whatever is left.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "palcolor/conflict.hpp"
#include "palcolor/core.hpp"
#include "palcolor/graph.hpp"
#include "palcolor/list_coloring.hpp"
#include "palcolor/palette.hpp"

namespace palcolor {

struct IterationRecord {
  std::size_t iteration = 0;
  std::size_t active = 0;
  std::size_t palette_size = 0;
  std::uint64_t palette_base = 0;
  std::size_t list_size = 0;
  std::size_t conflict_vertices = 0;
  std::size_t conflict_edges = 0;
  std::size_t colored_unconflicted = 0;
  std::size_t colored_in_conflict = 0;
  std::size_t uncolored = 0;
  bool stalled = false;
  std::size_t tracked_entries = 0;  // per-iteration structures, see ColoringResult
};

enum class RunStatus { complete, iteration_limit_exceeded };

struct ColoringResult {
  std::vector<color_t> color;              // universe-indexed; kUncolored if never colored
  std::vector<std::uint32_t> colored_in;   // iteration that colored the vertex, 0 if none
  std::vector<IterationRecord> iterations;
  std::size_t colors_used = 0;
  std::uint64_t palette_total = 0;         // sum of palette sizes
  std::size_t peak_conflict_edges = 0;
  std::size_t peak_edge_entries = 0;       // max over iterations of stored adjacency entries (2|E_c|)
  std::size_t peak_tracked_entries = 0;    // max over iterations of all tracked entries, plus per-vertex arrays
  RunStatus status = RunStatus::complete;
  std::string diagnostics;
  double runtime_s = 0.0;

  bool complete() const noexcept { return status == RunStatus::complete; }
};

struct RunOptions {
  ConflictStrategy strategy = ConflictStrategy::dynamic;
  ConflictBuildOptions build;
};

/// Gives every active vertex outside the conflict graph the smallest color
/// of its list. Returns the number colored.
inline std::size_t color_unconflicted(std::span<const vertex_t> active, const ColorLists& lists,
                                      const ConflictGraph& gc, ColoringResult& result) {
  std::vector<std::uint8_t> conflicted(active.size(), 0);
  for (vertex_t local : gc.member_local) conflicted[local] = 1;
  std::size_t colored = 0;
  for (std::size_t i = 0; i < active.size(); ++i) {
    if (conflicted[i]) continue;
    result.color[active[i]] = lists.row(i).front();
    result.colored_in[active[i]] = static_cast<std::uint32_t>(lists.plan().iteration);
    ++colored;
  }
  return colored;
}

inline ColoringResult run(const EdgeOracleView& input, const PaletteParams& params, const RunOptions& options = {}) {
  params.validate();
  const auto started = std::chrono::steady_clock::now();

  ColoringResult result;
  result.color.assign(input.universe(), kUncolored);
  result.colored_in.assign(input.universe(), 0);
  const std::size_t per_vertex = result.color.size() + result.colored_in.size();

  EdgeOracleView view = input;
  std::uint64_t palette_base = 0;
  std::size_t stalls = 0;
  std::size_t iteration = 1;

  while (!view.empty()) {
    if (iteration > params.max_iterations) {
      result.status = RunStatus::iteration_limit_exceeded;
      result.diagnostics = std::to_string(view.size()) + " vertices still uncolored after " +
                           std::to_string(params.max_iterations) + " iterations";
      break;
    }
    const auto active = view.active();
    const IterationPlan plan = plan_iteration(iteration, active.size(), params, palette_base, stalls);
    const ColorLists lists = assign_random_lists(plan, active, params.seed, options.build.threads);
    const ConflictGraph gc = build_conflict_graph(view, lists, options.build);

    IterationRecord rec;
    rec.iteration = iteration;
    rec.active = active.size();
    rec.palette_size = plan.palette_size;
    rec.palette_base = plan.palette_base;
    rec.list_size = plan.list_size;
    rec.conflict_vertices = gc.size();
    rec.conflict_edges = gc.edge_count();
    rec.colored_unconflicted = color_unconflicted(active, lists, gc, result);

    const auto outcome = color_conflict_graph(gc, lists, options.strategy,
                                              stream_key(params.seed, {0x636f6c6fULL, iteration}));
    std::vector<vertex_t> residue;
    residue.reserve(outcome.uncolored.size());
    for (std::size_t k = 0; k < gc.size(); ++k) {
      const vertex_t v = gc.member_original[k];
      if (outcome.color[k] == kUncolored) {
        residue.push_back(v);
      } else {
        result.color[v] = outcome.color[k];
        result.colored_in[v] = static_cast<std::uint32_t>(iteration);
        ++rec.colored_in_conflict;
      }
    }
    rec.uncolored = residue.size();
    rec.stalled = rec.colored_unconflicted + rec.colored_in_conflict == 0;
    rec.tracked_entries = active.size() + lists.storage_entries() + gc.storage_entries() + outcome.working_entries;

    result.peak_conflict_edges = std::max(result.peak_conflict_edges, rec.conflict_edges);
    result.peak_edge_entries = std::max(result.peak_edge_entries, gc.csr.adjacency().size());
    result.peak_tracked_entries = std::max(result.peak_tracked_entries, per_vertex + rec.tracked_entries);
    result.iterations.push_back(rec);

    if (rec.stalled) ++stalls;
    palette_base = plan.palette_end();
    view = view.induce(residue);
    ++iteration;
  }

  result.palette_total = palette_base;
  result.colors_used = detail::count_distinct(result.color);
  result.runtime_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  return result;
}

}  // namespace palcolor
