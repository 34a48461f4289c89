#pragma once

// Per-iteration palette and list sizing, and random color-list assignment.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "palcolor/core.hpp"
#include "palcolor/parallel.hpp"
#include "palcolor/random.hpp"

namespace palcolor {

struct PaletteParams {
  double palette_pct = 12.5;  // palette size as a percentage of the active vertex count
  double alpha = 2.0;         // list size = round(alpha * ln(active count))
  std::uint64_t seed = 0;
  std::size_t max_iterations = 64;
  double stall_escalation_factor = 2.0;

  void validate() const {
    if (!(palette_pct > 0.0 && palette_pct <= 100.0)) {
      throw Error(Errc::bad_params, "palette_pct must be in (0, 100], got " + std::to_string(palette_pct));
    }
    if (!(alpha > 0.0)) throw Error(Errc::bad_params, "alpha must be > 0, got " + std::to_string(alpha));
    if (max_iterations < 1) throw Error(Errc::bad_params, "max_iterations must be >= 1");
    if (!(stall_escalation_factor >= 1.0)) throw Error(Errc::bad_params, "stall_escalation_factor must be >= 1");
  }

  /// The two configurations used throughout the evaluation.
  static PaletteParams normal(std::uint64_t seed = 0) { return {12.5, 2.0, seed}; }
  static PaletteParams aggressive(std::uint64_t seed = 0) { return {3.0, 30.0, seed}; }
};

struct IterationPlan {
  std::size_t iteration = 1;     // 1-based
  std::size_t palette_size = 1;
  std::uint64_t palette_base = 0;  // first color id of this iteration's palette
  std::size_t list_size = 1;

  std::uint64_t palette_end() const noexcept { return palette_base + palette_size; }
};

/// Palette = max(1, ceil(pct/100 * n)) scaled by factor^prior_stalls;
/// list = clamp(round(alpha * ln n), 1, palette).
inline IterationPlan plan_iteration(std::size_t iteration, std::size_t n_active, const PaletteParams& params,
                                    std::uint64_t palette_base = 0, std::size_t prior_stalls = 0) {
  IterationPlan plan;
  plan.iteration = iteration;
  plan.palette_base = palette_base;
  const double n = static_cast<double>(std::max<std::size_t>(n_active, 1));
  double palette = std::max(1.0, std::ceil(params.palette_pct * n / 100.0));
  if (prior_stalls > 0) {
    palette = std::ceil(palette * std::pow(params.stall_escalation_factor, static_cast<double>(prior_stalls)));
  }
  palette = std::min(palette, 4.0e9);
  plan.palette_size = static_cast<std::size_t>(palette);
  const double list = std::round(params.alpha * std::log(n));
  plan.list_size = static_cast<std::size_t>(std::clamp(list, 1.0, static_cast<double>(plan.palette_size)));
  if (plan.palette_end() >= kUncolored) throw Error(Errc::bad_params, "color ids exhausted");
  return plan;
}

/// Row i holds the sorted candidate colors of the i-th active vertex.
class ColorLists {
 public:
  ColorLists() = default;
  ColorLists(const IterationPlan& plan, std::size_t rows)
      : plan_(plan), rows_(rows), data_(rows * plan.list_size) {}

  const IterationPlan& plan() const noexcept { return plan_; }
  std::size_t rows() const noexcept { return rows_; }
  std::size_t list_size() const noexcept { return plan_.list_size; }

  /// Lists of unequal length, each sorted; list_size becomes the longest.
  /// Randomly drawn lists are always full, this is for hand-built inputs.
  static ColorLists from_rows(IterationPlan plan, const std::vector<std::vector<color_t>>& rows) {
    std::size_t width = 0;
    for (const auto& r : rows) width = std::max(width, r.size());
    plan.list_size = width;
    ColorLists lists(plan, rows.size());
    lists.lengths_.resize(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (!std::is_sorted(rows[i].begin(), rows[i].end())) throw Error(Errc::bad_params, "color list not sorted");
      std::copy(rows[i].begin(), rows[i].end(), lists.data_.begin() + static_cast<std::ptrdiff_t>(i * width));
      lists.lengths_[i] = static_cast<std::uint32_t>(rows[i].size());
    }
    return lists;
  }

  std::size_t length(std::size_t i) const noexcept { return lengths_.empty() ? plan_.list_size : lengths_[i]; }

  std::span<const color_t> row(std::size_t i) const noexcept {
    return std::span(data_).subspan(i * plan_.list_size, length(i));
  }
  std::span<color_t> row(std::size_t i) noexcept { return std::span(data_).subspan(i * plan_.list_size, length(i)); }

  std::size_t storage_entries() const noexcept { return data_.size() + lengths_.size(); }

 private:
  IterationPlan plan_;
  std::size_t rows_ = 0;
  std::vector<color_t> data_;
  std::vector<std::uint32_t> lengths_;  // empty: every row is full
};

/// Draws the list of `vertex` (a universe id) for this plan: list_size
/// distinct colors, uniform without replacement from the palette (Floyd's
/// algorithm), sorted. The stream depends only on (seed, iteration, vertex).
/// `marks` is caller scratch of palette_size zero bytes; it is left zeroed.
inline void draw_color_list(std::uint64_t seed, const IterationPlan& plan, vertex_t vertex,
                            std::span<color_t> out, std::vector<std::uint8_t>& marks) {
  SplitMix64 rng(stream_key(seed, {0x6c697374ULL, plan.iteration, vertex}));
  const std::size_t p = plan.palette_size;
  const std::size_t l = plan.list_size;
  if (marks.size() < p) marks.resize(p, 0);
  std::size_t k = 0;
  for (std::size_t j = p - l; j < p; ++j) {
    auto t = static_cast<std::size_t>(uniform_below(rng, j + 1));
    if (marks[t]) t = j;
    marks[t] = 1;
    out[k++] = static_cast<color_t>(plan.palette_base + t);
  }
  for (color_t c : out) marks[c - plan.palette_base] = 0;
  std::sort(out.begin(), out.end());
}

inline ColorLists assign_random_lists(const IterationPlan& plan, std::span<const vertex_t> active,
                                      std::uint64_t seed, unsigned threads = 1) {
  ColorLists lists(plan, active.size());
  constexpr std::size_t kBlock = 1024;
  const std::size_t blocks = (active.size() + kBlock - 1) / kBlock;
  parallel_for_blocks(blocks, threads, [&](std::size_t b) {
    std::vector<std::uint8_t> marks(plan.palette_size, 0);
    const std::size_t end = std::min(active.size(), (b + 1) * kBlock);
    for (std::size_t i = b * kBlock; i < end; ++i) draw_color_list(seed, plan, active[i], lists.row(i), marks);
  });
  return lists;
}

}  // namespace palcolor
