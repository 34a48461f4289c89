#pragma once

// Conflict graph construction: the edges of the current view whose
// endpoints' color lists intersect, in canonical CSR over the conflicted
// vertices only.
//
// The upper triangle of active pairs is scanned in fixed row blocks. Each
// block writes only its own rows, so the result is identical for any
// worker count. Two strategies produce the same graph:
//   two_phase: count admitted pairs per row, check the edge budget,
//              allocate exactly, then rescan and fill.
//   buffered:  one scan into per-block buffers, concatenated in block order.

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <limits>
#include <numeric>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "palcolor/core.hpp"
#include "palcolor/graph.hpp"
#include "palcolor/palette.hpp"
#include "palcolor/parallel.hpp"

namespace palcolor {

/// Two sorted lists share an element. O(|a| + |b|).
inline bool lists_intersect(std::span<const color_t> a, std::span<const color_t> b) noexcept {
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] == b[j]) return true;
    if (a[i] < b[j])
      ++i;
    else
      ++j;
  }
  return false;
}

enum class ConflictBuildMode { two_phase, buffered };

struct ConflictBuildOptions {
  unsigned threads = 1;
  std::size_t block_rows = 64;
  std::uint64_t edge_budget = std::numeric_limits<std::uint64_t>::max();  // max |E_c|
  ConflictBuildMode mode = ConflictBuildMode::two_phase;
};

struct ConflictGraph {
  std::vector<vertex_t> member_local;     // member -> position in view.active() (and list row)
  std::vector<vertex_t> member_original;  // member -> universe id
  ExplicitGraph csr;                      // over member indices

  std::size_t size() const noexcept { return member_local.size(); }
  std::size_t edge_count() const noexcept { return csr.num_edges(); }

  /// Entries held by this structure: adjacency, offsets and both maps.
  std::size_t storage_entries() const noexcept {
    return csr.adjacency().size() + csr.offsets().size() + member_local.size() + member_original.size();
  }
};

namespace detail {

template <class Oracle>
inline bool admitted(const Oracle& oracle, vertex_t u, vertex_t v, std::span<const color_t> lu,
                     std::span<const color_t> lv) noexcept {
  if constexpr (Oracle::cheap) {
    return oracle(u, v) && lists_intersect(lu, lv);
  } else {
    return lists_intersect(lu, lv) && oracle(u, v);
  }
}

[[noreturn]] inline void budget_exceeded(std::uint64_t seen, std::uint64_t budget) {
  throw Error(Errc::out_of_memory_budget, "conflict graph needs at least " + std::to_string(seen) +
                                              " edges, budget is " + std::to_string(budget));
}

struct UpperTriangle {
  std::vector<std::uint64_t> offsets;  // n + 1
  std::vector<vertex_t> targets;       // j > i, ascending within each row
};

template <class Oracle>
UpperTriangle scan_two_phase(const Oracle& oracle, std::span<const vertex_t> act, const ColorLists& lists,
                             const ConflictBuildOptions& opts) {
  const std::size_t n = act.size();
  const std::size_t block = std::max<std::size_t>(1, opts.block_rows);
  const std::size_t blocks = (n + block - 1) / block;
  UpperTriangle up;
  up.offsets.assign(n + 1, 0);

  parallel_for_blocks(blocks, opts.threads, [&](std::size_t b) {
    const std::size_t end = std::min(n, (b + 1) * block);
    for (std::size_t i = b * block; i < end; ++i) {
      const auto li = lists.row(i);
      std::uint64_t count = 0;
      for (std::size_t j = i + 1; j < n; ++j) count += admitted(oracle, act[i], act[j], li, lists.row(j));
      up.offsets[i + 1] = count;
    }
  });
  std::partial_sum(up.offsets.begin(), up.offsets.end(), up.offsets.begin());
  if (up.offsets[n] > opts.edge_budget) budget_exceeded(up.offsets[n], opts.edge_budget);

  up.targets.resize(up.offsets[n]);
  parallel_for_blocks(blocks, opts.threads, [&](std::size_t b) {
    const std::size_t end = std::min(n, (b + 1) * block);
    for (std::size_t i = b * block; i < end; ++i) {
      const auto li = lists.row(i);
      auto out = up.offsets[i];
      for (std::size_t j = i + 1; j < n; ++j)
        if (admitted(oracle, act[i], act[j], li, lists.row(j))) up.targets[out++] = static_cast<vertex_t>(j);
    }
  });
  return up;
}

template <class Oracle>
UpperTriangle scan_buffered(const Oracle& oracle, std::span<const vertex_t> act, const ColorLists& lists,
                            const ConflictBuildOptions& opts) {
  const std::size_t n = act.size();
  const std::size_t block = std::max<std::size_t>(1, opts.block_rows);
  const std::size_t blocks = (n + block - 1) / block;
  UpperTriangle up;
  up.offsets.assign(n + 1, 0);
  std::vector<std::vector<vertex_t>> buffers(blocks);
  std::atomic<std::uint64_t> total{0};

  parallel_for_blocks(blocks, opts.threads, [&](std::size_t b) {
    const std::size_t end = std::min(n, (b + 1) * block);
    auto& buf = buffers[b];
    for (std::size_t i = b * block; i < end; ++i) {
      const auto li = lists.row(i);
      const auto before = buf.size();
      for (std::size_t j = i + 1; j < n; ++j)
        if (admitted(oracle, act[i], act[j], li, lists.row(j))) buf.push_back(static_cast<vertex_t>(j));
      up.offsets[i + 1] = buf.size() - before;
      const auto seen = total.fetch_add(buf.size() - before) + (buf.size() - before);
      if (seen > opts.edge_budget) budget_exceeded(seen, opts.edge_budget);
    }
  });
  std::partial_sum(up.offsets.begin(), up.offsets.end(), up.offsets.begin());
  up.targets.reserve(up.offsets[n]);
  for (auto& buf : buffers) {
    up.targets.insert(up.targets.end(), buf.begin(), buf.end());
    std::vector<vertex_t>().swap(buf);
  }
  return up;
}

}  // namespace detail

/// Builds G_c for the view's active vertices; lists.row(i) belongs to
/// view.active()[i].
inline ConflictGraph build_conflict_graph(const EdgeOracleView& view, const ColorLists& lists,
                                          const ConflictBuildOptions& opts = {}) {
  const auto act = view.active();
  const std::size_t n = act.size();
  if (lists.rows() != n) {
    throw Error(Errc::bad_params, "color lists for " + std::to_string(lists.rows()) + " vertices, view has " +
                                      std::to_string(n));
  }
  detail::UpperTriangle up = view.visit([&](const auto& oracle) {
    return opts.mode == ConflictBuildMode::two_phase ? detail::scan_two_phase(oracle, act, lists, opts)
                                                     : detail::scan_buffered(oracle, act, lists, opts);
  });

  std::vector<std::uint64_t> degree(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    degree[i] += up.offsets[i + 1] - up.offsets[i];
    for (auto k = up.offsets[i]; k < up.offsets[i + 1]; ++k) ++degree[up.targets[k]];
  }

  ConflictGraph gc;
  std::vector<vertex_t> member_of(n, std::numeric_limits<vertex_t>::max());
  for (std::size_t i = 0; i < n; ++i) {
    if (degree[i] == 0) continue;
    member_of[i] = static_cast<vertex_t>(gc.member_local.size());
    gc.member_local.push_back(static_cast<vertex_t>(i));
    gc.member_original.push_back(act[i]);
  }

  const std::size_t members = gc.member_local.size();
  std::vector<std::uint64_t> offsets(members + 1, 0);
  for (std::size_t m = 0; m < members; ++m) offsets[m + 1] = offsets[m] + degree[gc.member_local[m]];
  std::vector<vertex_t> adjacency(offsets[members]);
  std::vector<std::uint64_t> cursor(offsets.begin(), offsets.end() - 1);
  // Pairs arrive sorted by (i, j), so every row fills in ascending order:
  // first the smaller endpoints (from earlier rows), then its own targets.
  for (std::size_t i = 0; i < n; ++i) {
    for (auto k = up.offsets[i]; k < up.offsets[i + 1]; ++k) {
      const vertex_t mi = member_of[i];
      const vertex_t mj = member_of[up.targets[k]];
      adjacency[cursor[mi]++] = mj;
      adjacency[cursor[mj]++] = mi;
    }
  }
  gc.csr = ExplicitGraph(std::move(offsets), std::move(adjacency));
  return gc;
}

/// Debug dump of G_c as universe-id edge list text.
inline void write_conflict_edges(std::ostream& out, const ConflictGraph& gc) {
  out << "# conflict edges: " << gc.edge_count() << '\n';
  for (auto [a, b] : gc.csr.edges()) out << gc.member_original[a] << ' ' << gc.member_original[b] << '\n';
}

}  // namespace palcolor
