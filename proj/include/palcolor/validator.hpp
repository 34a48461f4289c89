#pragma once

// Independent properness check of a coloring, the reported metrics, and
// export of color classes as groups.

#include <algorithm>
#include <cstdint>
#include <map>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "palcolor/core.hpp"
#include "palcolor/driver.hpp"
#include "palcolor/graph.hpp"
#include "palcolor/parallel.hpp"
#include "palcolor/pauli.hpp"
#include "palcolor/random.hpp"

namespace palcolor {

enum class ValidationMode { exhaustive, sampled };

struct ValidateOptions {
  ValidationMode mode = ValidationMode::exhaustive;
  std::size_t sample_pairs = 1'000'000;
  std::uint64_t seed = 0;
  unsigned threads = 1;
  std::size_t max_violations = 100;
};

struct ValidationReport {
  bool proper = true;
  std::vector<Edge> violations;  // capped; an uncolored vertex v appears as (v, v)
  std::size_t violation_count = 0;
  std::size_t uncolored = 0;
  bool sampled = false;
  std::size_t pairs_checked = 0;
  std::uint64_t seed = 0;

  std::size_t n = 0;
  std::size_t colors_used = 0;
  double color_pct = 0.0;
  double edges = 0.0;            // m of the view
  bool edges_estimated = false;
  std::size_t peak_conflict_edges = 0;
  double ec_max_pct = 0.0;
  std::vector<IterationRecord> iterations;
};

inline ValidationReport validate(const EdgeOracleView& view, std::span<const color_t> color,
                                 const ValidateOptions& opts = {}, std::size_t peak_conflict_edges = 0) {
  const auto act = view.active();
  const std::size_t n = act.size();
  if (color.size() != view.universe()) {
    throw Error(Errc::bad_params, "coloring has " + std::to_string(color.size()) + " entries, graph has " +
                                      std::to_string(view.universe()) + " vertices");
  }
  ValidationReport rep;
  rep.n = n;
  rep.seed = opts.seed;
  rep.peak_conflict_edges = peak_conflict_edges;

  auto record = [&](vertex_t u, vertex_t v) {
    ++rep.violation_count;
    if (rep.violations.size() < opts.max_violations) rep.violations.emplace_back(u, v);
  };

  std::vector<color_t> used;
  for (vertex_t v : act) {
    if (color[v] == kUncolored) {
      ++rep.uncolored;
      record(v, v);
    } else {
      used.push_back(color[v]);
    }
  }
  std::sort(used.begin(), used.end());
  rep.colors_used = static_cast<std::size_t>(std::unique(used.begin(), used.end()) - used.begin());

  if (opts.mode == ValidationMode::exhaustive) {
    if (n > kExactPairLimit) {
      throw Error(Errc::too_large_for_exhaustive, std::to_string(n) + " vertices exceeds " +
                                                      std::to_string(kExactPairLimit));
    }
    constexpr std::size_t kRows = 32;
    const std::size_t blocks = (n + kRows - 1) / kRows;
    struct BlockResult {
      std::vector<Edge> bad;
      std::size_t bad_count = 0;
      std::size_t edges = 0;
    };
    std::vector<BlockResult> partial(blocks);
    view.visit([&](const auto& oracle) {
      parallel_for_blocks(blocks, opts.threads, [&](std::size_t b) {
        auto& out = partial[b];
        for (std::size_t i = b * kRows; i < std::min(n, (b + 1) * kRows); ++i)
          for (std::size_t j = i + 1; j < n; ++j) {
            if (!oracle(act[i], act[j])) continue;
            ++out.edges;
            if (color[act[i]] == color[act[j]] && color[act[i]] != kUncolored) {
              if (out.bad.size() < opts.max_violations) out.bad.emplace_back(act[i], act[j]);
              ++out.bad_count;
            }
          }
      });
    });
    std::size_t edges = 0;
    for (auto& p : partial) {
      edges += p.edges;
      for (auto e : p.bad) record(e.first, e.second);
      rep.violation_count += p.bad_count - p.bad.size();
    }
    rep.pairs_checked = n < 2 ? 0 : n * (n - 1) / 2;
    rep.edges = static_cast<double>(edges);
  } else {
    rep.sampled = true;
    SplitMix64 rng(stream_key(opts.seed, {0x76616cULL}));
    if (n >= 2) {
      view.visit([&](const auto& oracle) {
        for (std::size_t s = 0; s < opts.sample_pairs; ++s) {
          const auto i = uniform_below(rng, n);
          auto j = uniform_below(rng, n - 1);
          if (j >= i) ++j;
          const vertex_t u = act[std::min(i, j)];
          const vertex_t v = act[std::max(i, j)];
          if (color[u] == color[v] && color[u] != kUncolored && oracle(u, v)) record(u, v);
        }
      });
      rep.pairs_checked = opts.sample_pairs;
    }
    DegreeOptions dopts;
    dopts.seed = opts.seed;
    const auto stats = degree_stats(view, dopts);
    rep.edges = stats.edges;
    rep.edges_estimated = stats.sampled;
  }

  rep.proper = rep.violation_count == 0;
  rep.color_pct = n ? 100.0 * static_cast<double>(rep.colors_used) / static_cast<double>(n) : 0.0;
  rep.ec_max_pct = rep.edges > 0 ? 100.0 * static_cast<double>(peak_conflict_edges) / rep.edges : 0.0;
  return rep;
}

inline ValidationReport validate(const EdgeOracleView& view, const ColoringResult& result,
                                 const ValidateOptions& opts = {}) {
  auto rep = validate(view, result.color, opts, result.peak_conflict_edges);
  rep.iterations = result.iterations;
  return rep;
}

/// Color classes of the active vertices, ordered by color id; members
/// ascending. Uncolored vertices are left out.
inline std::vector<std::vector<vertex_t>> partition_export(std::span<const color_t> color,
                                                           std::span<const vertex_t> active) {
  std::map<color_t, std::vector<vertex_t>> classes;
  for (vertex_t v : active)
    if (color[v] != kUncolored) classes[color[v]].push_back(v);
  std::vector<std::vector<vertex_t>> groups;
  groups.reserve(classes.size());
  for (auto& [c, members] : classes) groups.push_back(std::move(members));
  return groups;
}

/// One group per block, blank-line separated. Pauli inputs print strings,
/// other inputs print vertex ids.
inline void write_partition(std::ostream& out, const std::vector<std::vector<vertex_t>>& groups,
                            const PauliSet* pauli = nullptr) {
  for (std::size_t g = 0; g < groups.size(); ++g) {
    if (g) out << '\n';
    for (vertex_t v : groups[g]) {
      if (pauli)
        out << pauli->string(v).str() << '\n';
      else
        out << v << '\n';
    }
  }
}

}  // namespace palcolor
