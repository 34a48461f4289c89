#pragma once

// Coloring the conflict graph from per-vertex color lists.

#include <algorithm>
#include <cstdint>
#include <limits>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "palcolor/conflict.hpp"
#include "palcolor/core.hpp"
#include "palcolor/ordering.hpp"
#include "palcolor/palette.hpp"
#include "palcolor/random.hpp"

namespace palcolor {

/// Vertices keyed by a small integer (here: current list length), with O(1)
/// insert/erase via a position index and a lower-bound pointer to the
/// lowest non-empty bucket.
class BucketQueue {
 public:
  BucketQueue(std::size_t vertices, std::size_t max_key)
      : buckets_(max_key + 1), key_(vertices, kAbsent), slot_(vertices, 0), lowest_(max_key + 1) {}

  bool empty() const noexcept { return size_ == 0; }
  std::size_t size() const noexcept { return size_; }
  bool contains(vertex_t v) const noexcept { return key_[v] != kAbsent; }
  std::size_t key(vertex_t v) const noexcept { return key_[v]; }
  std::span<const vertex_t> bucket(std::size_t k) const noexcept { return buckets_[k]; }

  void insert(vertex_t v, std::size_t k) {
    key_[v] = k;
    slot_[v] = buckets_[k].size();
    buckets_[k].push_back(v);
    lowest_ = std::min(lowest_, k);
    ++size_;
  }

  void erase(vertex_t v) {
    auto& b = buckets_[key_[v]];
    const vertex_t last = b.back();
    b[slot_[v]] = last;
    slot_[last] = slot_[v];
    b.pop_back();
    key_[v] = kAbsent;
    --size_;
  }

  void rekey(vertex_t v, std::size_t k) {
    erase(v);
    insert(v, k);
  }

  /// Key of the lowest non-empty bucket. Requires !empty().
  std::size_t lowest_key() {
    while (buckets_[lowest_].empty()) ++lowest_;
    return lowest_;
  }

  /// Uniformly random member of the lowest non-empty bucket.
  template <class Rng>
  vertex_t pick_lowest(Rng& rng) {
    const auto& b = buckets_[lowest_key()];
    return b[uniform_below(rng, b.size())];
  }

 private:
  static constexpr std::size_t kAbsent = std::numeric_limits<std::size_t>::max();

  std::vector<std::vector<vertex_t>> buckets_;
  std::vector<std::size_t> key_;
  std::vector<std::size_t> slot_;
  std::size_t lowest_;
  std::size_t size_ = 0;
};

enum class ConflictStrategy { dynamic, natural, largest_degree_first, smallest_degree_last, random };

constexpr std::string_view to_string(ConflictStrategy s) noexcept {
  switch (s) {
    case ConflictStrategy::dynamic: return "dynamic";
    case ConflictStrategy::natural: return "natural";
    case ConflictStrategy::largest_degree_first: return "ldf";
    case ConflictStrategy::smallest_degree_last: return "sdl";
    case ConflictStrategy::random: return "random";
  }
  return "?";
}

inline ConflictStrategy parse_conflict_strategy(std::string_view name) {
  for (auto s : {ConflictStrategy::dynamic, ConflictStrategy::natural, ConflictStrategy::largest_degree_first,
                 ConflictStrategy::smallest_degree_last, ConflictStrategy::random}) {
    if (name == to_string(s)) return s;
  }
  throw Error(Errc::bad_params, "unknown conflict strategy '" + std::string(name) + "'");
}

struct ConflictColoringOutcome {
  std::vector<color_t> color;       // per member; kUncolored for members of V_u
  std::vector<vertex_t> uncolored;  // V_u as member indices, in the order they were given up
  std::size_t colors_used = 0;
  std::size_t empties = 0;
  std::size_t removal_ops = 0;
  std::size_t working_entries = 0;  // scratch held while coloring (lists, buckets, index)
};

namespace detail {

inline std::size_t count_distinct(std::vector<color_t> colors) {
  std::erase(colors, kUncolored);
  std::sort(colors.begin(), colors.end());
  return static_cast<std::size_t>(std::unique(colors.begin(), colors.end()) - colors.begin());
}

}  // namespace detail

/// No-op observer for color_dynamic.
struct NoPickObserver {
  void operator()(vertex_t, std::span<const std::uint32_t>, std::span<const std::uint8_t>) const noexcept {}
};

/// Dynamic greedy list coloring. Repeatedly takes a random vertex among
/// those with the fewest remaining candidates, gives it a uniformly random
/// remaining color, and strikes that color from its uncolored neighbors.
/// A neighbor left with no candidates joins V_u.
///
/// The observer sees (picked member, current list lengths, processed flags)
/// before each pick is colored.
template <class Observer = NoPickObserver>
ConflictColoringOutcome color_dynamic(const ConflictGraph& gc, const ColorLists& lists, std::uint64_t seed,
                                      Observer&& observe = {}) {
  const std::size_t m = gc.size();
  const std::size_t width = lists.list_size();
  ConflictColoringOutcome out;
  out.color.assign(m, kUncolored);

  std::vector<color_t> cur(m * width);
  std::vector<std::uint32_t> len(m, 0);
  for (std::size_t k = 0; k < m; ++k) {
    const auto src = lists.row(gc.member_local[k]);
    std::copy(src.begin(), src.end(), cur.begin() + static_cast<std::ptrdiff_t>(k * width));
    len[k] = static_cast<std::uint32_t>(src.size());
  }
  std::vector<std::uint8_t> processed(m, 0);
  BucketQueue queue(m, width);
  for (vertex_t k = 0; k < m; ++k) {
    if (len[k] > 0) {
      queue.insert(k, len[k]);
    } else {
      processed[k] = 1;
      out.uncolored.push_back(k);
      ++out.empties;
    }
  }
  out.working_entries = cur.size() + len.size() + processed.size() + 3 * m;

  SplitMix64 rng(seed);
  while (!queue.empty()) {
    const vertex_t v = queue.pick_lowest(rng);
    observe(v, std::span<const std::uint32_t>(len), std::span<const std::uint8_t>(processed));
    const color_t c = cur[v * width + uniform_below(rng, len[v])];
    out.color[v] = c;
    queue.erase(v);
    processed[v] = 1;
    for (vertex_t u : gc.csr.neighbors(v)) {
      if (processed[u]) continue;
      auto first = cur.begin() + static_cast<std::ptrdiff_t>(u * width);
      auto last = first + len[u];
      auto it = std::lower_bound(first, last, c);
      if (it == last || *it != c) continue;
      std::copy(it + 1, last, it);
      ++out.removal_ops;
      if (--len[u] == 0) {
        queue.erase(u);
        processed[u] = 1;
        out.uncolored.push_back(u);
        ++out.empties;
      } else {
        queue.rekey(u, len[u]);
      }
    }
  }
  out.colors_used = detail::count_distinct(out.color);
  return out;
}

/// Static-order list coloring: each vertex takes the first color of its
/// list not already held by a colored neighbor, or joins V_u.
inline ConflictColoringOutcome color_static(const ConflictGraph& gc, const ColorLists& lists,
                                            ConflictStrategy order_kind, std::uint64_t seed) {
  const std::size_t m = gc.size();
  std::vector<vertex_t> order;
  switch (order_kind) {
    case ConflictStrategy::largest_degree_first: order = largest_first_order(gc.csr); break;
    case ConflictStrategy::smallest_degree_last: order = smallest_last_order(gc.csr); break;
    case ConflictStrategy::random: {
      order = natural_order(m);
      SplitMix64 rng(seed);
      for (std::size_t i = m; i > 1; --i) std::swap(order[i - 1], order[uniform_below(rng, i)]);
      break;
    }
    case ConflictStrategy::natural:
    case ConflictStrategy::dynamic:
    default: order = natural_order(m); break;
  }

  ConflictColoringOutcome out;
  out.color.assign(m, kUncolored);
  const auto base = lists.plan().palette_base;
  // stamp[c - base] == v + 1 marks color c as taken by a neighbor of v.
  std::vector<std::uint32_t> stamp(lists.plan().palette_size, 0);
  out.working_entries = order.size() + stamp.size();
  for (vertex_t v : order) {
    for (vertex_t u : gc.csr.neighbors(v))
      if (out.color[u] != kUncolored) stamp[out.color[u] - base] = v + 1;
    for (color_t c : lists.row(gc.member_local[v])) {
      if (stamp[c - base] != v + 1) {
        out.color[v] = c;
        break;
      }
    }
    if (out.color[v] == kUncolored) {
      out.uncolored.push_back(v);
      ++out.empties;
    }
  }
  out.colors_used = detail::count_distinct(out.color);
  return out;
}

inline ConflictColoringOutcome color_conflict_graph(const ConflictGraph& gc, const ColorLists& lists,
                                                    ConflictStrategy strategy, std::uint64_t seed) {
  if (strategy == ConflictStrategy::dynamic) return color_dynamic(gc, lists, seed);
  return color_static(gc, lists, strategy, seed);
}

}  // namespace palcolor
