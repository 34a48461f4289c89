#pragma once

// Stored graphs (CSR) and the edge-oracle view the coloring engine runs on.
// A view answers "is (u, v) an edge?" over a set of active vertices without
// caring whether edges come from Pauli parity, a stored CSR, or the
// negation of a stored CSR. Complement graphs are never materialized.

#include <algorithm>
#include <bit>
#include <charconv>
#include <cstdint>
#include <cmath>
#include <cstring>
#include <limits>
#include <istream>
#include <memory>
#include <numeric>
#include <ostream>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "palcolor/core.hpp"
#include "palcolor/pauli.hpp"
#include "palcolor/random.hpp"

namespace palcolor {

using Edge = std::pair<vertex_t, vertex_t>;

/// Undirected simple graph in CSR form. Rows are strictly increasing, there
/// are no self-loops, and every edge is stored in both endpoint rows.
class ExplicitGraph {
 public:
  ExplicitGraph() : offsets_(1, 0) {}

  /// Trusts the caller to supply canonical CSR (see class invariants).
  ExplicitGraph(std::vector<std::uint64_t> offsets, std::vector<vertex_t> neighbors)
      : offsets_(std::move(offsets)), neighbors_(std::move(neighbors)) {}

  struct BuildReport {
    std::size_t self_loops_dropped = 0;
    std::size_t duplicates_merged = 0;
  };

  /// Deduplicates, symmetrizes and drops self-loops. Two passes: degree
  /// count, then placement at exclusive-scan offsets; rows are then sorted
  /// and compacted.
  static ExplicitGraph from_edges(std::size_t n, std::span<const Edge> edges, BuildReport* report = nullptr) {
    BuildReport local;
    std::vector<std::uint64_t> degree(n + 1, 0);
    for (auto [u, v] : edges) {
      if (u >= n || v >= n) {
        throw Error(Errc::bad_index, "edge (" + std::to_string(u) + ", " + std::to_string(v) + ") outside " +
                                         std::to_string(n) + " vertices");
      }
      if (u == v) {
        ++local.self_loops_dropped;
        continue;
      }
      ++degree[u + 1];
      ++degree[v + 1];
    }
    std::partial_sum(degree.begin(), degree.end(), degree.begin());
    std::vector<vertex_t> placed(degree[n]);
    std::vector<std::uint64_t> cursor(degree.begin(), degree.end() - 1);
    for (auto [u, v] : edges) {
      if (u == v) continue;
      placed[cursor[u]++] = v;
      placed[cursor[v]++] = u;
    }
    std::vector<std::uint64_t> offsets(n + 1, 0);
    std::uint64_t out = 0;
    for (std::size_t r = 0; r < n; ++r) {
      auto first = placed.begin() + static_cast<std::ptrdiff_t>(degree[r]);
      auto last = placed.begin() + static_cast<std::ptrdiff_t>(degree[r + 1]);
      std::sort(first, last);
      auto uniq = std::unique(first, last);
      for (auto it = first; it != uniq; ++it) placed[out++] = *it;
      offsets[r + 1] = out;
    }
    local.duplicates_merged = (placed.size() - out) / 2;
    placed.resize(out);
    placed.shrink_to_fit();
    if (report) *report = local;
    return ExplicitGraph(std::move(offsets), std::move(placed));
  }

  std::size_t num_vertices() const noexcept { return offsets_.size() - 1; }
  std::size_t num_edges() const noexcept { return neighbors_.size() / 2; }
  std::size_t degree(vertex_t v) const noexcept { return offsets_[v + 1] - offsets_[v]; }

  std::span<const vertex_t> neighbors(vertex_t v) const noexcept {
    return std::span(neighbors_).subspan(offsets_[v], degree(v));
  }

  const std::vector<std::uint64_t>& offsets() const noexcept { return offsets_; }
  const std::vector<vertex_t>& adjacency() const noexcept { return neighbors_; }

  bool has_edge(vertex_t u, vertex_t v) const noexcept {
    const auto row = neighbors(u);
    return std::binary_search(row.begin(), row.end(), v);
  }

  std::vector<Edge> edges() const {
    std::vector<Edge> out;
    out.reserve(num_edges());
    for (vertex_t u = 0; u < num_vertices(); ++u)
      for (vertex_t v : neighbors(u))
        if (u < v) out.emplace_back(u, v);
    return out;
  }

  friend bool operator==(const ExplicitGraph&, const ExplicitGraph&) = default;

 private:
  std::vector<std::uint64_t> offsets_;
  std::vector<vertex_t> neighbors_;
};

// ---------------------------------------------------------------------------
// Text and binary I/O

enum class GraphFormat { automatic, edge_list, matrix_market };

namespace detail {
std::uint64_t parse_index(std::string_view token, std::size_t lineno);
}  // namespace detail

/// Reads a zero-based `u v` edge list or a MatrixMarket coordinate file
/// (one-based; values, if present, are ignored). In edge lists, a comment
/// line `# vertices: N` fixes the vertex count, otherwise it is the largest
/// index plus one.
ExplicitGraph load_edge_list(std::istream& in, GraphFormat format = GraphFormat::automatic,
                             ExplicitGraph::BuildReport* report = nullptr);

void write_edge_list(std::ostream& out, const ExplicitGraph& g);
void write_matrix_market(std::ostream& out, const ExplicitGraph& g);

/// Binary CSR, all integers little-endian:
///   "PCSR" | u32 version | u64 n | u64 nnz | u64 offsets[n+1] | u32 adjacency[nnz]
void write_csr_binary(std::ostream& out, const ExplicitGraph& g);
ExplicitGraph read_csr_binary(std::istream& in);


// ---------------------------------------------------------------------------
// Edge oracles

/// Complement of the anticommutation graph: an edge joins commuting strings.
struct PauliComplementOracle {
  const PauliSet* set;
  static constexpr bool cheap = true;
  bool operator()(vertex_t u, vertex_t v) const noexcept { return !set->anticommute(u, v); }
};

template <bool Complement>
struct CsrOracle {
  const ExplicitGraph* graph;
  static constexpr bool cheap = false;
  bool operator()(vertex_t u, vertex_t v) const noexcept { return graph->has_edge(u, v) != Complement; }
};

enum class OracleMode { implicit_complement, explicit_graph, explicit_complement };

constexpr std::string_view to_string(OracleMode m) noexcept {
  switch (m) {
    case OracleMode::implicit_complement: return "implicit-complement";
    case OracleMode::explicit_graph: return "explicit";
    case OracleMode::explicit_complement: return "explicit-complement";
  }
  return "?";
}

/// Immutable view of the graph induced on an active vertex set. Vertex ids
/// are always ids of the backing universe; active() is sorted ascending.
class EdgeOracleView {
 public:
  static EdgeOracleView complement_of(std::shared_ptr<const PauliSet> set) {
    EdgeOracleView view;
    view.mode_ = OracleMode::implicit_complement;
    view.universe_ = set->size();
    view.pauli_ = std::move(set);
    view.activate_all();
    return view;
  }

  static EdgeOracleView of(std::shared_ptr<const ExplicitGraph> graph, bool complement = false) {
    EdgeOracleView view;
    view.mode_ = complement ? OracleMode::explicit_complement : OracleMode::explicit_graph;
    view.universe_ = graph->num_vertices();
    view.graph_ = std::move(graph);
    view.activate_all();
    return view;
  }

  OracleMode mode() const noexcept { return mode_; }
  std::size_t universe() const noexcept { return universe_; }
  std::size_t size() const noexcept { return active_.size(); }
  bool empty() const noexcept { return active_.empty(); }
  std::span<const vertex_t> active() const noexcept { return active_; }
  bool contains(vertex_t v) const noexcept { return v < universe_ && mask_[v] != 0; }

  const PauliSet* pauli() const noexcept { return pauli_.get(); }
  const ExplicitGraph* graph() const noexcept { return graph_.get(); }

  /// Checked query on universe ids.
  bool has_edge(vertex_t u, vertex_t v) const {
    if (u == v) throw Error(Errc::same_vertex, "vertex " + std::to_string(u) + " queried against itself");
    if (!contains(u) || !contains(v)) {
      throw Error(Errc::inactive_vertex, "(" + std::to_string(u) + ", " + std::to_string(v) + ") not both active");
    }
    return edge(u, v);
  }

  /// Unchecked query; u != v, both active.
  bool edge(vertex_t u, vertex_t v) const noexcept {
    switch (mode_) {
      case OracleMode::implicit_complement: return PauliComplementOracle{pauli_.get()}(u, v);
      case OracleMode::explicit_graph: return CsrOracle<false>{graph_.get()}(u, v);
      case OracleMode::explicit_complement: break;
    }
    return CsrOracle<true>{graph_.get()}(u, v);
  }

  /// Calls f with a mode-specialized oracle so hot loops avoid the switch.
  template <class F>
  decltype(auto) visit(F&& f) const {
    switch (mode_) {
      case OracleMode::implicit_complement: return f(PauliComplementOracle{pauli_.get()});
      case OracleMode::explicit_graph: return f(CsrOracle<false>{graph_.get()});
      case OracleMode::explicit_complement: break;
    }
    return f(CsrOracle<true>{graph_.get()});
  }

  /// Restriction to `vertices`, which must be unique and currently active.
  EdgeOracleView induce(std::span<const vertex_t> vertices) const {
    EdgeOracleView view;
    view.mode_ = mode_;
    view.universe_ = universe_;
    view.pauli_ = pauli_;
    view.graph_ = graph_;
    view.mask_.assign(universe_, 0);
    view.active_.reserve(vertices.size());
    for (vertex_t v : vertices) {
      if (!contains(v)) throw Error(Errc::not_subset, "vertex " + std::to_string(v) + " is not active");
      if (view.mask_[v]) throw Error(Errc::not_subset, "vertex " + std::to_string(v) + " listed twice");
      view.mask_[v] = 1;
      view.active_.push_back(v);
    }
    std::sort(view.active_.begin(), view.active_.end());
    return view;
  }

 private:
  void activate_all() {
    active_.resize(universe_);
    std::iota(active_.begin(), active_.end(), vertex_t{0});
    mask_.assign(universe_, 1);
  }

  OracleMode mode_ = OracleMode::explicit_graph;
  std::size_t universe_ = 0;
  std::shared_ptr<const PauliSet> pauli_;
  std::shared_ptr<const ExplicitGraph> graph_;
  std::vector<vertex_t> active_;
  std::vector<std::uint8_t> mask_;
};

/// Stores the view's edges as a CSR over local indices (position in
/// view.active()). This is what any full-graph method pays in memory.
inline ExplicitGraph materialize(const EdgeOracleView& view) {
  const auto act = view.active();
  const std::size_t n = act.size();
  std::vector<Edge> edges;
  view.visit([&](const auto& oracle) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (oracle(act[i], act[j])) edges.emplace_back(static_cast<vertex_t>(i), static_cast<vertex_t>(j));
  });
  return ExplicitGraph::from_edges(n, edges);
}

// ---------------------------------------------------------------------------
// Degree statistics

enum class DegreeMode { automatic, exact, sampled };

struct DegreeStats {
  std::size_t max_degree = 0;
  double average_degree = 0.0;
  double edges = 0.0;                   // exact count or estimate
  std::vector<std::size_t> histogram;   // histogram[d] = #vertices of degree d (exact mode only)
  bool sampled = false;
  std::size_t sample_pairs = 0;
  std::uint64_t seed = 0;
};

struct DegreeOptions {
  DegreeMode mode = DegreeMode::automatic;
  std::size_t sample_pairs = 50000;
  std::size_t sample_vertices = 64;  // exact rows used to estimate the max degree when sampling
  std::uint64_t seed = 0;
};

inline DegreeStats degree_stats(const EdgeOracleView& view, const DegreeOptions& opts = {}) {
  const auto act = view.active();
  const std::size_t n = act.size();
  DegreeStats stats;
  stats.seed = opts.seed;
  const bool exact = opts.mode == DegreeMode::exact ||
                     (opts.mode == DegreeMode::automatic && n <= kExactPairLimit);
  if (exact && n > kExactPairLimit) {
    throw Error(Errc::too_large_for_exact, std::to_string(n) + " vertices exceeds " +
                                               std::to_string(kExactPairLimit));
  }
  if (n < 2) {
    stats.histogram.assign(n == 0 ? 0 : 1, n);
    return stats;
  }
  if (exact) {
    std::vector<std::size_t> degree(n, 0);
    view.visit([&](const auto& oracle) {
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
          if (oracle(act[i], act[j])) {
            ++degree[i];
            ++degree[j];
          }
    });
    const std::size_t total = std::accumulate(degree.begin(), degree.end(), std::size_t{0});
    stats.max_degree = *std::max_element(degree.begin(), degree.end());
    stats.average_degree = static_cast<double>(total) / static_cast<double>(n);
    stats.edges = static_cast<double>(total / 2);
    stats.histogram.assign(stats.max_degree + 1, 0);
    for (auto d : degree) ++stats.histogram[d];
    return stats;
  }

  stats.sampled = true;
  stats.sample_pairs = opts.sample_pairs;
  SplitMix64 rng(stream_key(opts.seed, {0x646567ULL}));
  std::size_t hits = 0;
  view.visit([&](const auto& oracle) {
    for (std::size_t s = 0; s < opts.sample_pairs; ++s) {
      const auto i = uniform_below(rng, n);
      auto j = uniform_below(rng, n - 1);
      if (j >= i) ++j;
      if (oracle(act[i], act[j])) ++hits;
    }
    for (std::size_t s = 0; s < std::min(opts.sample_vertices, n); ++s) {
      const auto i = uniform_below(rng, n);
      std::size_t d = 0;
      for (std::size_t j = 0; j < n; ++j)
        if (j != i && oracle(act[i], act[j])) ++d;
      stats.max_degree = std::max(stats.max_degree, d);
    }
  });
  const double density = opts.sample_pairs ? static_cast<double>(hits) / static_cast<double>(opts.sample_pairs) : 0.0;
  stats.average_degree = density * static_cast<double>(n - 1);
  stats.edges = density * static_cast<double>(n) * static_cast<double>(n - 1) / 2.0;
  stats.max_degree = std::max(stats.max_degree, static_cast<std::size_t>(std::ceil(stats.average_degree)));
  return stats;
}

}  // namespace palcolor
