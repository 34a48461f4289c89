#pragma once

// Synthetic instances: uniformly random Pauli strings and G(n, p) graphs.

#include <cstdint>
#include <string>
#include <vector>

#include "palcolor/core.hpp"
#include "palcolor/graph.hpp"
#include "palcolor/pauli.hpp"
#include "palcolor/random.hpp"

namespace palcolor {

/// n strings drawn uniformly from {I,X,Y,Z}^qubits. With exclude_identity
/// the all-I string is redrawn.
inline std::vector<PauliString> random_pauli_strings(std::size_t n, std::size_t qubits, std::uint64_t seed,
                                                     bool exclude_identity = true) {
  if (n == 0 || qubits == 0) throw Error(Errc::bad_params, "random-pauli needs n >= 1 and qubits >= 1");
  static constexpr char kLetters[4] = {'I', 'X', 'Y', 'Z'};
  SplitMix64 rng(stream_key(seed, {0x7061756cULL}));
  std::vector<PauliString> out;
  out.reserve(n);
  std::string s(qubits, 'I');
  while (out.size() < n) {
    for (auto& c : s) c = kLetters[uniform_below(rng, 4)];
    if (exclude_identity && s.find_first_not_of('I') == std::string::npos) continue;
    out.emplace_back(s);
  }
  return out;
}

inline PauliSet random_pauli_set(std::size_t n, std::size_t qubits, std::uint64_t seed, bool exclude_identity = true) {
  return PauliSet(random_pauli_strings(n, qubits, seed, exclude_identity));
}

/// Erdos-Renyi G(n, p): each of the n(n-1)/2 pairs independently.
inline ExplicitGraph gnp_graph(std::size_t n, double p, std::uint64_t seed) {
  if (n == 0) throw Error(Errc::bad_params, "gnp needs n >= 1");
  if (!(p >= 0.0 && p <= 1.0)) throw Error(Errc::bad_params, "gnp needs p in [0, 1]");
  SplitMix64 rng(stream_key(seed, {0x676e70ULL}));
  std::vector<Edge> edges;
  for (vertex_t u = 0; u < n; ++u)
    for (vertex_t v = u + 1; v < n; ++v)
      if (uniform_unit(rng) < p) edges.emplace_back(u, v);
  return ExplicitGraph::from_edges(n, edges);
}

}  // namespace palcolor
