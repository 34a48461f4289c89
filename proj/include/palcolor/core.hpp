#pragma once

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <string_view>

namespace palcolor {

using vertex_t = std::uint32_t;
using color_t = std::uint32_t;

inline constexpr color_t kUncolored = std::numeric_limits<color_t>::max();

enum class Errc {
  mixed_length,
  bad_symbol,
  empty_input,
  length_mismatch,
  too_large,
  same_vertex,
  bad_index,
  parse_error,
  inactive_vertex,
  not_subset,
  too_large_for_exact,
  iteration_limit_exceeded,
  out_of_memory_budget,
  too_large_for_baseline,
  empty_records,
  untrained_model,
  too_large_for_exhaustive,
  bad_params,
};

constexpr std::string_view to_string(Errc code) noexcept {
  switch (code) {
    case Errc::mixed_length: return "MixedLength";
    case Errc::bad_symbol: return "BadSymbol";
    case Errc::empty_input: return "Empty";
    case Errc::length_mismatch: return "LengthMismatch";
    case Errc::too_large: return "TooLarge";
    case Errc::same_vertex: return "SameVertex";
    case Errc::bad_index: return "BadIndex";
    case Errc::parse_error: return "ParseError";
    case Errc::inactive_vertex: return "InactiveVertex";
    case Errc::not_subset: return "NotSubset";
    case Errc::too_large_for_exact: return "TooLargeForExact";
    case Errc::iteration_limit_exceeded: return "IterationLimitExceeded";
    case Errc::out_of_memory_budget: return "OutOfMemoryBudget";
    case Errc::too_large_for_baseline: return "TooLargeForBaseline";
    case Errc::empty_records: return "EmptyRecords";
    case Errc::untrained_model: return "UntrainedModel";
    case Errc::too_large_for_exhaustive: return "TooLargeForExhaustive";
    case Errc::bad_params: return "BadParams";
  }
  return "Unknown";
}

/// Every failure in the library is reported as an Error carrying an Errc.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

// Above this many vertices, all-pairs enumeration (exact degree stats,
// baseline greedy, exhaustive validation) is refused.
inline constexpr std::size_t kExactPairLimit = 20000;

}  // namespace palcolor
