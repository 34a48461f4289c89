#pragma once

// Pauli strings, their 3-bit packed encoding, and the parity-based
// anticommutation test.
//
// Encoding: each position holds a 3-bit code, X = 0b110, Y = 0b101,
// Z = 0b011, I = 0b000. Two distinct non-identity letters share exactly one
// set bit and equal letters share two, so popcount(a & b) is odd iff the
// number of anticommuting positions is odd.
//
// Packing: position i lives in word i / 21 at bit offset 3 * (i % 21),
// least-significant bits first. Bit 63 of every word and all bits past the
// last position are zero.

#include <algorithm>
#include <bit>
#include <charconv>
#include <cstddef>
#include <cstdint>
#include <istream>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "palcolor/core.hpp"

namespace palcolor {

inline constexpr std::size_t kBitsPerCode = 3;
inline constexpr std::size_t kCodesPerWord = 21;

constexpr std::size_t words_for_qubits(std::size_t qubits) noexcept {
  return (qubits + kCodesPerWord - 1) / kCodesPerWord;
}

constexpr bool is_pauli_letter(char c) noexcept {
  return c == 'I' || c == 'X' || c == 'Y' || c == 'Z';
}

constexpr std::uint64_t pauli_code(char c) noexcept {
  switch (c) {
    case 'X': return 0b110;
    case 'Y': return 0b101;
    case 'Z': return 0b011;
    default: return 0b000;
  }
}

constexpr char pauli_letter(std::uint64_t code) noexcept {
  switch (code) {
    case 0b110: return 'X';
    case 0b101: return 'Y';
    case 0b011: return 'Z';
    default: return 'I';
  }
}

/// A validated word over {I, X, Y, Z} of length >= 1.
class PauliString {
 public:
  PauliString() = default;

  explicit PauliString(std::string_view letters) : letters_(letters) {
    if (letters_.empty()) throw Error(Errc::empty_input, "empty Pauli string");
    for (std::size_t i = 0; i < letters_.size(); ++i) {
      if (!is_pauli_letter(letters_[i])) {
        throw Error(Errc::bad_symbol, "invalid symbol '" + std::string(1, letters_[i]) + "' at position " +
                                          std::to_string(i) + " of \"" + letters_ + "\"");
      }
    }
  }

  std::size_t size() const noexcept { return letters_.size(); }
  char operator[](std::size_t i) const noexcept { return letters_[i]; }
  const std::string& str() const noexcept { return letters_; }

  friend bool operator==(const PauliString&, const PauliString&) = default;

 private:
  std::string letters_;
};

/// Packs `letters` into `out` (which must hold words_for_qubits(size) words).
inline void encode_into(std::string_view letters, std::span<std::uint64_t> out) noexcept {
  std::fill(out.begin(), out.end(), 0);
  for (std::size_t i = 0; i < letters.size(); ++i) {
    out[i / kCodesPerWord] |= pauli_code(letters[i]) << (kBitsPerCode * (i % kCodesPerWord));
  }
}

struct EncodedPauli {
  std::vector<std::uint64_t> words;
  std::size_t nbits = 0;  // 3 * qubits

  std::size_t qubits() const noexcept { return nbits / kBitsPerCode; }
  friend bool operator==(const EncodedPauli&, const EncodedPauli&) = default;
};

inline EncodedPauli encode(const PauliString& p) {
  EncodedPauli e;
  e.nbits = kBitsPerCode * p.size();
  e.words.resize(words_for_qubits(p.size()));
  encode_into(p.str(), e.words);
  return e;
}

inline PauliString decode(const EncodedPauli& e) {
  std::string letters(e.qubits(), 'I');
  for (std::size_t i = 0; i < letters.size(); ++i) {
    letters[i] = pauli_letter((e.words[i / kCodesPerWord] >> (kBitsPerCode * (i % kCodesPerWord))) & 0b111);
  }
  return PauliString(letters);
}

/// Parity of popcount(a & b) over equal-length packed words.
inline bool odd_overlap(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b) noexcept {
  std::uint64_t acc = 0;
  for (std::size_t w = 0; w < a.size(); ++w) acc ^= a[w] & b[w];
  // XOR-folding preserves the parity of the total set-bit count.
  return (std::popcount(acc) & 1) != 0;
}

inline bool anticommutes_fast(const EncodedPauli& a, const EncodedPauli& b) {
  if (a.nbits != b.nbits) {
    throw Error(Errc::length_mismatch, std::to_string(a.qubits()) + " vs " + std::to_string(b.qubits()) + " qubits");
  }
  return odd_overlap(a.words, b.words);
}

/// Per-character reference loop: counts positions holding two distinct
/// non-identity letters. Kept as the benchmark baseline for the packed test.
inline bool anticommutes_naive(std::string_view a, std::string_view b) noexcept {
  unsigned mismatches = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const char x = a[i];
    const char y = b[i];
    if (x != 'I' && y != 'I' && x != y) ++mismatches;
  }
  return (mismatches & 1) != 0;
}

/// The vertex universe: n strings of common length, with packed encodings
/// stored contiguously (stride = words_per_string()).
class PauliSet {
 public:
  PauliSet() = default;

  explicit PauliSet(std::vector<PauliString> strings) : strings_(std::move(strings)) {
    if (strings_.empty()) throw Error(Errc::empty_input, "no Pauli strings");
    qubits_ = strings_.front().size();
    stride_ = words_for_qubits(qubits_);
    words_.assign(strings_.size() * stride_, 0);
    for (std::size_t i = 0; i < strings_.size(); ++i) {
      if (strings_[i].size() != qubits_) {
        throw Error(Errc::mixed_length, "string " + std::to_string(i) + " has length " +
                                            std::to_string(strings_[i].size()) + ", expected " +
                                            std::to_string(qubits_));
      }
      encode_into(strings_[i].str(), std::span(words_).subspan(i * stride_, stride_));
    }
  }

  std::size_t size() const noexcept { return strings_.size(); }
  std::size_t qubits() const noexcept { return qubits_; }
  std::size_t words_per_string() const noexcept { return stride_; }

  const PauliString& string(std::size_t i) const noexcept { return strings_[i]; }
  const std::vector<PauliString>& strings() const noexcept { return strings_; }

  std::span<const std::uint64_t> words(std::size_t i) const noexcept {
    return std::span(words_).subspan(i * stride_, stride_);
  }

  EncodedPauli encoded(std::size_t i) const {
    auto w = words(i);
    return EncodedPauli{{w.begin(), w.end()}, kBitsPerCode * qubits_};
  }

  bool anticommute(std::size_t i, std::size_t j) const noexcept { return odd_overlap(words(i), words(j)); }

 private:
  std::vector<PauliString> strings_;
  std::vector<std::uint64_t> words_;
  std::size_t qubits_ = 0;
  std::size_t stride_ = 0;
};

/// Edge of the complement graph: the two strings commute. Self-pairs are
/// rejected.
inline bool complement_edge(const PauliSet& set, std::size_t i, std::size_t j) {
  if (i == j) throw Error(Errc::same_vertex, "vertex " + std::to_string(i) + " queried against itself");
  return !set.anticommute(i, j);
}

namespace detail {

inline std::string_view trim(std::string_view s) noexcept {
  const auto* ws = " \t\r\n";
  const auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  return s.substr(b, s.find_last_not_of(ws) - b + 1);
}

inline std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
    std::size_t j = i;
    while (j < s.size() && s[j] != ' ' && s[j] != '\t') ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

inline bool parses_as_real(std::string_view token) noexcept {
  if (!token.empty() && token.front() == '+') token.remove_prefix(1);
  double v = 0;
  const auto* end = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(token.data(), end, v);
  return ec == std::errc() && ptr == end;
}

}  // namespace detail

/// Reads one Pauli string per line. Blank lines and lines starting with '#'
/// are skipped; an optional real coefficient before the string is discarded.
inline PauliSet parse_pauli_text(std::istream& in) {
  std::vector<PauliString> strings;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto body = detail::trim(line);
    if (body.empty() || body.front() == '#') continue;
    const auto tokens = detail::split_ws(body);
    if (tokens.size() > 2 || (tokens.size() == 2 && !detail::parses_as_real(tokens[0]))) {
      throw Error(Errc::bad_symbol, "line " + std::to_string(lineno) + ": expected [coefficient] PAULI, got \"" +
                                        std::string(body) + "\"");
    }
    try {
      strings.emplace_back(tokens.back());
    } catch (const Error& e) {
      throw Error(e.code(), "line " + std::to_string(lineno) + ": " + e.what());
    }
    if (strings.back().size() != strings.front().size()) {
      throw Error(Errc::mixed_length, "line " + std::to_string(lineno) + ": length " +
                                          std::to_string(strings.back().size()) + ", expected " +
                                          std::to_string(strings.front().size()));
    }
  }
  if (strings.empty()) throw Error(Errc::empty_input, "no Pauli strings in input");
  return PauliSet(std::move(strings));
}

inline PauliSet parse_pauli_text(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_pauli_text(in);
}

}  // namespace palcolor
