#pragma once

// Dense-matrix anticommutation check. Test-only: nothing in the library
// includes this header. It never touches the packed encoding, so it serves
// as an independent reference for anticommutes_fast.

#include <complex>
#include <cstddef>
#include <string>
#include <vector>

#include "palcolor/core.hpp"
#include "palcolor/pauli.hpp"

namespace palcolor::oracle {

inline constexpr std::size_t kMaxOracleQubits = 12;

struct DenseMatrix {
  std::size_t dim = 0;
  std::vector<std::complex<double>> data;  // row-major

  std::complex<double>& at(std::size_t r, std::size_t c) { return data[r * dim + c]; }
  const std::complex<double>& at(std::size_t r, std::size_t c) const { return data[r * dim + c]; }
};

inline DenseMatrix single_qubit(char letter) {
  using C = std::complex<double>;
  const C i{0.0, 1.0};
  DenseMatrix m{2, {}};
  switch (letter) {
    case 'X': m.data = {0, 1, 1, 0}; break;
    case 'Y': m.data = {0, -i, i, 0}; break;
    case 'Z': m.data = {1, 0, 0, -1}; break;
    default: m.data = {1, 0, 0, 1}; break;
  }
  return m;
}

inline DenseMatrix kron(const DenseMatrix& a, const DenseMatrix& b) {
  DenseMatrix out{a.dim * b.dim, std::vector<std::complex<double>>(a.dim * b.dim * a.dim * b.dim)};
  for (std::size_t ar = 0; ar < a.dim; ++ar)
    for (std::size_t ac = 0; ac < a.dim; ++ac)
      for (std::size_t br = 0; br < b.dim; ++br)
        for (std::size_t bc = 0; bc < b.dim; ++bc)
          out.at(ar * b.dim + br, ac * b.dim + bc) = a.at(ar, ac) * b.at(br, bc);
  return out;
}

inline DenseMatrix multiply(const DenseMatrix& a, const DenseMatrix& b) {
  DenseMatrix out{a.dim, std::vector<std::complex<double>>(a.dim * a.dim)};
  for (std::size_t r = 0; r < a.dim; ++r)
    for (std::size_t k = 0; k < a.dim; ++k) {
      const auto x = a.at(r, k);
      if (x == 0.0) continue;
      for (std::size_t c = 0; c < a.dim; ++c) out.at(r, c) += x * b.at(k, c);
    }
  return out;
}

/// Kronecker product of the single-qubit matrices, first letter outermost.
inline DenseMatrix pauli_matrix(const PauliString& p) {
  if (p.size() > kMaxOracleQubits) {
    throw Error(Errc::too_large, std::to_string(p.size()) + " qubits exceeds oracle cap of " +
                                     std::to_string(kMaxOracleQubits));
  }
  DenseMatrix m = single_qubit(p[0]);
  for (std::size_t q = 1; q < p.size(); ++q) m = kron(m, single_qubit(p[q]));
  return m;
}

/// True iff A*B + B*A is the zero matrix.
inline bool anticommute(const DenseMatrix& a, const DenseMatrix& b) {
  const DenseMatrix ab = multiply(a, b);
  const DenseMatrix ba = multiply(b, a);
  for (std::size_t k = 0; k < ab.data.size(); ++k) {
    if (std::abs(ab.data[k] + ba.data[k]) > 1e-12) return false;
  }
  return true;
}

inline bool anticommutes_oracle(const PauliString& a, const PauliString& b) {
  if (a.size() != b.size()) {
    throw Error(Errc::length_mismatch, std::to_string(a.size()) + " vs " + std::to_string(b.size()) + " qubits");
  }
  return anticommute(pauli_matrix(a), pauli_matrix(b));
}

}  // namespace palcolor::oracle
