#include "qkmi/circuit.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "qkmi/errors.hpp"

namespace qkmi {

namespace {

constexpr int kMaxQubits = 20;  // 2^20 amplitudes = 16 MiB per state

void hadamard_all(std::vector<std::complex<double>>& amp, int n_qubits) {
  const double inv_sqrt2 = 0.70710678118654752440;
  const std::size_t size = amp.size();
  for (int q = 0; q < n_qubits; ++q) {
    const std::size_t bit = std::size_t{1} << q;
    for (std::size_t i = 0; i < size; ++i) {
      if ((i & bit) == 0) {
        const auto a = amp[i];
        const auto b = amp[i | bit];
        amp[i] = (a + b) * inv_sqrt2;
        amp[i | bit] = (a - b) * inv_sqrt2;
      }
    }
  }
}

// Phase weight of a basis state under one diagonal layer: one unit per
// set bit (U1 on each qubit) plus one per adjacent set bit-pair
// (controlled-U1 on each linear neighbor pair).
int phase_weight(std::size_t basis) {
  const int singles = std::popcount(basis);
  const int pairs = std::popcount(basis & (basis >> 1));
  return singles + pairs;
}

}  // namespace

StateVector encode_state(const CircuitConfig& config, double angle) {
  if (config.n_qubits < 1 || config.n_qubits > kMaxQubits) {
    throw CapacityError("n_qubits must be in [1, " +
                        std::to_string(kMaxQubits) + "], got " +
                        std::to_string(config.n_qubits));
  }
  if (config.depth < 1) {
    throw ParameterError("circuit depth must be at least 1");
  }
  if (!std::isfinite(angle)) {
    throw ParameterError("encoding angle must be finite");
  }

  const int n = config.n_qubits;
  const std::size_t size = std::size_t{1} << n;

  // All gates in a layer are diagonal and share the angle, so a layer is
  // one phase per basis state: exp(i * angle * weight(b)). Weights are
  // integers in [0, 2n-1]; precompute the phase table once.
  std::vector<int> weights(size);
  for (std::size_t b = 0; b < size; ++b) weights[b] = phase_weight(b);
  std::vector<std::complex<double>> phase(2 * n);
  for (int w = 0; w < 2 * n; ++w) {
    phase[w] = std::polar(1.0, angle * w);
  }

  StateVector state;
  state.n_qubits = n;
  state.amplitudes.assign(size, {0.0, 0.0});
  state.amplitudes[0] = 1.0;

  hadamard_all(state.amplitudes, n);
  for (int layer = 0; layer < config.depth; ++layer) {
    for (std::size_t b = 0; b < size; ++b) {
      state.amplitudes[b] *= phase[weights[b]];
    }
    hadamard_all(state.amplitudes, n);
  }
  return state;
}

double fidelity(const StateVector& a, const StateVector& b) {
  if (a.amplitudes.size() != b.amplitudes.size()) {
    throw ShapeError("fidelity: state dimensions differ (" +
                     std::to_string(a.amplitudes.size()) + " vs " +
                     std::to_string(b.amplitudes.size()) + ")");
  }
  std::complex<double> inner{0.0, 0.0};
  for (std::size_t i = 0; i < a.amplitudes.size(); ++i) {
    inner += std::conj(b.amplitudes[i]) * a.amplitudes[i];
  }
  return std::clamp(std::norm(inner), 0.0, 1.0);
}

}  // namespace qkmi
