#pragma once

#include <complex>
#include <vector>

namespace qkmi {

// Data-encoding circuit geometry: n qubits, D diagonal layers.
// Layout per layer: U1(angle) on every qubit, then controlled-U1(angle)
// on each linear neighbor pair (qubit j controls j+1), sandwiched between
// Hadamard walls:
//   U(angle) = H^n . V_D . H^n . ... . V_1 . H^n
struct CircuitConfig {
  int n_qubits = 4;
  int depth = 2;
};

// Pure state of n_qubits qubits; amplitudes[b] indexes the basis state
// whose bit j is the state of qubit j.
struct StateVector {
  std::vector<std::complex<double>> amplitudes;
  int n_qubits = 0;
};

// U(angle)|0...0>. Unit norm within 1e-12 for any finite angle.
// Throws CapacityError when n_qubits is outside [1, 20].
StateVector encode_state(const CircuitConfig& config, double angle);

// |<b|a>|^2, clamped to [0, 1] against rounding.
double fidelity(const StateVector& a, const StateVector& b);

}  // namespace qkmi
