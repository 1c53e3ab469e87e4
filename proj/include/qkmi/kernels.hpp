#pragma once

#include <Eigen/Dense>
#include <span>
#include <string>
#include <variant>

#include "qkmi/circuit.hpp"

namespace qkmi {

enum class Activation { Identity, TanhShrink };

// Identity: x. TanhShrink: x - tanh(x) (odd, zero at the origin, flat
// for |x| < 1, asymptotically x -+ 1).
double activation_apply(Activation a, double x);

struct GaussianKernel {
  double sigma = 1.0;
};

// Fidelity kernel |<psi(y)|psi(x)>|^2 with psi(z) encoded at angle
// angle_scale * activation(z). The default angle_scale spreads unit-scale
// data across several phase periods, which is what gives the fidelity
// kernel its resolution on fine structure (see bench/report defaults).
struct QuantumKernel {
  CircuitConfig circuit{};
  Activation activation = Activation::TanhShrink;
  double angle_scale = 18.0;
};

using KernelSpec = std::variant<GaussianKernel, QuantumKernel>;

// Pairwise kernel value in [0, 1]; k(x, x) = 1 for both families.
double kernel_eval(const KernelSpec& spec, double x, double y);

// Symmetric PSD matrix of pairwise kernel values, unit diagonal.
struct GramMatrix {
  Eigen::MatrixXd values;
  Eigen::Index n() const { return values.rows(); }
};

// Gram matrix over a scalar dataset. The quantum path encodes each point
// once (N statevectors) and evaluates N(N+1)/2 pairwise fidelities; every
// entry is clamped to [0, 1] before assembly. Entries are computed
// independently, so the OpenMP version below is bit-identical to the
// serial reference at any thread count.
GramMatrix gram(const KernelSpec& spec, std::span<const double> data);

// Serial reference implementation, kept as the oracle for the parallel
// path and for benchmarking.
GramMatrix gram_reference(const KernelSpec& spec, std::span<const double> data);

std::string to_string(Activation a);
Activation parse_activation(const std::string& name);
std::string kernel_kind_name(const KernelSpec& spec);

}  // namespace qkmi
