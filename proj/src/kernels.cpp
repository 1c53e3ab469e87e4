#include "qkmi/kernels.hpp"

#include <algorithm>
#include <cmath>

#include "qkmi/errors.hpp"

namespace qkmi {

double activation_apply(Activation a, double x) {
  switch (a) {
    case Activation::Identity:
      return x;
    case Activation::TanhShrink:
      return x - std::tanh(x);
  }
  throw ParameterError("unknown activation");
}

namespace {

double gaussian_eval(const GaussianKernel& k, double x, double y) {
  if (!(k.sigma > 0.0)) {
    throw ParameterError("gaussian kernel width must be positive");
  }
  const double d = x - y;
  return std::exp(-d * d / (2.0 * k.sigma * k.sigma));
}

double encoding_angle(const QuantumKernel& k, double x) {
  return k.angle_scale * activation_apply(k.activation, x);
}

GramMatrix gram_impl(const KernelSpec& spec, std::span<const double> data,
                     bool parallel) {
  const Eigen::Index n = static_cast<Eigen::Index>(data.size());
  if (n < 2) throw ParameterError("gram needs at least 2 data points");

  GramMatrix k;
  k.values.resize(n, n);

  if (const auto* g = std::get_if<GaussianKernel>(&spec)) {
    if (!(g->sigma > 0.0)) {
      throw ParameterError("gaussian kernel width must be positive");
    }
    const double inv = 1.0 / (2.0 * g->sigma * g->sigma);
#pragma omp parallel for schedule(dynamic) if (parallel)
    for (Eigen::Index i = 0; i < n; ++i) {
      for (Eigen::Index j = i; j < n; ++j) {
        const double d = data[i] - data[j];
        const double v = std::clamp(std::exp(-d * d * inv), 0.0, 1.0);
        k.values(i, j) = v;
        k.values(j, i) = v;
      }
    }
    return k;
  }

  const auto& q = std::get<QuantumKernel>(spec);
  // Encode each point once, then fill the upper triangle pairwise.
  std::vector<StateVector> states(static_cast<std::size_t>(n));
#pragma omp parallel for schedule(dynamic) if (parallel)
  for (Eigen::Index i = 0; i < n; ++i) {
    states[i] = encode_state(q.circuit, encoding_angle(q, data[i]));
  }
#pragma omp parallel for schedule(dynamic) if (parallel)
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i; j < n; ++j) {
      const double v = std::clamp(fidelity(states[i], states[j]), 0.0, 1.0);
      k.values(i, j) = v;
      k.values(j, i) = v;
    }
  }
  return k;
}

}  // namespace

double kernel_eval(const KernelSpec& spec, double x, double y) {
  if (const auto* g = std::get_if<GaussianKernel>(&spec)) {
    return gaussian_eval(*g, x, y);
  }
  const auto& q = std::get<QuantumKernel>(spec);
  const double f = fidelity(encode_state(q.circuit, encoding_angle(q, x)),
                            encode_state(q.circuit, encoding_angle(q, y)));
  return std::clamp(f, 0.0, 1.0);
}

GramMatrix gram(const KernelSpec& spec, std::span<const double> data) {
  return gram_impl(spec, data, true);
}

GramMatrix gram_reference(const KernelSpec& spec,
                          std::span<const double> data) {
  return gram_impl(spec, data, false);
}

std::string to_string(Activation a) {
  return a == Activation::Identity ? "none" : "tanh-shrink";
}

Activation parse_activation(const std::string& name) {
  if (name == "none" || name == "identity") return Activation::Identity;
  if (name == "tanh-shrink" || name == "tanhshrink") return Activation::TanhShrink;
  throw ParameterError("unknown activation: " + name);
}

std::string kernel_kind_name(const KernelSpec& spec) {
  return std::holds_alternative<GaussianKernel>(spec) ? "gaussian" : "quantum";
}

}  // namespace qkmi
