#pragma once

#include <string>
#include <variant>

#include "qkmi/gram_ops.hpp"
#include "qkmi/kernels.hpp"

namespace qkmi {

// Regularizer for the log-det mutual information estimator. The default
// is small on purpose: heavier regularization washes out the score
// ordering the independence test depends on (see tests/acceptance.cpp).
struct MIConfig {
  double kappa = 2e-6;
};

struct ConstantEpsilon {
  double value = 0.01;
};

// epsilon_n = scale * n^{-1/4}; satisfies eps_n -> 0 and eps_n^3 n -> inf.
struct DecayEpsilon {
  double scale = 1.0;
};

struct SMIConfig {
  std::variant<ConstantEpsilon, DecayEpsilon> policy = ConstantEpsilon{};
  double epsilon_for(Eigen::Index n) const;
};

using EstimatorConfig = std::variant<MIConfig, SMIConfig>;

// Kernel generalized-variance estimate of mutual information. Both Grams
// are centered first (G_l = H K_l H); the value is
//   -1/2 [log det KK - log det DD]
// where KK has diagonal blocks (G_l + (n kappa/2) I)^2 and off-diagonal
// blocks G1 G2 / G2 G1, and DD is its block-diagonal part. Evaluated as
// the log-det of the assembled 2n x 2n matrix minus
// 2 * sum_l log det(G_l + (n kappa/2) I).
// Nonnegative up to rounding; symmetric in its arguments.
double estimate_mi(const GramMatrix& k1, const GramMatrix& k2,
                   const MIConfig& cfg);

// Centers both Grams and returns Tr(R1 R2) with lambda = n * epsilon_n.
double estimate_smi(const GramMatrix& k1, const GramMatrix& k2,
                    const SMIConfig& cfg);

// Dispatch on the configured criterion.
double estimate(const GramMatrix& k1, const GramMatrix& k2,
                const EstimatorConfig& cfg);

std::string criterion_name(const EstimatorConfig& cfg);  // "mi" | "smi"

}  // namespace qkmi
