#include "qkmi/estimators.hpp"

#include <cmath>
#include <string>

#include "qkmi/errors.hpp"

namespace qkmi {

double SMIConfig::epsilon_for(Eigen::Index n) const {
  if (const auto* c = std::get_if<ConstantEpsilon>(&policy)) {
    return c->value;
  }
  const auto& d = std::get<DecayEpsilon>(policy);
  return d.scale * std::pow(static_cast<double>(n), -0.25);
}

namespace {

void require_pair(const GramMatrix& k1, const GramMatrix& k2,
                  const char* what) {
  if (k1.n() != k2.n()) {
    throw ShapeError(std::string(what) + ": Gram dimensions differ (" +
                     std::to_string(k1.n()) + " vs " + std::to_string(k2.n()) +
                     ")");
  }
  if (k1.n() < 2) {
    throw ParameterError(std::string(what) + ": needs at least 2 samples");
  }
}

}  // namespace

double estimate_mi(const GramMatrix& k1, const GramMatrix& k2,
                   const MIConfig& cfg) {
  require_pair(k1, k2, "estimate_mi");
  if (!(cfg.kappa > 0.0)) {
    throw ParameterError("estimate_mi: kappa must be positive");
  }
  const Eigen::Index n = k1.n();
  const double shift = static_cast<double>(n) * cfg.kappa / 2.0;
  const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(n, n);

  const Eigen::MatrixXd g1 = center(k1).values;
  const Eigen::MatrixXd g2 = center(k2).values;
  const Eigen::MatrixXd m1 = g1 + shift * id;
  const Eigen::MatrixXd m2 = g2 + shift * id;

  // Diagonal blocks are squares of symmetric matrices; symmetrize away
  // the rounding skew so the block matrix is exactly symmetric. The
  // coupling block is computed once and mirrored as its transpose.
  const Eigen::MatrixXd sq1 = m1 * m1;
  const Eigen::MatrixXd sq2 = m2 * m2;
  const Eigen::MatrixXd d1 = 0.5 * (sq1 + sq1.transpose());
  const Eigen::MatrixXd d2 = 0.5 * (sq2 + sq2.transpose());
  const Eigen::MatrixXd coupling = g1 * g2;

  Eigen::MatrixXd block(2 * n, 2 * n);
  block.topLeftCorner(n, n) = d1;
  block.topRightCorner(n, n) = coupling;
  block.bottomLeftCorner(n, n) = coupling.transpose();
  block.bottomRightCorner(n, n) = d2;

  // -1/2 [logdet(block) - logdet(blockdiag)] with
  // logdet(blockdiag) = 2 (logdet m1 + logdet m2).
  return -0.5 * logdet_spd(block) + logdet_spd(m1) + logdet_spd(m2);
}

double estimate_smi(const GramMatrix& k1, const GramMatrix& k2,
                    const SMIConfig& cfg) {
  require_pair(k1, k2, "estimate_smi");
  const Eigen::Index n = k1.n();
  const double eps = cfg.epsilon_for(n);
  if (!(eps > 0.0)) {
    throw ParameterError("estimate_smi: epsilon must be positive");
  }
  return resolvent_product_trace(center(k1), center(k2),
                                 static_cast<double>(n) * eps);
}

double estimate(const GramMatrix& k1, const GramMatrix& k2,
                const EstimatorConfig& cfg) {
  if (const auto* mi = std::get_if<MIConfig>(&cfg)) {
    return estimate_mi(k1, k2, *mi);
  }
  return estimate_smi(k1, k2, std::get<SMIConfig>(cfg));
}

std::string criterion_name(const EstimatorConfig& cfg) {
  return std::holds_alternative<MIConfig>(cfg) ? "mi" : "smi";
}

}  // namespace qkmi
