#pragma once

#include <Eigen/Dense>

#include "qkmi/kernels.hpp"

namespace qkmi {

// H K H with H = I - 11^T/n: every row and column sums to zero.
struct CenteredGram {
  Eigen::MatrixXd values;
  Eigen::Index n() const { return values.rows(); }
};

CenteredGram center(const GramMatrix& gram);

// log det of a symmetric positive definite matrix via Cholesky.
// Pivots are required to exceed 1e-12; on the first failure a diagonal
// jitter of 1e-10 is added and the factorization retried once, after
// which ConditioningError (carrying the pivot index) is thrown. Never
// returns NaN.
double logdet_spd(const Eigen::MatrixXd& m);

// Tr(R1 R2) with R_l = G_l (G_l + lambda I)^{-1}, computed through
// symmetric solves (no explicit inverse). Accumulation is ordered so the
// result is bit-identical under argument swap. Lies in [0, n] up to
// rounding for PSD inputs.
double resolvent_product_trace(const CenteredGram& g1, const CenteredGram& g2,
                               double lambda);

}  // namespace qkmi
