#include "qkmi/gram_ops.hpp"

#include <cmath>
#include <string>

#include "qkmi/errors.hpp"

namespace qkmi {

namespace {

constexpr double kPivotTol = 1e-12;
constexpr double kJitter = 1e-10;

// In-place lower Cholesky. Returns false with the failing column in
// bad_pivot when a pivot does not exceed kPivotTol (NaN pivots fail too).
bool cholesky_inplace(Eigen::MatrixXd& a, int& bad_pivot) {
  const Eigen::Index n = a.rows();
  for (Eigen::Index j = 0; j < n; ++j) {
    const double d = a(j, j) - a.row(j).head(j).squaredNorm();
    if (!(d > kPivotTol)) {
      bad_pivot = static_cast<int>(j);
      return false;
    }
    const double l = std::sqrt(d);
    a(j, j) = l;
    if (j + 1 < n) {
      a.col(j).tail(n - j - 1) -=
          a.block(j + 1, 0, n - j - 1, j) * a.row(j).head(j).transpose();
      a.col(j).tail(n - j - 1) /= l;
    }
  }
  return true;
}

// Factor m, retrying once with a diagonal jitter on pivot failure so a
// PSD-up-to-rounding input does not abort; a persistent failure is loud.
Eigen::MatrixXd cholesky_or_throw(const Eigen::MatrixXd& m, const char* what) {
  int bad = -1;
  Eigen::MatrixXd a = m;
  if (cholesky_inplace(a, bad)) return a;
  a = m + kJitter * Eigen::MatrixXd::Identity(m.rows(), m.cols());
  if (cholesky_inplace(a, bad)) return a;
  throw ConditioningError(std::string(what) +
                              ": non-positive pivot at column " +
                              std::to_string(bad) + " (after jitter retry)",
                          bad);
}

void require_symmetric(const Eigen::MatrixXd& m, const char* what) {
  if (m.rows() != m.cols()) {
    throw ShapeError(std::string(what) + ": matrix is not square");
  }
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  if ((m - m.transpose()).cwiseAbs().maxCoeff() > 1e-10 * scale) {
    throw ParameterError(std::string(what) + ": matrix is not symmetric");
  }
}

}  // namespace

CenteredGram center(const GramMatrix& gram) {
  const Eigen::Index n = gram.n();
  const Eigen::MatrixXd h =
      Eigen::MatrixXd::Identity(n, n) -
      Eigen::MatrixXd::Constant(n, n, 1.0 / static_cast<double>(n));
  Eigen::MatrixXd g = h * gram.values * h;
  g = (0.5 * (g + g.transpose())).eval();
  return CenteredGram{std::move(g)};
}

double logdet_spd(const Eigen::MatrixXd& m) {
  require_symmetric(m, "logdet_spd");
  const Eigen::MatrixXd l = cholesky_or_throw(m, "logdet_spd");
  double acc = 0.0;
  for (Eigen::Index j = 0; j < l.rows(); ++j) acc += std::log(l(j, j));
  return 2.0 * acc;
}

double resolvent_product_trace(const CenteredGram& g1, const CenteredGram& g2,
                               double lambda) {
  if (g1.n() != g2.n()) {
    throw ShapeError("resolvent_product_trace: dimensions differ (" +
                     std::to_string(g1.n()) + " vs " + std::to_string(g2.n()) +
                     ")");
  }
  if (!(lambda > 0.0)) {
    throw ParameterError("resolvent_product_trace: lambda must be positive");
  }
  const Eigen::Index n = g1.n();
  const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(n, n);

  // R = (G + lambda I)^{-1} G via two triangular solves.
  const auto resolvent = [&](const CenteredGram& g) {
    const Eigen::MatrixXd l =
        cholesky_or_throw(g.values + lambda * id, "resolvent_product_trace");
    Eigen::MatrixXd r = l.triangularView<Eigen::Lower>().solve(g.values);
    l.transpose().triangularView<Eigen::Upper>().solveInPlace(r);
    return r;
  };
  const Eigen::MatrixXd r1 = resolvent(g1);
  const Eigen::MatrixXd r2 = resolvent(g2);

  // Pairwise-grouped accumulation: each (i, j)/(j, i) pair contributes a
  // swap-invariant sum, so swapping g1 and g2 reproduces the exact bits.
  double trace = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) trace += r1(i, i) * r2(i, i);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      trace += r1(i, j) * r2(j, i) + r1(j, i) * r2(i, j);
    }
  }
  return trace;
}

}  // namespace qkmi
