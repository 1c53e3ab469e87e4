#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "doctest.h"
#include "oracles.hpp"
#include "qkmi/datagen.hpp"
#include "qkmi/errors.hpp"
#include "qkmi/estimators.hpp"
#include "qkmi/rng.hpp"

using namespace qkmi;

namespace {

GramMatrix random_gram(Rng& rng, Eigen::Index n, bool quantum = false) {
  std::vector<double> data(static_cast<std::size_t>(n));
  for (auto& x : data) x = (rng.uniform01() - 0.5) * 8.0;
  if (quantum) {
    return gram(QuantumKernel{{3, 2}, Activation::TanhShrink,
                              1.0 + 10.0 * rng.uniform01()},
                data);
  }
  return gram(GaussianKernel{0.5 + rng.uniform01()}, data);
}

GramMatrix identity_gram(Eigen::Index n) {
  return GramMatrix{Eigen::MatrixXd::Identity(n, n)};
}

GramMatrix ones_gram(Eigen::Index n) {
  return GramMatrix{Eigen::MatrixXd::Constant(n, n, 1.0)};
}

// The estimator definition evaluated through cofactor determinants: center,
// build the 2n x 2n block matrix, take the explicit determinant ratio.
double mi_det_oracle(const GramMatrix& k1, const GramMatrix& k2, double kappa) {
  const Eigen::Index n = k1.n();
  const double c = static_cast<double>(n) * kappa / 2.0;
  const Eigen::MatrixXd g1 = oracles::center_fourterm(k1.values);
  const Eigen::MatrixXd g2 = oracles::center_fourterm(k2.values);
  const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(n, n);
  const Eigen::MatrixXd m1 = g1 + c * id;
  const Eigen::MatrixXd m2 = g2 + c * id;
  Eigen::MatrixXd kk(2 * n, 2 * n), dd(2 * n, 2 * n);
  kk.setZero();
  dd.setZero();
  kk.topLeftCorner(n, n) = m1 * m1;
  kk.bottomRightCorner(n, n) = m2 * m2;
  kk.topRightCorner(n, n) = g1 * g2;
  kk.bottomLeftCorner(n, n) = g2 * g1;
  dd.topLeftCorner(n, n) = m1 * m1;
  dd.bottomRightCorner(n, n) = m2 * m2;
  return -0.5 * std::log(oracles::det_cofactor(kk) / oracles::det_cofactor(dd));
}

}  // namespace

TEST_CASE("mi: zero coupling gives zero") {
  // A constant-data Gram centers to the zero matrix, so the off-diagonal
  // blocks of the block matrix vanish and the determinant ratio is 1.
  Rng rng(21);
  const auto k = random_gram(rng, 6);
  CHECK(std::abs(estimate_mi(k, ones_gram(6), MIConfig{0.02})) < 1e-10);
  CHECK(std::abs(estimate_mi(ones_gram(6), k, MIConfig{0.02})) < 1e-10);
}

TEST_CASE("mi: identity Grams at n=2 match the determinant oracle") {
  const auto k = identity_gram(2);
  const MIConfig cfg{0.02};
  const double expected = mi_det_oracle(k, k, cfg.kappa);
  CHECK(estimate_mi(k, k, cfg) == doctest::Approx(expected).epsilon(1e-9));
  // frozen value from the oracle: centered identity has eigenvalues {0, 1};
  // the coupled 1-direction contributes -1/2 log(1 - 1/1.02^4).
  CHECK(expected == doctest::Approx(1.28749507).epsilon(1e-7));
}

TEST_CASE("mi matches determinant oracle on random small pairs") {
  Rng rng(22);
  for (int rep = 0; rep < 15; ++rep) {
    const Eigen::Index n = 2 + static_cast<Eigen::Index>(rng.next_u64() % 2);
    const auto k1 = random_gram(rng, n);
    const auto k2 = random_gram(rng, n);
    const double kappa = 0.01 + 0.2 * rng.uniform01();
    REQUIRE(estimate_mi(k1, k2, MIConfig{kappa}) ==
            doctest::Approx(mi_det_oracle(k1, k2, kappa)).epsilon(1e-9));
  }
}

TEST_CASE("nonnegativity and swap symmetry on 500 random pairs") {
  Rng rng(23);
  for (int rep = 0; rep < 500; ++rep) {
    const Eigen::Index n = 2 + static_cast<Eigen::Index>(rng.next_u64() % 11);
    const bool quantum = rep % 3 == 0;
    const auto k1 = random_gram(rng, n, quantum);
    const auto k2 = random_gram(rng, n, quantum);

    const MIConfig mi{0.02};
    const double ab = estimate_mi(k1, k2, mi);
    const double ba = estimate_mi(k2, k1, mi);
    REQUIRE(ab >= -1e-8);
    REQUIRE(std::abs(ab - ba) <= 1e-10 * std::max(1.0, std::abs(ab)));

    const SMIConfig smi{};
    const double sab = estimate_smi(k1, k2, smi);
    const double sba = estimate_smi(k2, k1, smi);
    REQUIRE(sab >= -1e-8);
    REQUIRE(sab == sba);
  }
}

TEST_CASE("smi: constant data gives zero, spectral oracle agrees") {
  Rng rng(24);
  const auto k = random_gram(rng, 5);
  CHECK(std::abs(estimate_smi(k, ones_gram(5), SMIConfig{})) < 1e-10);

  const std::vector<double> data{0.0, 1.0, 2.0};
  const auto g = gram(GaussianKernel{1.0}, data);
  const SMIConfig cfg{ConstantEpsilon{0.01}};
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(
      oracles::center_fourterm(g.values));
  double expected = 0;
  for (const double gi : es.eigenvalues()) {
    const double r = gi / (gi + 3.0 * 0.01);
    expected += r * r;
  }
  CHECK(estimate_smi(g, g, cfg) == doctest::Approx(expected).epsilon(1e-9));
}

TEST_CASE("epsilon policies") {
  const SMIConfig constant{ConstantEpsilon{0.05}};
  CHECK(constant.epsilon_for(10) == 0.05);
  CHECK(constant.epsilon_for(1000) == 0.05);

  const SMIConfig decay{DecayEpsilon{2.0}};
  CHECK(decay.epsilon_for(16) == doctest::Approx(1.0));
  CHECK(decay.epsilon_for(256) == doctest::Approx(0.5));
  // eps_n -> 0 while eps_n^3 * n -> infinity
  CHECK(decay.epsilon_for(1 << 20) < 0.07);
  const double e = decay.epsilon_for(1 << 20);
  CHECK(e * e * e * (1 << 20) > 1e3);
}

TEST_CASE("kappa limit: heavy regularization drives the estimate to zero") {
  Rng rng(25);
  const auto k1 = random_gram(rng, 10);
  const auto k2 = random_gram(rng, 10);
  double prev = estimate_mi(k1, k2, MIConfig{0.1});
  for (const double kappa : {1.0, 10.0, 100.0, 1000.0}) {
    const double cur = estimate_mi(k1, k2, MIConfig{kappa});
    CHECK(cur <= prev + 1e-12);
    prev = cur;
  }
  CHECK(prev < 1e-3);
}

TEST_CASE("dependent data scores above independent data (statistical)") {
  int dependent_wins = 0;
  for (int t = 0; t < 100; ++t) {
    const auto s = generate_scenario({DistributionFamily::Gaussian, 1.0},
                                     {ModelForm::Linear, 1.0}, 50,
                                     1000 + static_cast<std::uint64_t>(t));
    const auto k1 = gram(GaussianKernel{1.0}, s.x1);
    const auto k3 = gram(GaussianKernel{1.0}, s.x3);
    const MIConfig cfg{};
    // x2 = x1 exactly: perfectly dependent pair vs independent pair
    const double dependent = estimate_mi(k1, k1, cfg);
    const double independent = estimate_mi(k1, k3, cfg);
    dependent_wins += dependent > independent;
  }
  CHECK(dependent_wins >= 95);
}

TEST_CASE("estimator dispatch and errors") {
  Rng rng(26);
  const auto k1 = random_gram(rng, 4);
  const auto k2 = random_gram(rng, 4);
  CHECK(estimate(k1, k2, MIConfig{0.02}) ==
        estimate_mi(k1, k2, MIConfig{0.02}));
  CHECK(estimate(k1, k2, SMIConfig{}) == estimate_smi(k1, k2, SMIConfig{}));
  CHECK(criterion_name(MIConfig{}) == "mi");
  CHECK(criterion_name(SMIConfig{}) == "smi");

  const auto k5 = random_gram(rng, 5);
  CHECK_THROWS_AS(estimate_mi(k1, k5, MIConfig{}), ShapeError);
  CHECK_THROWS_AS(estimate_smi(k1, k5, SMIConfig{}), ShapeError);
  CHECK_THROWS_AS(estimate_mi(k1, k2, MIConfig{0.0}), ParameterError);
  CHECK_THROWS_AS(estimate_smi(k1, k2, SMIConfig{ConstantEpsilon{0.0}}),
                  ParameterError);
}
