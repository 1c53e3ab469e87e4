#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <vector>

#include "doctest.h"
#include "qkmi/errors.hpp"
#include "qkmi/kernels.hpp"
#include "qkmi/rng.hpp"

using namespace qkmi;

namespace {

std::vector<double> random_data(Rng& rng, std::size_t n, double scale) {
  std::vector<double> v(n);
  for (auto& x : v) x = (rng.uniform01() - 0.5) * scale;
  return v;
}

double min_eigenvalue(const GramMatrix& k) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(k.values);
  return es.eigenvalues().minCoeff();
}

}  // namespace

TEST_CASE("tanh-shrink values and oddness") {
  CHECK(activation_apply(Activation::TanhShrink, 0.0) == 0.0);
  CHECK(activation_apply(Activation::TanhShrink, 1.0) ==
        doctest::Approx(0.23840584).epsilon(1e-7));
  CHECK(activation_apply(Activation::Identity, -3.5) == -3.5);
  Rng rng(1);
  for (int i = 0; i < 50; ++i) {
    const double x = (rng.uniform01() - 0.5) * 8.0;
    CHECK(activation_apply(Activation::TanhShrink, -x) ==
          doctest::Approx(-activation_apply(Activation::TanhShrink, x))
              .epsilon(1e-14));
  }
}

TEST_CASE("gaussian kernel closed forms") {
  const KernelSpec g = GaussianKernel{1.0};
  CHECK(kernel_eval(g, 0.0, 0.0) == 1.0);
  CHECK(kernel_eval(g, 0.0, std::sqrt(2.0)) ==
        doctest::Approx(0.36787944).epsilon(1e-8));
  const KernelSpec g2 = GaussianKernel{2.0};
  CHECK(kernel_eval(g2, 1.0, 3.0) == doctest::Approx(std::exp(-0.5)));
}

TEST_CASE("gaussian kernel strictly decreases with distance") {
  const KernelSpec g = GaussianKernel{1.0};
  double prev = kernel_eval(g, 0.0, 0.0);
  for (double d = 0.25; d < 6.0; d += 0.25) {
    const double cur = kernel_eval(g, 0.0, d);
    CHECK(cur < prev);
    prev = cur;
  }
}

TEST_CASE("quantum kernel n=1 D=1 identity activation is cos^2((x-y)/2)") {
  const KernelSpec q = QuantumKernel{{1, 1}, Activation::Identity, 1.0};
  for (double x : {-2.0, 0.0, 0.7}) {
    for (double y : {-1.1, 0.4, 2.2}) {
      const double c = std::cos((x - y) / 2.0);
      CHECK(kernel_eval(q, x, y) == doctest::Approx(c * c).epsilon(1e-12));
      // stationarity at one qubit: depends on x - y only
      CHECK(kernel_eval(q, x + 0.9, y + 0.9) ==
            doctest::Approx(kernel_eval(q, x, y)).epsilon(1e-12));
    }
  }
}

TEST_CASE("quantum kernel unit self-similarity") {
  const KernelSpec q = QuantumKernel{{4, 2}, Activation::TanhShrink, 18.0};
  for (double x : {-5.0, -0.3, 0.0, 2.4}) {
    CHECK(kernel_eval(q, x, x) == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("gram examples") {
  const std::vector<double> data{0.0, 1.0, 2.0};
  const auto k = gram(GaussianKernel{1.0}, data);
  CHECK(k.values(0, 1) == doctest::Approx(std::exp(-0.5)).epsilon(1e-12));
  CHECK(k.values(0, 2) == doctest::Approx(std::exp(-2.0)).epsilon(1e-12));
  CHECK(k.values(1, 2) == doctest::Approx(std::exp(-0.5)).epsilon(1e-12));
  for (int i = 0; i < 3; ++i) CHECK(k.values(i, i) == 1.0);

  const std::vector<double> constant{1.5, 1.5, 1.5, 1.5};
  for (const KernelSpec spec :
       {KernelSpec{GaussianKernel{}}, KernelSpec{QuantumKernel{}}}) {
    const auto ones = gram(spec, constant);
    CHECK((ones.values.array() - 1.0).abs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("gram PSD, symmetry, unit diagonal over 200 random datasets") {
  Rng rng(42);
  for (int rep = 0; rep < 200; ++rep) {
    const std::size_t n = 2 + rng.next_u64() % 29;
    const double scale = rep % 2 == 0 ? 6.0 : 60.0;
    const auto data = random_data(rng, n, scale);
    const KernelSpec spec =
        rep % 2 == 0 ? KernelSpec{GaussianKernel{0.5 + rng.uniform01()}}
                     : KernelSpec{QuantumKernel{{3, 2}, Activation::TanhShrink,
                                                1.0 + 20.0 * rng.uniform01()}};
    const auto k = gram(spec, data);
    REQUIRE((k.values - k.values.transpose()).cwiseAbs().maxCoeff() <= 1e-10);
    REQUIRE((k.values.diagonal().array() - 1.0).abs().maxCoeff() <= 1e-10);
    REQUIRE(min_eigenvalue(k) >= -1e-8);
    REQUIRE(k.values.minCoeff() >= 0.0);
    REQUIRE(k.values.maxCoeff() <= 1.0);
  }
}

TEST_CASE("parallel gram is bit-identical to the serial reference") {
  Rng rng(11);
  for (const KernelSpec spec :
       {KernelSpec{GaussianKernel{1.0}},
        KernelSpec{QuantumKernel{{4, 2}, Activation::TanhShrink, 18.0}}}) {
    const auto data = random_data(rng, 64, 10.0);
    const auto par = gram(spec, data);
    const auto ser = gram_reference(spec, data);
    REQUIRE(par.values == ser.values);
  }
}

TEST_CASE("quantum kernel depends on data only through the activation") {
  // TanhShrink(0.5) == TanhShrink(0.5): same angle, same kernel value as
  // evaluating at any other preimage pair with equal activations.
  const KernelSpec q = QuantumKernel{{3, 2}, Activation::TanhShrink, 2.0};
  const double a = activation_apply(Activation::TanhShrink, 1.3);
  const KernelSpec qid = QuantumKernel{{3, 2}, Activation::Identity, 2.0};
  CHECK(kernel_eval(q, 1.3, -0.2) ==
        doctest::Approx(kernel_eval(
            qid, a, activation_apply(Activation::TanhShrink, -0.2))));
}

TEST_CASE("errors") {
  CHECK_THROWS_AS(kernel_eval(GaussianKernel{0.0}, 0.0, 1.0), ParameterError);
  CHECK_THROWS_AS(kernel_eval(GaussianKernel{-2.0}, 0.0, 1.0), ParameterError);
  const std::vector<double> one{1.0};
  CHECK_THROWS_AS(gram(GaussianKernel{1.0}, one), ParameterError);
  CHECK_THROWS_AS(parse_activation("relu"), ParameterError);
}
