#include "qkmi/datagen.hpp"

#include <cmath>

#include "qkmi/errors.hpp"
#include "qkmi/rng.hpp"

namespace qkmi {

namespace {

constexpr std::uint64_t kScenarioSalt = 0x73636e33ULL;  // "scn3"
constexpr std::uint64_t kTagX1 = 1, kTagNoise = 2, kTagX3 = 3;

// Box-Muller, cosine branch only: two uniforms per draw so the stream
// position is a fixed function of the draw index.
double draw_normal(Rng& rng, double stddev) {
  const double u1 = rng.uniform01();
  const double u2 = rng.uniform01();
  const double r = std::sqrt(-2.0 * std::log(1.0 - u1));
  return stddev * r * std::cos(2.0 * M_PI * u2);
}

// Inverse CDF; scale b gives variance 2 b^2.
double draw_laplace(Rng& rng, double scale) {
  const double t = rng.uniform01() - 0.5;
  double m = 1.0 - 2.0 * std::fabs(t);
  if (m <= 0.0) m = 0x1.0p-60;
  return (t < 0.0 ? scale : -scale) * std::log(m);
}

// Multiplicative inversion; adequate up to rate ~30 (p0 = e^-30 ~ 1e-13).
double draw_poisson_inversion(Rng& rng, double rate) {
  double p = std::exp(-rate);
  double s = p;
  const double u = rng.uniform01();
  long k = 0;
  while (u > s && k < 2000) {
    ++k;
    p *= rate / static_cast<double>(k);
    s += p;
  }
  return static_cast<double>(k);
}

// Hoermann's PTRS transformed rejection, valid for rate >= 10.
double draw_poisson_ptrs(Rng& rng, double rate) {
  const double b = 0.931 + 2.53 * std::sqrt(rate);
  const double a = -0.059 + 0.02483 * b;
  const double inv_alpha = 1.1239 + 1.1328 / (b - 3.4);
  const double v_r = 0.9277 - 3.6224 / (b - 2.0);
  const double log_rate = std::log(rate);
  for (;;) {
    const double u = rng.uniform01() - 0.5;
    const double v = rng.uniform01();
    const double us = 0.5 - std::fabs(u);
    const double k = std::floor((2.0 * a / us + b) * u + rate + 0.43);
    if (us >= 0.07 && v <= v_r) return k;
    if (k < 0.0 || (us < 0.013 && v > us)) continue;
    if (std::log(v * inv_alpha / (a / (us * us) + b)) <=
        k * log_rate - rate - std::lgamma(k + 1.0)) {
      return k;
    }
  }
}

double draw(Rng& rng, const DistributionSpec& spec) {
  switch (spec.family) {
    case DistributionFamily::Gaussian:
      return draw_normal(rng, std::sqrt(spec.variance));
    case DistributionFamily::Poisson:
      return spec.variance <= 30.0 ? draw_poisson_inversion(rng, spec.variance)
                                   : draw_poisson_ptrs(rng, spec.variance);
    case DistributionFamily::Laplace:
      return draw_laplace(rng, std::sqrt(spec.variance / 2.0));
  }
  throw ParameterError("unknown distribution family");
}

void validate(const DistributionSpec& spec) {
  if (!(spec.variance > 0.0)) {
    throw ParameterError("distribution variance must be positive, got " +
                         std::to_string(spec.variance));
  }
}

std::vector<double> draw_vector(const DistributionSpec& spec, std::size_t n,
                                std::uint64_t stream_seed) {
  Rng rng(stream_seed);
  std::vector<double> out(n);
  for (auto& x : out) x = draw(rng, spec);
  return out;
}

}  // namespace

std::vector<double> sample_distribution(const DistributionSpec& spec,
                                        std::size_t n, std::uint64_t seed) {
  validate(spec);
  if (n < 1) throw ParameterError("sample count must be at least 1");
  return draw_vector(spec, n, stable_hash64({kScenarioSalt, seed, 0}));
}

double apply_model(const ModelSpec& model, double x1, double e) {
  const double c = model.coefficient;
  switch (model.form) {
    case ModelForm::Linear:
      return c * x1 + e;
    case ModelForm::NonlinearPolynomial:
      return c * x1 * x1 + c * x1 + e;
    case ModelForm::NonlinearPeriodic:
      return std::sin(c * x1 + e);
  }
  throw ParameterError("unknown model form");
}

ScenarioSample generate_scenario(const DistributionSpec& dist,
                                 const ModelSpec& model, std::size_t n,
                                 std::uint64_t seed, bool gaussian_noise) {
  validate(dist);
  if (n < 2) throw ParameterError("scenario needs at least 2 samples");

  const DistributionSpec noise_spec =
      gaussian_noise ? DistributionSpec{DistributionFamily::Gaussian, 1.0}
                     : dist;

  ScenarioSample s;
  s.distribution = dist;
  s.model = model;
  s.seed = seed;
  s.gaussian_noise = gaussian_noise;
  s.x1 = draw_vector(dist, n, stable_hash64({kScenarioSalt, seed, kTagX1}));
  s.e = draw_vector(noise_spec, n,
                    stable_hash64({kScenarioSalt, seed, kTagNoise}));
  s.x3 = draw_vector(dist, n, stable_hash64({kScenarioSalt, seed, kTagX3}));
  s.x2.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    s.x2[i] = apply_model(model, s.x1[i], s.e[i]);
  }
  return s;
}

std::string to_string(DistributionFamily family) {
  switch (family) {
    case DistributionFamily::Gaussian:
      return "gaussian";
    case DistributionFamily::Poisson:
      return "poisson";
    case DistributionFamily::Laplace:
      return "laplace";
  }
  return "?";
}

std::string to_string(ModelForm form) {
  switch (form) {
    case ModelForm::Linear:
      return "linear";
    case ModelForm::NonlinearPolynomial:
      return "poly";
    case ModelForm::NonlinearPeriodic:
      return "periodic";
  }
  return "?";
}

DistributionFamily parse_distribution_family(const std::string& name) {
  if (name == "gaussian" || name == "normal") return DistributionFamily::Gaussian;
  if (name == "poisson") return DistributionFamily::Poisson;
  if (name == "laplace") return DistributionFamily::Laplace;
  throw ParameterError("unknown distribution: " + name);
}

ModelForm parse_model_form(const std::string& name) {
  if (name == "linear") return ModelForm::Linear;
  if (name == "poly" || name == "polynomial") return ModelForm::NonlinearPolynomial;
  if (name == "periodic" || name == "sin") return ModelForm::NonlinearPeriodic;
  throw ParameterError("unknown model: " + name);
}

}  // namespace qkmi
