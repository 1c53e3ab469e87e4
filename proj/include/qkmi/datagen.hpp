#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace qkmi {

enum class DistributionFamily { Gaussian, Poisson, Laplace };

// P(v): a zero-mean (Poisson: mean v) distribution parameterized by its
// variance v. Gaussian N(0, v); Poisson with rate v; Laplace with scale
// b = sqrt(v/2).
struct DistributionSpec {
  DistributionFamily family = DistributionFamily::Gaussian;
  double variance = 1.0;
};

enum class ModelForm { Linear, NonlinearPolynomial, NonlinearPeriodic };

// x2 = phi(x1; e):
//   Linear              c*x1 + e
//   NonlinearPolynomial c*x1^2 + c*x1 + e
//   NonlinearPeriodic   sin(c*x1 + e)
struct ModelSpec {
  ModelForm form = ModelForm::Linear;
  double coefficient = 1.0;
};

// One synthetic three-variable scenario. x1, e, x3 are mutually
// independent draws; x2[i] = phi(x1[i]; e[i]) exactly, elementwise.
struct ScenarioSample {
  std::vector<double> x1, x2, x3, e;
  DistributionSpec distribution;
  ModelSpec model;
  std::uint64_t seed = 0;
  bool gaussian_noise = false;

  std::size_t size() const { return x1.size(); }
};

// n i.i.d. draws. Deterministic in (spec, n, seed); the generator stream
// is derived from the seed alone, never from global state.
std::vector<double> sample_distribution(const DistributionSpec& spec,
                                        std::size_t n, std::uint64_t seed);

double apply_model(const ModelSpec& model, double x1, double e);

// Draws x1, e, x3 from three substreams hashed off `seed`, then applies
// the model. With gaussian_noise set, e comes from N(0,1) instead of
// P(v) (x1 and x3 still follow the spec'd distribution).
ScenarioSample generate_scenario(const DistributionSpec& dist,
                                 const ModelSpec& model, std::size_t n,
                                 std::uint64_t seed,
                                 bool gaussian_noise = false);

std::string to_string(DistributionFamily family);
std::string to_string(ModelForm form);
DistributionFamily parse_distribution_family(const std::string& name);
ModelForm parse_model_form(const std::string& name);

}  // namespace qkmi
