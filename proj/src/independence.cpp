#include "qkmi/independence.hpp"

#include <algorithm>

#include "qkmi/errors.hpp"

namespace qkmi {

ScoreSet scores_from_pairwise(double i12, double i13, double i23) {
  ScoreSet s;
  s.i12 = i12;
  s.i13 = i13;
  s.i23 = i23;
  s.s1 = i12 + i13;
  s.s2 = i12 + i23;
  s.s3 = i13 + i23;
  return s;
}

ScoreSet scores_with(const ScenarioSample& sample, const KernelSpec& kernel,
                     const PairEstimator& estimator) {
  if (sample.size() < 2 || sample.x2.size() != sample.size() ||
      sample.x3.size() != sample.size()) {
    throw ParameterError("scores: scenario vectors must share length >= 2");
  }
  const GramMatrix k1 = gram(kernel, sample.x1);
  const GramMatrix k2 = gram(kernel, sample.x2);
  const GramMatrix k3 = gram(kernel, sample.x3);
  // The estimator is symmetric, so three calls cover all six ordered pairs.
  return scores_from_pairwise(estimator(k1, k2), estimator(k1, k3),
                              estimator(k2, k3));
}

ScoreSet scores(const ScenarioSample& sample, const KernelSpec& kernel,
                const EstimatorConfig& cfg) {
  return scores_with(sample, kernel,
                     [&cfg](const GramMatrix& a, const GramMatrix& b) {
                       return estimate(a, b, cfg);
                     });
}

Verdict verdict(const ScoreSet& scores, int target_index) {
  double target = 0, other_a = 0, other_b = 0;
  switch (target_index) {
    case 1:
      target = scores.s1, other_a = scores.s2, other_b = scores.s3;
      break;
    case 2:
      target = scores.s2, other_a = scores.s1, other_b = scores.s3;
      break;
    case 3:
      target = scores.s3, other_a = scores.s1, other_b = scores.s2;
      break;
    default:
      throw ParameterError("verdict: target index must be 1, 2 or 3");
  }
  Verdict v;
  v.scores = scores;
  v.slack = std::min(other_a, other_b) - target;
  v.success = v.slack > 0.0;  // exact tie counts as failure
  return v;
}

}  // namespace qkmi
