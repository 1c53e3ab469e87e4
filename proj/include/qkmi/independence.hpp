#pragma once

#include <functional>

#include "qkmi/datagen.hpp"
#include "qkmi/estimators.hpp"

namespace qkmi {

// Per-variable independence scores S(x_i) = sum_{j != i} I(x_i, x_j),
// together with the pairwise estimates they are assembled from.
struct ScoreSet {
  double s1 = 0, s2 = 0, s3 = 0;
  double i12 = 0, i13 = 0, i23 = 0;
};

// success <=> slack > 0 <=> S(target) < min of the other two, strictly;
// exact ties count as failure.
struct Verdict {
  bool success = false;
  double slack = 0;
  ScoreSet scores;
};

using PairEstimator =
    std::function<double(const GramMatrix&, const GramMatrix&)>;

ScoreSet scores_from_pairwise(double i12, double i13, double i23);

// Builds one Gram per variable and evaluates exactly three pairwise
// estimates (symmetry of the estimator is exploited; never six calls).
ScoreSet scores_with(const ScenarioSample& sample, const KernelSpec& kernel,
                     const PairEstimator& estimator);

ScoreSet scores(const ScenarioSample& sample, const KernelSpec& kernel,
                const EstimatorConfig& cfg);

// target_index in {1, 2, 3}; defaults to x3, the variable that is
// independent by construction.
Verdict verdict(const ScoreSet& scores, int target_index = 3);

}  // namespace qkmi
