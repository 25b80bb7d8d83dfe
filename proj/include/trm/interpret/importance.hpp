#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "trm/interpret/explain.hpp"

namespace trm::interpret {

struct Importance {
    std::string method;  ///< "permutation" or "impurity"
    std::vector<std::string> names;
    std::vector<double> values;
    std::vector<double> std_dev;  ///< permutation only, across repeats
    double baseline = 0.0;        ///< permutation only: MSE of the unshuffled data
    std::size_t n_repeats = 0;
    std::uint64_t seed = 0;
};

/// Mean increase in MSE when the columns of one group are shuffled together.
/// One Rng(seed) draws every permutation, group by group, repeat by repeat.
Importance permutation_importance(const Predictor& f, const Matrix& X, const Vector& y, const FeatureGroups& groups,
                                  std::size_t n_repeats, std::uint64_t seed);

/// Sum over every split of every tree of the node's SSE minus its children's SSE,
/// credited to the split column, then summed per group and normalized to total 1
/// (all zeros when no tree has a split). Non-tree models are rejected.
Importance impurity_importance(const models::FittedModel& model, const FeatureGroups& groups);

/// Mean |φ| per feature over a set of local explanations ("mean_abs_shap" or "mean_abs_lime").
Importance mean_abs_attribution(const std::vector<Attribution>& attributions);

}  // namespace trm::interpret
