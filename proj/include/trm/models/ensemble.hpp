#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "trm/common/types.hpp"
#include "trm/models/tree.hpp"

namespace trm::models {

enum class CombineMode { average, boosted_sum, weighted_median };

const char* to_string(CombineMode m);
CombineMode combine_mode_from_string(const std::string& s);

/// average:          mean over trees
/// boosted_sum:      initial + Σ learning_rates[m]·trees[m](x), summed in stage order
/// weighted_median:  weighted median of tree outputs with stage_weights (AdaBoost.R2)
struct EnsembleModel {
    std::vector<DecisionTree> trees;
    CombineMode combine = CombineMode::average;
    std::vector<double> learning_rates;
    double initial = 0.0;
    std::vector<double> stage_weights;

    double predict(std::span<const double> x) const;
    /// Boosted models only: prediction after the first `stages` trees.
    double predict_staged(std::span<const double> x, std::size_t stages) const;
};

enum class BaggingMode { random_forest, extra_trees };

struct BaggingOptions {
    BaggingMode mode = BaggingMode::random_forest;
    int n_trees = 100;
    int max_depth = 0;
    double max_features = 1.0;  ///< fraction of columns considered at each node
    bool bootstrap = true;
    std::size_t min_samples_leaf = 1;
    std::uint64_t seed = 0;
};

/// Tree t draws its randomness from derive_seed(seed, t) only.
EnsembleModel fit_bagged_trees(const Matrix& X, const Vector& y, const BaggingOptions& options);

enum class BoostingVariant { vanilla, second_order, histogram, oblivious };

const char* to_string(BoostingVariant v);

struct BoostingOptions {
    BoostingVariant variant = BoostingVariant::vanilla;
    int n_stages = 100;
    double learning_rate = 0.1;
    int max_depth = 3;  ///< <= 0 unbounded (not allowed for oblivious)
    double l2_leaf = 1.0;
    int n_bins = 32;
    std::size_t min_samples_leaf = 1;
};

/// Squared-loss boosting: F_0 = mean(y), each stage fits the current residuals.
EnsembleModel fit_gradient_boosting(const Matrix& X, const Vector& y, const BoostingOptions& options);

struct AdaBoostOptions {
    int n_stages = 50;
    double learning_rate = 1.0;
    int max_depth = 3;
    std::uint64_t seed = 0;
};

/// AdaBoost.R2 with linear loss; stages are fit on weighted bootstrap samples.
EnsembleModel fit_adaboost(const Matrix& X, const Vector& y, const AdaBoostOptions& options);

/// Weighted median as used by AdaBoost.R2: smallest value whose cumulative weight
/// (values ascending) reaches half the total.
double weighted_median(std::span<const double> values, std::span<const double> weights);

}  // namespace trm::models
