#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "trm/common/random.hpp"
#include "trm/common/types.hpp"

namespace trm::models {

enum class Criterion { squared_error, friedman_mse, absolute_error, poisson };

Criterion criterion_from_string(const std::string& s);
const char* to_string(Criterion c);

/// Internal nodes route x[feature] <= threshold to `left`, everything else to `right`.
struct TreeNode {
    int feature = -1;  ///< -1 marks a leaf
    double threshold = 0.0;
    int left = -1;
    int right = -1;
    double value = 0.0;                 ///< prediction of a leaf; node estimate for internal nodes
    std::size_t n_samples = 0;
    double sum_squared_residual = 0.0;  ///< SSE of the fitted target around the node mean

    bool is_leaf() const { return feature < 0; }
};

struct DecisionTree {
    std::vector<TreeNode> nodes;  ///< nodes[0] is the root
    std::size_t n_features = 0;

    double predict(std::span<const double> x) const;
    std::size_t leaf_count() const;
    std::size_t depth() const;
};

/// Per-feature quantile bin edges plus the bin code of every training row.
/// Code b means edges[b-1] < x <= edges[b], so "code <= b" is "x <= edges[b]".
struct FeatureBins {
    std::vector<std::vector<double>> edges;
    std::vector<std::vector<std::uint16_t>> codes;  ///< [feature][row]

    std::uint16_t code(std::size_t feature, double x) const;
};

/// With at most n_bins distinct values a feature's edges are the midpoints between
/// them; otherwise they are the interior n_bins-quantiles of the column.
FeatureBins make_bins(const Matrix& X, std::size_t n_bins);

struct GrowOptions {
    int max_depth = 0;  ///< <= 0 grows until leaves are pure or too small
    std::size_t min_samples_leaf = 1;
    std::size_t min_samples_split = 2;
    Criterion criterion = Criterion::squared_error;
    /// Second-order scoring for squared loss: gain G_L^2/(H_L+l2) + G_R^2/(H_R+l2) - G^2/(H+l2)
    /// over residual targets, leaf value sum/(n + l2).
    bool newton = false;
    double l2_leaf = 0.0;
    std::size_t max_features = 0;  ///< candidate features per node; 0 = all
    bool random_thresholds = false;  ///< one uniform threshold per candidate feature
    const FeatureBins* bins = nullptr;  ///< search only bin edges (histogram mode)
};

/// Greedy top-down growth on the given rows (duplicates allowed, e.g. a bootstrap).
/// Among equal-gain splits the lowest feature index, then the lowest threshold wins.
/// `rng` is required when max_features or random_thresholds is set.
DecisionTree grow_tree(const Matrix& X, const Vector& target, std::span<const std::size_t> rows,
                       const GrowOptions& options, Rng* rng = nullptr);

/// CART regression tree on all rows. Leaves predict the mean, or the median for absolute_error.
/// Poisson requires a strictly positive target.
DecisionTree fit_cart(const Matrix& X, const Vector& y, int max_depth, std::size_t min_samples_leaf = 1,
                      Criterion criterion = Criterion::squared_error);

/// Oblivious tree: every level shares one (feature, bin edge) chosen to maximize the
/// summed second-order gain over all current leaves. A tree that reaches depth d has
/// exactly 2^d leaves; leaves without rows predict 0.
DecisionTree grow_oblivious_tree(const Matrix& X, const Vector& target, int depth, double l2_leaf,
                                 const FeatureBins& bins);

/// Recomputes n_samples and sum_squared_residual of every node by routing the rows.
void annotate_node_stats(DecisionTree& tree, const Matrix& X, const Vector& target,
                         std::span<const std::size_t> rows);

}  // namespace trm::models
