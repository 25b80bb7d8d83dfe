#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "trm/interpret/explain.hpp"

namespace trm::interpret {

/// ICE curves for one column and their pointwise mean (the partial dependence).
struct Dependence {
    std::string feature;
    std::size_t column = 0;
    std::vector<double> grid;
    std::vector<std::vector<double>> ice;  ///< [row][grid point]
    std::vector<double> pdp;
    std::vector<std::size_t> row_ids;
};

/// Evaluation grid for a column: {0, 1} when every value is 0 or 1, the single value of a
/// constant column, otherwise `n_points` evenly spaced values from min to max.
std::vector<double> dependence_grid(const Matrix& X, std::size_t column, std::size_t n_points);

Dependence ice_pdp(const Predictor& f, const Matrix& X, std::size_t column, const std::string& name,
                   std::size_t n_points, const std::vector<std::size_t>& row_ids = {});

/// Long format: feature,row,grid_value,prediction (row "pdp" for the mean curve).
void write_dependence_csv(std::ostream& out, const std::vector<Dependence>& curves);

/// Graphviz rendering of a tree with named split features.
std::string tree_to_dot(const models::DecisionTree& tree, const std::vector<std::string>& feature_names);

/// Renders tree `tree_index` of a tree-based model.
std::string tree_to_dot(const models::FittedModel& model, std::size_t tree_index,
                        const std::vector<std::string>& feature_names);

}  // namespace trm::interpret
