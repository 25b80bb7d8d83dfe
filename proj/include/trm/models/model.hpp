#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "trm/common/types.hpp"
#include "trm/models/ensemble.hpp"
#include "trm/models/knn.hpp"
#include "trm/models/linear.hpp"
#include "trm/models/mlp.hpp"
#include "trm/models/params.hpp"
#include "trm/models/tree.hpp"

namespace trm::models {

enum class Learner {
    linear,
    ridge,
    lasso,
    elastic_net,
    mean,
    knn,
    decision_tree,
    random_forest,
    extra_trees,
    adaboost,
    gradient_boosting,
    second_order_boosting,
    histogram_boosting,
    oblivious_boosting,
    mlp,
    voting,
};

const char* to_string(Learner l);
Learner learner_from_string(const std::string& s);
/// Every learner that can be fitted directly (everything except voting).
std::vector<Learner> all_learners();
bool is_tree_based(Learner l);

struct FittedModel;

/// Unweighted mean of the members' predictions.
struct VotingModel {
    std::vector<FittedModel> members;
};

using ModelBody = std::variant<LinearModel, KnnModel, DecisionTree, EnsembleModel, MlpModel, VotingModel>;

struct FittedModel {
    Learner learner = Learner::mean;
    Params params;
    std::uint64_t seed = 0;
    std::size_t n_features = 0;
    std::string fitted_at;  ///< UTC timestamp, ISO 8601
    ModelBody body;
};

/// Fits `learner` with `params` (missing keys take defaults, unknown keys are rejected).
FittedModel fit_model(Learner learner, const Params& params, const Matrix& X, const Vector& y, std::uint64_t seed);

/// Needs at least two members, all over the same input width.
FittedModel make_voting(std::vector<FittedModel> members);

double predict(const FittedModel& model, std::span<const double> x);
Vector predict(const FittedModel& model, const Matrix& X);

/// Trees of a tree-based model in stage order; empty for other models.
std::vector<const DecisionTree*> model_trees(const FittedModel& model);

/// Hyperparameter names accepted by `learner`.
std::vector<std::string> param_names(Learner learner);

std::string utc_timestamp();

}  // namespace trm::models
