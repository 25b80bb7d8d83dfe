#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "trm/models/model.hpp"
#include "trm/selection/cv.hpp"
#include "trm/selection/metrics.hpp"
#include "trm/selection/space.hpp"

namespace trm::selection {

struct CvResult {
    std::size_t index = 0;  ///< position in the sampled candidate list
    models::Params params;
    std::vector<MetricSet> folds;  ///< validation metrics per fold
    MetricSet mean;
    MetricSet std;  ///< population dispersion across folds
    std::size_t rank = 0;  ///< 1 = best
    bool failed = false;
    std::string error;
};

struct SearchOptions {
    std::size_t k = 5;
    std::uint64_t seed = 0;  ///< fold assignment and model seeds
    bool refit = true;
};

struct SearchResult {
    models::Learner learner = models::Learner::mean;
    HyperSpace space;
    SearchOptions options;
    std::size_t n_rows = 0;
    std::vector<CvResult> ranked;
    std::optional<models::FittedModel> best_model;  ///< best candidate refit on all rows

    const CvResult& best() const;
};

/// Seed given to the model of candidate `index` in every fold and in the refit.
std::uint64_t candidate_seed(std::uint64_t search_seed, std::size_t index);

/// Validation metrics of one configuration on each fold.
std::vector<MetricSet> cross_validate(models::Learner learner, const models::Params& params, const Matrix& X,
                                      const Vector& y, const std::vector<Fold>& folds, std::uint64_t model_seed);

MetricSet mean_metrics(const std::vector<MetricSet>& ms);
MetricSet std_metrics(const std::vector<MetricSet>& ms);

/// Ranking: mean validation R² descending, then mean RMSE ascending, then candidate index.
/// Failed candidates are kept, ranked last. Throws if every candidate fails.
SearchResult randomized_search(models::Learner learner, const HyperSpace& space, const Matrix& X, const Vector& y,
                               const SearchOptions& options);

Matrix take_rows(const Matrix& X, const std::vector<std::size_t>& rows);
Vector take_rows(const Vector& y, const std::vector<std::size_t>& rows);

}  // namespace trm::selection
