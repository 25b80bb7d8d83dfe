#include "trm/selection/search.hpp"

#include <algorithm>
#include <cmath>

#include <spdlog/spdlog.h>

#include "trm/common/error.hpp"

namespace trm::selection {

const CvResult& SearchResult::best() const {
    if (ranked.empty() || ranked.front().failed) throw InvalidArgument("search has no successful candidate");
    return ranked.front();
}

std::uint64_t candidate_seed(std::uint64_t search_seed, std::size_t index) {
    return derive_seed(derive_seed(search_seed, 0x5EA4C4), index);
}

Matrix take_rows(const Matrix& X, const std::vector<std::size_t>& rows) {
    Matrix out(static_cast<Eigen::Index>(rows.size()), X.cols());
    for (std::size_t i = 0; i < rows.size(); ++i) out.row(static_cast<Eigen::Index>(i)) = X.row(static_cast<Eigen::Index>(rows[i]));
    return out;
}

Vector take_rows(const Vector& y, const std::vector<std::size_t>& rows) {
    Vector out(static_cast<Eigen::Index>(rows.size()));
    for (std::size_t i = 0; i < rows.size(); ++i) out(static_cast<Eigen::Index>(i)) = y(static_cast<Eigen::Index>(rows[i]));
    return out;
}

std::vector<MetricSet> cross_validate(models::Learner learner, const models::Params& params, const Matrix& X,
                                      const Vector& y, const std::vector<Fold>& folds, std::uint64_t model_seed) {
    std::vector<MetricSet> out;
    for (const auto& f : folds) {
        const auto model = models::fit_model(learner, params, take_rows(X, f.train), take_rows(y, f.train), model_seed);
        const Vector pred = models::predict(model, take_rows(X, f.validation));
        if (!pred.allFinite()) throw NumericalError("non-finite validation prediction");
        out.push_back(compute_metrics(take_rows(y, f.validation), pred));
    }
    return out;
}

MetricSet mean_metrics(const std::vector<MetricSet>& ms) {
    MetricSet m;
    if (ms.empty()) return m;
    for (const auto& x : ms) {
        m.r2 += x.r2;
        m.mse += x.mse;
        m.rmse += x.rmse;
        m.mae += x.mae;
        m.mape += x.mape;
        m.mape_defined = m.mape_defined && x.mape_defined;
    }
    const double n = static_cast<double>(ms.size());
    m.r2 /= n;
    m.mse /= n;
    m.rmse /= n;
    m.mae /= n;
    m.mape /= n;
    return m;
}

MetricSet std_metrics(const std::vector<MetricSet>& ms) {
    const MetricSet mu = mean_metrics(ms);
    MetricSet s;
    if (ms.empty()) return s;
    for (const auto& x : ms) {
        s.r2 += (x.r2 - mu.r2) * (x.r2 - mu.r2);
        s.mse += (x.mse - mu.mse) * (x.mse - mu.mse);
        s.rmse += (x.rmse - mu.rmse) * (x.rmse - mu.rmse);
        s.mae += (x.mae - mu.mae) * (x.mae - mu.mae);
        s.mape += (x.mape - mu.mape) * (x.mape - mu.mape);
    }
    const double n = static_cast<double>(ms.size());
    s.r2 = std::sqrt(s.r2 / n);
    s.mse = std::sqrt(s.mse / n);
    s.rmse = std::sqrt(s.rmse / n);
    s.mae = std::sqrt(s.mae / n);
    s.mape = std::sqrt(s.mape / n);
    s.mape_defined = mu.mape_defined;
    return s;
}

SearchResult randomized_search(models::Learner learner, const HyperSpace& space, const Matrix& X, const Vector& y,
                               const SearchOptions& options) {
    if (learner == models::Learner::voting) throw InvalidArgument("search: voting is not a searchable learner");
    const auto candidates = sample_candidates(space);
    if (candidates.empty()) throw InvalidArgument("search: the space produced no candidates");
    const auto folds = kfold_indices(static_cast<std::size_t>(X.rows()), options.k, options.seed);

    SearchResult result;
    result.learner = learner;
    result.space = space;
    result.options = options;
    result.n_rows = static_cast<std::size_t>(X.rows());
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        CvResult r;
        r.index = i;
        r.params = candidates[i];
        try {
            r.folds = cross_validate(learner, r.params, X, y, folds, candidate_seed(options.seed, i));
            r.mean = mean_metrics(r.folds);
            r.std = std_metrics(r.folds);
            if (!std::isfinite(r.mean.r2)) throw NumericalError("non-finite cross-validation score");
        } catch (const std::exception& e) {
            r.failed = true;
            r.error = e.what();
            r.folds.clear();
            spdlog::warn("{} candidate {} failed: {}", models::to_string(learner), i, e.what());
        }
        result.ranked.push_back(std::move(r));
    }
    std::stable_sort(result.ranked.begin(), result.ranked.end(), [](const CvResult& a, const CvResult& b) {
        if (a.failed != b.failed) return !a.failed;
        if (a.failed) return a.index < b.index;
        if (a.mean.r2 != b.mean.r2) return a.mean.r2 > b.mean.r2;
        if (a.mean.rmse != b.mean.rmse) return a.mean.rmse < b.mean.rmse;
        return a.index < b.index;
    });
    for (std::size_t i = 0; i < result.ranked.size(); ++i) result.ranked[i].rank = i + 1;
    if (result.ranked.front().failed)
        throw NumericalError(std::string("search: every candidate of ") + models::to_string(learner) +
                             " failed; first error: " + result.ranked.front().error);
    if (options.refit) {
        const auto& b = result.ranked.front();
        result.best_model = models::fit_model(learner, b.params, X, y, candidate_seed(options.seed, b.index));
    }
    return result;
}

}  // namespace trm::selection
