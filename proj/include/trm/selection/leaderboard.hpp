#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "trm/models/model.hpp"
#include "trm/selection/metrics.hpp"

namespace trm::selection {

struct NamedModel {
    std::string name;
    const models::FittedModel* model = nullptr;
};

struct LeaderboardRow {
    std::string name;
    MetricSet train;
    MetricSet test;
};

struct Leaderboard {
    std::vector<LeaderboardRow> rows;  ///< test R² descending, ties by name

    /// Row names ordered by one test metric ("r2" descending; "mse", "rmse", "mae", "mape" ascending).
    std::vector<std::string> order_by(const std::string& metric) const;
};

Leaderboard compare_models(const std::vector<NamedModel>& models, const Matrix& X_train, const Vector& y_train,
                           const Matrix& X_test, const Vector& y_test);

/// Actual-vs-predicted and residual data for plotting: split,row,actual,predicted,residual.
void write_prediction_csv(std::ostream& out, const models::FittedModel& model, const Matrix& X_train,
                          const Vector& y_train, const Matrix& X_test, const Vector& y_test);

}  // namespace trm::selection
