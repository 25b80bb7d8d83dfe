#include "trm/selection/leaderboard.hpp"

#include <algorithm>
#include <ostream>

#include "trm/common/error.hpp"

namespace trm::selection {

namespace {

double metric_of(const MetricSet& m, const std::string& name) {
    if (name == "r2") return m.r2;
    if (name == "mse") return m.mse;
    if (name == "rmse") return m.rmse;
    if (name == "mae") return m.mae;
    if (name == "mape") return m.mape;
    throw InvalidArgument("unknown metric '" + name + "'");
}

}  // namespace

std::vector<std::string> Leaderboard::order_by(const std::string& metric) const {
    std::vector<const LeaderboardRow*> r;
    for (const auto& row : rows) r.push_back(&row);
    const bool descending = metric == "r2";
    std::stable_sort(r.begin(), r.end(), [&](const LeaderboardRow* a, const LeaderboardRow* b) {
        const double x = metric_of(a->test, metric), y = metric_of(b->test, metric);
        if (x != y) return descending ? x > y : x < y;
        return a->name < b->name;
    });
    std::vector<std::string> names;
    for (const auto* row : r) names.push_back(row->name);
    return names;
}

Leaderboard compare_models(const std::vector<NamedModel>& models, const Matrix& X_train, const Vector& y_train,
                           const Matrix& X_test, const Vector& y_test) {
    Leaderboard board;
    for (const auto& m : models) {
        if (m.model == nullptr) throw InvalidArgument("leaderboard: null model " + m.name);
        board.rows.push_back({m.name, compute_metrics(y_train, models::predict(*m.model, X_train)),
                              compute_metrics(y_test, models::predict(*m.model, X_test))});
    }
    std::stable_sort(board.rows.begin(), board.rows.end(), [](const LeaderboardRow& a, const LeaderboardRow& b) {
        if (a.test.r2 != b.test.r2) return a.test.r2 > b.test.r2;
        return a.name < b.name;
    });
    return board;
}

void write_prediction_csv(std::ostream& out, const models::FittedModel& model, const Matrix& X_train,
                          const Vector& y_train, const Matrix& X_test, const Vector& y_test) {
    out << "split,row,actual,predicted,residual\n";
    out.precision(17);
    auto emit = [&](const char* split, const Matrix& X, const Vector& y) {
        const Vector p = models::predict(model, X);
        for (Eigen::Index i = 0; i < X.rows(); ++i)
            out << split << ',' << i << ',' << y(i) << ',' << p(i) << ',' << y(i) - p(i) << '\n';
    };
    emit("train", X_train, y_train);
    emit("test", X_test, y_test);
}

}  // namespace trm::selection
