#include "trm/interpret/importance.hpp"

#include <algorithm>
#include <cmath>

#include "trm/common/error.hpp"
#include "trm/common/random.hpp"

namespace trm::interpret {

namespace {

double mse(const Predictor& f, const Matrix& X, const Vector& y) {
    double s = 0.0;
    for (Eigen::Index r = 0; r < X.rows(); ++r) {
        const double e = f(row_span(X, r)) - y(r);
        s += e * e;
    }
    return s / static_cast<double>(X.rows());
}

}  // namespace

Importance permutation_importance(const Predictor& f, const Matrix& X, const Vector& y, const FeatureGroups& groups,
                                  std::size_t n_repeats, std::uint64_t seed) {
    if (X.rows() < 2) throw InvalidArgument("permutation importance needs at least 2 rows");
    if (X.rows() != y.size()) throw InvalidArgument("permutation importance: X and y row counts differ");
    if (n_repeats < 1) throw InvalidArgument("permutation importance needs n_repeats >= 1");
    for (const auto& g : groups.columns)
        for (auto c : g)
            if (static_cast<Eigen::Index>(c) >= X.cols()) throw InvalidArgument("permutation importance: column out of range");

    Importance out;
    out.method = "permutation";
    out.names = groups.names;
    out.n_repeats = n_repeats;
    out.seed = seed;
    out.baseline = mse(f, X, y);
    Rng rng(seed);
    Matrix Xp = X;
    const auto n = static_cast<std::size_t>(X.rows());
    for (const auto& cols : groups.columns) {
        std::vector<double> deltas;
        for (std::size_t r = 0; r < n_repeats; ++r) {
            const auto perm = rng.permutation(n);
            for (auto c : cols)
                for (std::size_t i = 0; i < n; ++i)
                    Xp(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(c)) =
                        X(static_cast<Eigen::Index>(perm[i]), static_cast<Eigen::Index>(c));
            deltas.push_back(mse(f, Xp, y) - out.baseline);
            for (auto c : cols) Xp.col(static_cast<Eigen::Index>(c)) = X.col(static_cast<Eigen::Index>(c));
        }
        double mean = 0.0;
        for (double d : deltas) mean += d;
        mean /= static_cast<double>(deltas.size());
        double var = 0.0;
        for (double d : deltas) var += (d - mean) * (d - mean);
        out.values.push_back(mean);
        out.std_dev.push_back(std::sqrt(var / static_cast<double>(deltas.size())));
    }
    return out;
}

Importance impurity_importance(const models::FittedModel& model, const FeatureGroups& groups) {
    const auto trees = models::model_trees(model);
    if (trees.empty())
        throw InvalidArgument(std::string("impurity importance requires a tree-based model, got ") +
                              models::to_string(model.learner));
    std::vector<double> per_column(model.n_features, 0.0);
    for (const auto* t : trees)
        for (const auto& node : t->nodes) {
            if (node.is_leaf()) continue;
            const auto& l = t->nodes[static_cast<std::size_t>(node.left)];
            const auto& r = t->nodes[static_cast<std::size_t>(node.right)];
            const double red = node.sum_squared_residual - l.sum_squared_residual - r.sum_squared_residual;
            per_column[static_cast<std::size_t>(node.feature)] += std::max(0.0, red);
        }
    Importance out;
    out.method = "impurity";
    out.names = groups.names;
    double total = 0.0;
    for (const auto& cols : groups.columns) {
        double s = 0.0;
        for (auto c : cols) {
            if (c >= per_column.size()) throw InvalidArgument("impurity importance: column out of range");
            s += per_column[c];
        }
        out.values.push_back(s);
        total += s;
    }
    if (total > 0.0)
        for (auto& v : out.values) v /= total;
    return out;
}

Importance mean_abs_attribution(const std::vector<Attribution>& attributions) {
    if (attributions.empty()) throw InvalidArgument("mean |attribution| needs at least one explanation");
    Importance out;
    out.method = attributions.front().method == AttributionMethod::lime ? "mean_abs_lime" : "mean_abs_shap";
    out.names = attributions.front().names;
    out.values.assign(out.names.size(), 0.0);
    for (const auto& a : attributions) {
        if (a.phi.size() != out.values.size()) throw InvalidArgument("mean |attribution|: explanations differ in width");
        for (std::size_t i = 0; i < a.phi.size(); ++i) out.values[i] += std::abs(a.phi[i]);
    }
    for (auto& v : out.values) v /= static_cast<double>(attributions.size());
    return out;
}

}  // namespace trm::interpret
