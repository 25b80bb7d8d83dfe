#include "trm/models/ensemble.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "trm/common/error.hpp"
#include "trm/common/random.hpp"

namespace trm::models {

const char* to_string(CombineMode m) {
    switch (m) {
        case CombineMode::average: return "average";
        case CombineMode::boosted_sum: return "boosted_sum";
        case CombineMode::weighted_median: return "weighted_median";
    }
    return "average";
}

CombineMode combine_mode_from_string(const std::string& s) {
    if (s == "average") return CombineMode::average;
    if (s == "boosted_sum") return CombineMode::boosted_sum;
    if (s == "weighted_median") return CombineMode::weighted_median;
    throw InvalidArgument("unknown combine mode '" + s + "'");
}

const char* to_string(BoostingVariant v) {
    switch (v) {
        case BoostingVariant::vanilla: return "vanilla";
        case BoostingVariant::second_order: return "second_order";
        case BoostingVariant::histogram: return "histogram";
        case BoostingVariant::oblivious: return "oblivious";
    }
    return "vanilla";
}

double weighted_median(std::span<const double> values, std::span<const double> weights) {
    if (values.empty() || values.size() != weights.size()) throw InvalidArgument("weighted_median: bad input");
    std::vector<std::size_t> order(values.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
    const double total = std::accumulate(weights.begin(), weights.end(), 0.0);
    double cum = 0.0;
    for (std::size_t i : order) {
        cum += weights[i];
        if (cum >= 0.5 * total) return values[i];
    }
    return values[order.back()];
}

double EnsembleModel::predict(std::span<const double> x) const {
    switch (combine) {
        case CombineMode::average: {
            if (trees.empty()) throw InvalidArgument("ensemble has no trees");
            double s = 0.0;
            for (const auto& t : trees) s += t.predict(x);
            return s / static_cast<double>(trees.size());
        }
        case CombineMode::boosted_sum: return predict_staged(x, trees.size());
        case CombineMode::weighted_median: {
            if (trees.empty()) throw InvalidArgument("ensemble has no trees");
            std::vector<double> p;
            p.reserve(trees.size());
            for (const auto& t : trees) p.push_back(t.predict(x));
            return weighted_median(p, stage_weights);
        }
    }
    return 0.0;
}

double EnsembleModel::predict_staged(std::span<const double> x, std::size_t stages) const {
    if (combine != CombineMode::boosted_sum) throw InvalidArgument("staged prediction needs a boosted model");
    double f = initial;
    for (std::size_t m = 0; m < std::min(stages, trees.size()); ++m) f += learning_rates[m] * trees[m].predict(x);
    return f;
}

namespace {

std::vector<std::size_t> all_rows(Eigen::Index n) {
    std::vector<std::size_t> rows(static_cast<std::size_t>(n));
    std::iota(rows.begin(), rows.end(), 0);
    return rows;
}

void check_xy(const Matrix& X, const Vector& y, const char* who) {
    if (X.rows() == 0) throw InvalidArgument(std::string(who) + ": no training rows");
    if (y.size() != X.rows()) throw InvalidArgument(std::string(who) + ": X and y differ in length");
}

}  // namespace

EnsembleModel fit_bagged_trees(const Matrix& X, const Vector& y, const BaggingOptions& o) {
    check_xy(X, y, "bagged trees");
    if (o.n_trees < 1) throw InvalidArgument("bagged trees: n_trees must be >= 1");
    if (!(o.max_features > 0.0 && o.max_features <= 1.0))
        throw InvalidArgument("bagged trees: max_features must lie in (0, 1]");

    const auto n = static_cast<std::size_t>(X.rows());
    const auto d = static_cast<std::size_t>(X.cols());
    GrowOptions g;
    g.max_depth = o.max_depth;
    g.min_samples_leaf = o.min_samples_leaf;
    const auto k = static_cast<std::size_t>(std::ceil(o.max_features * static_cast<double>(d)));
    g.max_features = k >= d ? 0 : std::max<std::size_t>(k, 1);
    g.random_thresholds = o.mode == BaggingMode::extra_trees;

    EnsembleModel model;
    model.combine = CombineMode::average;
    for (int t = 0; t < o.n_trees; ++t) {
        Rng rng(derive_seed(o.seed, static_cast<std::uint64_t>(t)));
        std::vector<std::size_t> rows;
        if (o.bootstrap) {
            rows.resize(n);
            for (auto& r : rows) r = static_cast<std::size_t>(rng.below(n));
            std::sort(rows.begin(), rows.end());
        } else {
            rows = all_rows(X.rows());
        }
        model.trees.push_back(grow_tree(X, y, rows, g, &rng));
    }
    return model;
}

EnsembleModel fit_gradient_boosting(const Matrix& X, const Vector& y, const BoostingOptions& o) {
    check_xy(X, y, "gradient boosting");
    if (o.n_stages < 1) throw InvalidArgument("gradient boosting: n_stages must be >= 1");
    if (!(o.learning_rate > 0.0 && o.learning_rate <= 1.0))
        throw InvalidArgument("gradient boosting: learning_rate must lie in (0, 1]");
    if (o.l2_leaf < 0.0) throw InvalidArgument("gradient boosting: l2_leaf must be >= 0");
    const bool binned = o.variant == BoostingVariant::histogram || o.variant == BoostingVariant::oblivious;
    if (binned && o.n_bins < 2) throw InvalidArgument("gradient boosting: n_bins must be >= 2");
    if (o.variant == BoostingVariant::oblivious && o.max_depth < 1)
        throw InvalidArgument("gradient boosting: oblivious trees need max_depth >= 1");

    FeatureBins bins;
    if (binned) bins = make_bins(X, static_cast<std::size_t>(o.n_bins));

    GrowOptions g;
    g.max_depth = o.max_depth;
    g.min_samples_leaf = o.min_samples_leaf;
    if (o.variant == BoostingVariant::second_order) {
        g.newton = true;
        g.l2_leaf = o.l2_leaf;
    }
    if (o.variant == BoostingVariant::histogram) g.bins = &bins;

    EnsembleModel model;
    model.combine = CombineMode::boosted_sum;
    model.initial = y.mean();
    Vector f = Vector::Constant(y.size(), model.initial);
    const auto rows = all_rows(X.rows());
    for (int m = 0; m < o.n_stages; ++m) {
        const Vector residual = y - f;
        DecisionTree tree = o.variant == BoostingVariant::oblivious
                                ? grow_oblivious_tree(X, residual, o.max_depth, o.l2_leaf, bins)
                                : grow_tree(X, residual, rows, g);
        for (Eigen::Index r = 0; r < X.rows(); ++r) f(r) += o.learning_rate * tree.predict(row_span(X, r));
        model.trees.push_back(std::move(tree));
        model.learning_rates.push_back(o.learning_rate);
        if (!f.allFinite()) throw NumericalError("gradient boosting: non-finite fit at stage " + std::to_string(m));
    }
    return model;
}

EnsembleModel fit_adaboost(const Matrix& X, const Vector& y, const AdaBoostOptions& o) {
    check_xy(X, y, "adaboost");
    if (o.n_stages < 1) throw InvalidArgument("adaboost: n_stages must be >= 1");
    if (!(o.learning_rate > 0.0)) throw InvalidArgument("adaboost: learning_rate must be > 0");
    if (o.max_depth < 1) throw InvalidArgument("adaboost: max_depth must be >= 1");

    const auto n = static_cast<std::size_t>(X.rows());
    Rng rng(o.seed);
    std::vector<double> w(n, 1.0 / static_cast<double>(n));
    GrowOptions g;
    g.max_depth = o.max_depth;

    EnsembleModel model;
    model.combine = CombineMode::weighted_median;
    for (int m = 0; m < o.n_stages; ++m) {
        std::vector<double> cdf(n);
        std::partial_sum(w.begin(), w.end(), cdf.begin());
        std::vector<std::size_t> rows(n);
        for (auto& r : rows) {
            const double u = rng.uniform() * cdf.back();
            r = std::min<std::size_t>(static_cast<std::size_t>(std::upper_bound(cdf.begin(), cdf.end(), u) - cdf.begin()),
                                      n - 1);
        }
        std::sort(rows.begin(), rows.end());
        DecisionTree tree = grow_tree(X, y, rows, g);

        std::vector<double> err(n);
        double err_max = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            err[i] = std::abs(tree.predict(row_span(X, static_cast<Eigen::Index>(i))) - y(static_cast<Eigen::Index>(i)));
            err_max = std::max(err_max, err[i]);
        }
        if (err_max == 0.0) {
            model.trees.push_back(std::move(tree));
            model.stage_weights.push_back(1.0);
            break;
        }
        double avg_loss = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            err[i] /= err_max;
            avg_loss += w[i] * err[i];
        }
        if (avg_loss <= 0.0) {
            model.trees.push_back(std::move(tree));
            model.stage_weights.push_back(1.0);
            break;
        }
        if (avg_loss >= 0.5) {
            if (model.trees.empty()) {
                model.trees.push_back(std::move(tree));
                model.stage_weights.push_back(1.0);
            }
            break;
        }
        const double beta = avg_loss / (1.0 - avg_loss);
        model.trees.push_back(std::move(tree));
        model.stage_weights.push_back(o.learning_rate * std::log(1.0 / beta));
        double total = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            w[i] *= std::pow(beta, (1.0 - err[i]) * o.learning_rate);
            total += w[i];
        }
        for (auto& v : w) v /= total;
    }
    return model;
}

}  // namespace trm::models
