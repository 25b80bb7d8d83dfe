#pragma once

// Independent reference computations for the learners.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

#include "trm/common/random.hpp"
#include "trm/common/types.hpp"
#include "trm/models/ensemble.hpp"
#include "trm/models/linear.hpp"
#include "trm/models/mlp.hpp"
#include "trm/models/tree.hpp"

namespace trm::testing {

// Node impurity written straight from each criterion's definition.
inline double impurity(const std::vector<double>& y, models::Criterion c) {
    if (y.empty()) return 0.0;
    const double n = static_cast<double>(y.size());
    const double mean = std::accumulate(y.begin(), y.end(), 0.0) / n;
    double s = 0.0;
    switch (c) {
        case models::Criterion::squared_error:
        case models::Criterion::friedman_mse:
            for (double v : y) s += (v - mean) * (v - mean);
            return s;
        case models::Criterion::absolute_error: {
            std::vector<double> v = y;
            std::sort(v.begin(), v.end());
            const auto k = v.size();
            const double med = k % 2 ? v[k / 2] : 0.5 * (v[k / 2 - 1] + v[k / 2]);
            for (double x : v) s += std::abs(x - med);
            return s;
        }
        case models::Criterion::poisson:
            // Half Poisson deviance around the node mean.
            for (double v : y) s += v * std::log(v / mean) - (v - mean);
            return s;
    }
    return s;
}

struct SplitScore {
    double reduction = -std::numeric_limits<double>::infinity();
    bool any = false;
};

// Impurity reduction of routing x[f] <= t left.
inline double split_reduction(const Matrix& X, const Vector& y, const std::vector<std::size_t>& rows, int f,
                              double t, models::Criterion c, std::size_t* n_left = nullptr,
                              std::size_t* n_right = nullptr) {
    std::vector<double> all, left, right;
    for (auto r : rows) {
        const double v = y(static_cast<Eigen::Index>(r));
        all.push_back(v);
        (X(static_cast<Eigen::Index>(r), f) <= t ? left : right).push_back(v);
    }
    if (n_left) *n_left = left.size();
    if (n_right) *n_right = right.size();
    return impurity(all, c) - impurity(left, c) - impurity(right, c);
}

// Best reduction over every feature and every threshold that separates two distinct values.
inline SplitScore best_split_exhaustive(const Matrix& X, const Vector& y, const std::vector<std::size_t>& rows,
                                        models::Criterion c, std::size_t min_leaf = 1) {
    SplitScore best;
    for (int f = 0; f < X.cols(); ++f) {
        std::vector<double> xs;
        for (auto r : rows) xs.push_back(X(static_cast<Eigen::Index>(r), f));
        std::sort(xs.begin(), xs.end());
        xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
        for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
            std::size_t nl = 0, nr = 0;
            const double red = split_reduction(X, y, rows, f, xs[i], c, &nl, &nr);
            if (nl < min_leaf || nr < min_leaf) continue;
            best.any = true;
            best.reduction = std::max(best.reduction, red);
        }
    }
    return best;
}

// Rows reaching each node, found by routing every training row from the root.
inline std::vector<std::vector<std::size_t>> rows_per_node(const models::DecisionTree& tree, const Matrix& X,
                                                           const std::vector<std::size_t>& rows) {
    std::vector<std::vector<std::size_t>> out(tree.nodes.size());
    for (auto r : rows) {
        std::size_t i = 0;
        while (true) {
            out[i].push_back(r);
            const auto& n = tree.nodes[i];
            if (n.is_leaf()) break;
            i = static_cast<std::size_t>(X(static_cast<Eigen::Index>(r), n.feature) <= n.threshold ? n.left : n.right);
        }
    }
    return out;
}

// Largest |X_j^T r / m - alpha*rho*s_j - alpha*(1-rho)*w_j| over the elastic-net stationarity conditions,
// where s_j = sign(w_j) for active coefficients and s_j ranges over [-1, 1] otherwise.
inline double elastic_net_kkt_violation(const Matrix& X, const Vector& y, const models::LinearModel& m) {
    const double n = static_cast<double>(X.rows());
    const Vector r = (y - X * m.weights).array() - m.intercept;
    double worst = std::abs(r.sum()) / n;  // intercept stationarity
    const double l1 = m.alpha * m.l1_ratio;
    const double l2 = m.alpha * (1.0 - m.l1_ratio);
    for (Eigen::Index j = 0; j < X.cols(); ++j) {
        const double g = X.col(j).dot(r) / n;
        const double w = m.weights(j);
        const double v = w != 0.0 ? std::abs(g - l1 * (w > 0 ? 1.0 : -1.0) - l2 * w) : std::max(0.0, std::abs(g) - l1);
        worst = std::max(worst, v);
    }
    return worst;
}

// Normal equations [1 X]^T [1 X] beta = [1 X]^T y via Cholesky.
inline Eigen::VectorXd normal_equations(const Matrix& X, const Vector& y) {
    Eigen::MatrixXd A(X.rows(), X.cols() + 1);
    A.col(0).setOnes();
    A.rightCols(X.cols()) = X;
    return (A.transpose() * A).llt().solve(A.transpose() * y);
}

// Central finite differences of the MLP cost against every weight and bias.
inline double mlp_gradient_max_relative_error(const models::MlpModel& model, const Matrix& X, const Vector& y,
                                              double lambda, double step = 1e-6) {
    const auto g = models::mlp_gradient(model, X, y, lambda);
    double worst = 0.0;
    auto compare = [&](double analytic, double numeric) {
        const double denom = std::max({std::abs(analytic), std::abs(numeric), 1e-6});
        worst = std::max(worst, std::abs(analytic - numeric) / denom);
    };
    models::MlpModel probe = model;
    for (std::size_t l = 0; l < model.layers.size(); ++l) {
        for (Eigen::Index i = 0; i < model.layers[l].W.size(); ++i) {
            double& w = probe.layers[l].W.data()[i];
            const double keep = w;
            w = keep + step;
            const double up = models::mlp_cost(probe, X, y, lambda);
            w = keep - step;
            const double down = models::mlp_cost(probe, X, y, lambda);
            w = keep;
            compare(g.dW[l].data()[i], (up - down) / (2.0 * step));
        }
        for (Eigen::Index i = 0; i < model.layers[l].b.size(); ++i) {
            double& b = probe.layers[l].b(i);
            const double keep = b;
            b = keep + step;
            const double up = models::mlp_cost(probe, X, y, lambda);
            b = keep - step;
            const double down = models::mlp_cost(probe, X, y, lambda);
            b = keep;
            compare(g.db[l](i), (up - down) / (2.0 * step));
        }
    }
    return worst;
}

// Smallest |pre-activation| of any hidden unit over the batch (ReLU kink distance).
inline double min_abs_hidden_preactivation(const models::MlpModel& model, const Matrix& X) {
    double m = std::numeric_limits<double>::infinity();
    for (Eigen::Index r = 0; r < X.rows(); ++r) {
        const auto c = models::mlp_forward(model, row_span(X, r));
        for (std::size_t l = 0; l + 1 < c.z.size(); ++l) m = std::min(m, c.z[l].cwiseAbs().minCoeff());
    }
    return m;
}

// AdaBoost.R2 written out step by step: weighted bootstrap by inverse CDF, linear loss,
// beta = L/(1-L), weight update w_i *= beta^((1-L_i)*lr). Returns per-stage weights.
struct AdaBoostReference {
    std::vector<models::DecisionTree> trees;
    std::vector<double> stage_weights;
};

inline AdaBoostReference adaboost_reference(const Matrix& X, const Vector& y, int n_stages, double lr, int depth,
                                            std::uint64_t seed) {
    const auto n = static_cast<std::size_t>(X.rows());
    Rng rng(seed);
    std::vector<double> w(n, 1.0 / static_cast<double>(n));
    AdaBoostReference out;
    models::GrowOptions g;
    g.max_depth = depth;
    for (int m = 0; m < n_stages; ++m) {
        double total_w = 0.0;
        for (double v : w) total_w += v;
        std::vector<std::size_t> sample;
        for (std::size_t k = 0; k < n; ++k) {
            const double u = rng.uniform() * total_w;
            double cum = 0.0;
            std::size_t pick = n - 1;
            for (std::size_t i = 0; i < n; ++i) {
                cum += w[i];
                if (u < cum) {
                    pick = i;
                    break;
                }
            }
            sample.push_back(pick);
        }
        std::sort(sample.begin(), sample.end());
        auto tree = models::grow_tree(X, y, sample, g);
        std::vector<double> loss(n);
        double max_err = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            loss[i] = std::abs(tree.predict(row_span(X, static_cast<Eigen::Index>(i))) - y(static_cast<Eigen::Index>(i)));
            max_err = std::max(max_err, loss[i]);
        }
        if (max_err == 0.0) {
            out.trees.push_back(tree);
            out.stage_weights.push_back(1.0);
            break;
        }
        double avg = 0.0;
        for (std::size_t i = 0; i < n; ++i) avg += w[i] * loss[i] / max_err;
        if (avg >= 0.5) {
            if (out.trees.empty()) {
                out.trees.push_back(tree);
                out.stage_weights.push_back(1.0);
            }
            break;
        }
        const double beta = avg / (1.0 - avg);
        out.trees.push_back(tree);
        out.stage_weights.push_back(lr * std::log(1.0 / beta));
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            w[i] *= std::pow(beta, (1.0 - loss[i] / max_err) * lr);
            s += w[i];
        }
        for (auto& v : w) v /= s;
    }
    return out;
}

}  // namespace trm::testing
