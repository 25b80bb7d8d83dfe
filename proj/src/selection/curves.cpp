#include "trm/selection/curves.hpp"

#include <cmath>
#include <ostream>

#include <spdlog/spdlog.h>

#include "trm/common/error.hpp"
#include "trm/selection/search.hpp"

namespace trm::selection {

namespace {

std::pair<double, double> mean_std(const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m += x;
    m /= static_cast<double>(v.size());
    double s = 0.0;
    for (double x : v) s += (x - m) * (x - m);
    return {m, std::sqrt(s / static_cast<double>(v.size()))};
}

}  // namespace

std::vector<CurvePoint> learning_curve(models::Learner learner, const models::Params& params, const Matrix& X,
                                       const Vector& y, const std::vector<double>& fractions, std::size_t k,
                                       std::uint64_t seed) {
    if (fractions.empty()) throw InvalidArgument("learning_curve: no sizes requested");
    for (std::size_t i = 0; i < fractions.size(); ++i) {
        if (!(fractions[i] > 0.0 && fractions[i] <= 1.0))
            throw InvalidArgument("learning_curve: sizes must lie in (0, 1]");
        if (i > 0 && !(fractions[i] > fractions[i - 1])) throw InvalidArgument("learning_curve: sizes must ascend");
    }
    const auto folds = kfold_indices(static_cast<std::size_t>(X.rows()), k, seed);
    std::vector<std::vector<std::size_t>> shuffled;
    for (std::size_t f = 0; f < folds.size(); ++f) {
        auto rows = folds[f].train;
        Rng rng(derive_seed(seed, 1 + f));
        rng.shuffle(rows);
        shuffled.push_back(std::move(rows));
    }

    std::vector<CurvePoint> out;
    for (double frac : fractions) {
        const std::size_t smallest = folds.back().train.size();
        const auto n_sub = static_cast<std::size_t>(std::ceil(frac * static_cast<double>(smallest) - 1e-12));
        if (n_sub < 2) {
            spdlog::warn("learning curve: size {} gives {} training rows, skipped", frac, n_sub);
            continue;
        }
        std::vector<double> train_r2, cv_r2;
        for (std::size_t f = 0; f < folds.size(); ++f) {
            const std::vector<std::size_t> sub(shuffled[f].begin(), shuffled[f].begin() + static_cast<std::ptrdiff_t>(n_sub));
            const Matrix Xs = take_rows(X, sub);
            const Vector ys = take_rows(y, sub);
            const auto model = models::fit_model(learner, params, Xs, ys, derive_seed(seed, 100 + f));
            train_r2.push_back(compute_metrics(ys, models::predict(model, Xs)).r2);
            cv_r2.push_back(
                compute_metrics(take_rows(y, folds[f].validation), models::predict(model, take_rows(X, folds[f].validation))).r2);
        }
        CurvePoint p;
        p.fraction = frac;
        p.n_train = n_sub;
        std::tie(p.train_r2_mean, p.train_r2_std) = mean_std(train_r2);
        std::tie(p.cv_r2_mean, p.cv_r2_std) = mean_std(cv_r2);
        out.push_back(p);
    }
    return out;
}

void write_learning_curve_csv(std::ostream& out, const std::vector<CurvePoint>& points) {
    out << "fraction,n_train,train_r2_mean,train_r2_std,cv_r2_mean,cv_r2_std\n";
    out.precision(17);
    for (const auto& p : points)
        out << p.fraction << ',' << p.n_train << ',' << p.train_r2_mean << ',' << p.train_r2_std << ',' << p.cv_r2_mean
            << ',' << p.cv_r2_std << '\n';
}

}  // namespace trm::selection
