#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <sstream>

#include "trm/common/error.hpp"
#include "trm/common/random.hpp"
#include "trm/selection/curves.hpp"
#include "trm/selection/leaderboard.hpp"
#include "trm/selection/report.hpp"
#include "trm/selection/search.hpp"

namespace trm::selection {
namespace {

using models::Learner;
using models::Params;

Vector vec(std::initializer_list<double> v) {
    Vector out(static_cast<Eigen::Index>(v.size()));
    Eigen::Index i = 0;
    for (double x : v) out(i++) = x;
    return out;
}

Matrix random_matrix(Rng& rng, Eigen::Index n, Eigen::Index d) {
    Matrix X(n, d);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < d; ++j) X(i, j) = rng.normal();
    return X;
}

// ---------------------------------------------------------------- metrics

TEST(Metrics, HandArithmeticTriple) {
    const auto m = compute_metrics(vec({1, 2, 3}), vec({1, 2, 4}));
    EXPECT_DOUBLE_EQ(m.mse, 1.0 / 3.0);
    EXPECT_DOUBLE_EQ(m.rmse, std::sqrt(1.0 / 3.0));
    EXPECT_NEAR(m.rmse, 0.57735, 1e-5);
    EXPECT_DOUBLE_EQ(m.mae, 1.0 / 3.0);
    EXPECT_DOUBLE_EQ(m.mape, 1.0 / 9.0);
    EXPECT_DOUBLE_EQ(m.r2, 0.5);
}

TEST(Metrics, PerfectAndMeanPredictions) {
    const Vector y = vec({3, 1, 4, 1, 5});
    const auto perfect = compute_metrics(y, y);
    EXPECT_EQ(perfect.r2, 1.0);
    EXPECT_EQ(perfect.mse, 0.0);
    EXPECT_EQ(perfect.rmse, 0.0);
    EXPECT_EQ(perfect.mae, 0.0);
    EXPECT_EQ(perfect.mape, 0.0);
    const auto flat = compute_metrics(y, Vector::Constant(5, y.mean()));
    EXPECT_EQ(flat.r2, 0.0);
}

TEST(Metrics, ZeroTargetLeavesMapeUndefined) {
    const auto m = compute_metrics(vec({0, 1, 2}), vec({0.5, 1, 2}));
    EXPECT_FALSE(m.mape_defined);
    EXPECT_TRUE(std::isnan(m.mape));
    EXPECT_GT(m.mse, 0.0);
}

TEST(Metrics, RmseSquaredIsMseOnRandomData) {
    Rng rng(1);
    for (int t = 0; t < 200; ++t) {
        Vector y(20), p(20);
        for (int i = 0; i < 20; ++i) {
            y(i) = rng.uniform(1, 100);
            p(i) = y(i) + rng.normal(0, 10);
        }
        const auto m = compute_metrics(y, p);
        EXPECT_NEAR(m.rmse * m.rmse, m.mse, 1e-12 * m.mse);
        EXPECT_LE(m.r2, 1.0);
        EXPECT_GE(m.mape, 0.0);
    }
}

TEST(Metrics, RejectsShortOrMismatchedInput) {
    EXPECT_THROW(compute_metrics(vec({1}), vec({1})), InvalidArgument);
    EXPECT_THROW(compute_metrics(vec({1, 2}), vec({1, 2, 3})), InvalidArgument);
}

// ---------------------------------------------------------------- folds

TEST(KFold, TenRowsFiveFoldsOfTwo) {
    const auto folds = kfold_indices(10, 5, 3);
    ASSERT_EQ(folds.size(), 5u);
    for (const auto& f : folds) {
        EXPECT_EQ(f.validation.size(), 2u);
        EXPECT_EQ(f.train.size(), 8u);
    }
}

TEST(KFold, PartitionsExactlyForManyShapes) {
    for (std::size_t n = 2; n < 40; ++n)
        for (std::size_t k = 2; k <= std::min<std::size_t>(n, 7); ++k) {
            const auto folds = kfold_indices(n, k, n * 31 + k);
            std::vector<int> seen(n, 0);
            std::size_t lo = n, hi = 0;
            for (const auto& f : folds) {
                lo = std::min(lo, f.validation.size());
                hi = std::max(hi, f.validation.size());
                std::set<std::size_t> v(f.validation.begin(), f.validation.end());
                for (auto r : f.train) EXPECT_EQ(v.count(r), 0u);
                EXPECT_EQ(f.train.size() + f.validation.size(), n);
                for (auto r : f.validation) ++seen[r];
            }
            EXPECT_LE(hi - lo, 1u);
            for (int s : seen) EXPECT_EQ(s, 1);
        }
}

TEST(KFold, DeterministicAndRejectsBadK) {
    const auto a = kfold_indices(30, 5, 9);
    const auto b = kfold_indices(30, 5, 9);
    for (std::size_t f = 0; f < 5; ++f) EXPECT_EQ(a[f].validation, b[f].validation);
    EXPECT_THROW(kfold_indices(3, 4, 0), InvalidArgument);
    EXPECT_THROW(kfold_indices(10, 1, 0), InvalidArgument);
}

// ---------------------------------------------------------------- spaces

TEST(Space, CandidatesStayInsideTheirSpecsAndAreDistinct) {
    for (auto learner : models::all_learners()) {
        const auto space = default_space(learner, 100, 7);
        const auto c = sample_candidates(space);
        if (space.specs.empty()) {
            EXPECT_EQ(c.size(), 1u);
            continue;
        }
        const std::size_t expected = learner == Learner::knn ? 16u : learner == Learner::decision_tree ? 36u : 100u;
        EXPECT_EQ(c.size(), expected) << models::to_string(learner);
        for (const auto& p : c)
            for (const auto& s : space.specs) EXPECT_TRUE(s.contains(p.at(s.name))) << s.name;
        for (std::size_t i = 0; i < c.size(); ++i)
            for (std::size_t j = i + 1; j < c.size(); ++j) EXPECT_NE(c[i], c[j]);
    }
}

TEST(Space, DefaultRangesAreUsed) {
    const auto ridge = default_space(Learner::ridge);
    EXPECT_EQ(ridge.specs[0].lo, 0.0);
    EXPECT_EQ(ridge.specs[0].hi, 10.0);
    const auto knn = default_space(Learner::knn);
    EXPECT_EQ(knn.specs[0].lo, 5);
    EXPECT_EQ(knn.specs[0].hi, 20);
    const auto rf = default_space(Learner::random_forest);
    EXPECT_EQ(rf.specs[0].lo, 10);
    EXPECT_EQ(rf.specs[0].hi, 200);
    EXPECT_EQ(rf.specs[1].lo, 2);
    EXPECT_EQ(rf.specs[1].hi, 10);
    const auto gb = default_space(Learner::second_order_boosting);
    EXPECT_EQ(gb.specs[1].kind, SpecKind::log_uniform);
    EXPECT_EQ(gb.specs[1].lo, 0.01);
    EXPECT_EQ(gb.specs[1].hi, 1.0);
    EXPECT_EQ(default_space(Learner::decision_tree).specs[1].choices.size(), 4u);
    EXPECT_EQ(default_space(Learner::mlp).specs[2].choices.size(), 4u);
    EXPECT_EQ(default_space(Learner::mlp).n_candidates, 100u);
}

TEST(Space, LogUniformCoversBothDecades) {
    Rng rng(5);
    const auto s = log_uniform("lr", 0.01, 1.0);
    int low = 0;
    for (int i = 0; i < 2000; ++i) low += std::get<double>(s.sample(rng)) < 0.1 ? 1 : 0;
    EXPECT_GT(low, 850);
    EXPECT_LT(low, 1150);
}

// ---------------------------------------------------------------- search

struct Data {
    Matrix X;
    Vector y;
};

Data tree_data(std::uint64_t seed, Eigen::Index n = 80) {
    Rng rng(seed);
    Data d{random_matrix(rng, n, 3), Vector(n)};
    // Depth-2 tree: split on x0, then on x1 (left) or x2 (right).
    for (Eigen::Index i = 0; i < n; ++i) {
        const double a = d.X(i, 0), b = d.X(i, 1), c = d.X(i, 2);
        d.y(i) = a <= 0 ? (b <= 0 ? 10 : 20) : (c <= 0.5 ? 30 : 45);
        d.y(i) += 0.3 * rng.normal();
    }
    return d;
}

TEST(Search, SingletonSpaceReturnsItself) {
    const auto d = tree_data(1);
    HyperSpace s;
    s.specs = {integer("max_depth", 3, 3)};
    s.fixed = {{"criterion", std::string("squared_error")}};
    const auto r = randomized_search(Learner::decision_tree, s, d.X, d.y, {});
    ASSERT_EQ(r.ranked.size(), 1u);
    EXPECT_EQ(r.best().rank, 1u);
    EXPECT_EQ(std::get<std::int64_t>(r.best().params.at("max_depth")), 3);
    ASSERT_TRUE(r.best_model.has_value());
}

TEST(Search, RankingMatchesExhaustiveGridOnSameFolds) {
    const auto d = tree_data(2);
    HyperSpace s;
    s.specs = {integer("max_depth", 1, 6)};
    s.n_candidates = 100;
    s.seed = 3;
    SearchOptions o;
    o.seed = 11;
    const auto r = randomized_search(Learner::decision_tree, s, d.X, d.y, o);
    ASSERT_EQ(r.ranked.size(), 6u);

    // Oracle: evaluate every depth on the same folds with a plain loop.
    const auto folds = kfold_indices(80, 5, 11);
    std::map<std::int64_t, double> oracle;
    for (std::int64_t depth = 1; depth <= 6; ++depth) {
        double sum = 0.0;
        for (const auto& f : folds) {
            Matrix Xt(static_cast<Eigen::Index>(f.train.size()), 3);
            Vector yt(static_cast<Eigen::Index>(f.train.size()));
            for (std::size_t i = 0; i < f.train.size(); ++i) {
                Xt.row(static_cast<Eigen::Index>(i)) = d.X.row(static_cast<Eigen::Index>(f.train[i]));
                yt(static_cast<Eigen::Index>(i)) = d.y(static_cast<Eigen::Index>(f.train[i]));
            }
            const auto tree = models::fit_cart(Xt, yt, static_cast<int>(depth));
            double ss_res = 0.0, ss_tot = 0.0, mean = 0.0;
            for (auto v : f.validation) mean += d.y(static_cast<Eigen::Index>(v));
            mean /= static_cast<double>(f.validation.size());
            for (auto v : f.validation) {
                const double e = d.y(static_cast<Eigen::Index>(v)) - tree.predict(row_span(d.X, static_cast<Eigen::Index>(v)));
                ss_res += e * e;
                ss_tot += std::pow(d.y(static_cast<Eigen::Index>(v)) - mean, 2);
            }
            sum += 1.0 - ss_res / ss_tot;
        }
        oracle[depth] = sum / 5.0;
    }
    for (const auto& c : r.ranked)
        EXPECT_NEAR(c.mean.r2, oracle.at(std::get<std::int64_t>(c.params.at("max_depth"))), 1e-12);
    for (std::size_t i = 1; i < r.ranked.size(); ++i) EXPECT_GE(r.ranked[i - 1].mean.r2, r.ranked[i].mean.r2);
    const auto depth1 = std::find_if(r.ranked.begin(), r.ranked.end(), [](const CvResult& c) {
        return std::get<std::int64_t>(c.params.at("max_depth")) == 1;
    });
    EXPECT_EQ(depth1->rank, 6u);
    EXPECT_GE(std::get<std::int64_t>(r.best().params.at("max_depth")), 2);
}

TEST(Search, IdenticalSeedsGiveIdenticalReports) {
    const auto d = tree_data(4, 50);
    auto space = default_space(Learner::gradient_boosting, 6, 21);
    space.specs[0] = integer("n_stages", 5, 30);
    SearchOptions o;
    o.seed = 5;
    o.refit = false;
    const auto a = search_report(randomized_search(Learner::gradient_boosting, space, d.X, d.y, o)).dump(2);
    const auto b = search_report(randomized_search(Learner::gradient_boosting, space, d.X, d.y, o)).dump(2);
    EXPECT_EQ(a, b);
    o.seed = 6;
    const auto c = search_report(randomized_search(Learner::gradient_boosting, space, d.X, d.y, o)).dump(2);
    EXPECT_NE(a, c);
}

TEST(Search, FailedCandidatesAreRecordedAndRankedLast) {
    const auto d = tree_data(5, 30);
    HyperSpace s;
    s.specs = {integer("k", 1, 40)};  // k above the fold's training size fails
    s.n_candidates = 40;
    const auto r = randomized_search(Learner::knn, s, d.X, d.y, {});
    std::size_t failed = 0;
    for (const auto& c : r.ranked) {
        if (c.failed) {
            ++failed;
            EXPECT_FALSE(c.error.empty());
        }
    }
    EXPECT_EQ(failed, 40u - 24u);
    EXPECT_FALSE(r.ranked.front().failed);
    EXPECT_TRUE(r.ranked.back().failed);
    const auto report = search_report(r);
    EXPECT_EQ(report.at("n_failed").get<std::size_t>(), failed);
}

TEST(Search, AllFailedIsAnError) {
    const auto d = tree_data(6, 20);
    HyperSpace s;
    s.specs = {integer("k", 30, 40)};
    EXPECT_THROW(randomized_search(Learner::knn, s, d.X, d.y, {}), NumericalError);
}

TEST(Search, SpaceJsonRoundTrip) {
    const auto s = default_space(Learner::mlp, 17, 4);
    const json j = s;
    const auto back = j.get<HyperSpace>();
    EXPECT_EQ(back.n_candidates, 17u);
    EXPECT_EQ(sample_candidates(back), sample_candidates(s));
}

// ---------------------------------------------------------------- voting, curves, leaderboard

TEST(Voting, MeanOfTwoMembers) {
    Matrix X(2, 1);
    X << 0, 1;
    const auto a = models::fit_model(Learner::mean, {}, X, vec({10, 10}), 0);
    const auto b = models::fit_model(Learner::mean, {}, X, vec({20, 20}), 0);
    const auto v = models::make_voting({a, b});
    const std::vector<double> q{0.5};
    EXPECT_EQ(models::predict(v, q), 15.0);
}

TEST(LearningCurve, MeanPredictorHasZeroTrainR2AndSizesEchoed) {
    const auto d = tree_data(7, 60);
    const std::vector<double> sizes{0.1, 0.25, 0.5, 1.0};
    const auto pts = learning_curve(Learner::mean, {}, d.X, d.y, sizes, 5, 3);
    ASSERT_EQ(pts.size(), 4u);
    for (std::size_t i = 0; i < pts.size(); ++i) {
        EXPECT_EQ(pts[i].fraction, sizes[i]);
        EXPECT_EQ(pts[i].train_r2_mean, 0.0);
        if (i > 0) EXPECT_GT(pts[i].n_train, pts[i - 1].n_train);
    }
    EXPECT_EQ(pts.back().n_train, 48u);
}

TEST(LearningCurve, SkipsTinySizesAndRejectsUnsorted) {
    const auto d = tree_data(8, 20);
    const auto pts = learning_curve(Learner::mean, {}, d.X, d.y, {0.01, 0.5}, 5, 3);
    ASSERT_EQ(pts.size(), 1u);
    EXPECT_EQ(pts[0].fraction, 0.5);
    EXPECT_THROW(learning_curve(Learner::mean, {}, d.X, d.y, {0.5, 0.2}, 5, 3), InvalidArgument);
    EXPECT_THROW(learning_curve(Learner::mean, {}, d.X, d.y, {1.5}, 5, 3), InvalidArgument);
    std::ostringstream os;
    write_learning_curve_csv(os, pts);
    EXPECT_EQ(os.str().substr(0, 8), "fraction");
}

TEST(LearningCurve, CvScoreRisesWithDataForATree) {
    const auto d = tree_data(9, 150);
    const auto pts = learning_curve(Learner::decision_tree, {{"max_depth", std::int64_t{3}}}, d.X, d.y, {0.1, 1.0}, 5, 1);
    EXPECT_LT(pts.front().cv_r2_mean, pts.back().cv_r2_mean);
}

TEST(Leaderboard, SortsByTestR2AndBreaksTiesByName) {
    const auto d = tree_data(10, 60);
    const Matrix Xtr = d.X.topRows(45), Xte = d.X.bottomRows(15);
    const Vector ytr = d.y.head(45), yte = d.y.tail(15);
    const auto tree = models::fit_model(Learner::decision_tree, {{"max_depth", std::int64_t{3}}}, Xtr, ytr, 0);
    const auto mean = models::fit_model(Learner::mean, {}, Xtr, ytr, 0);
    const auto board = compare_models({{"zeta", &tree}, {"mean", &mean}, {"alpha", &tree}}, Xtr, ytr, Xte, yte);
    ASSERT_EQ(board.rows.size(), 3u);
    EXPECT_EQ(board.rows[0].name, "alpha");
    EXPECT_EQ(board.rows[1].name, "zeta");
    EXPECT_EQ(board.rows[2].name, "mean");
    EXPECT_EQ(board.rows[0].test.r2, board.rows[1].test.r2);
    EXPECT_EQ(board.order_by("rmse").front(), "alpha");
    EXPECT_EQ(board.order_by("rmse").back(), "mean");
    const auto j = leaderboard_report(board);
    EXPECT_EQ(j.at("rows").size(), 3u);
    std::ostringstream os;
    write_prediction_csv(os, tree, Xtr, ytr, Xte, yte);
    const std::string text = os.str();
    EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 61);
}

}  // namespace
}  // namespace trm::selection
