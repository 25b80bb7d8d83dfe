// Acceptance suite: one PASS/FAIL line per criterion, non-zero exit if any criterion fails.
//
//   acceptance [--only <substring>] [--cli <path to trm>] [--workdir <dir>]

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>

#include <spdlog/spdlog.h>

#include "support/cooks_oracle.hpp"
#include "support/interpret_oracles.hpp"
#include "support/model_oracles.hpp"
#include "trm/common/random.hpp"
#include "trm/data/cooks.hpp"
#include "trm/data/synthetic.hpp"
#include "trm/interpret/dependence.hpp"
#include "trm/models/ensemble.hpp"
#include "trm/selection/report.hpp"
#include "trm/selection/search.hpp"
#include "trm/service/service.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace trm;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

struct Criterion {
    std::string name;
    double time_limit_s = 0.0;  ///< 0 = no runtime bound
    std::function<Outcome()> run;
};

std::string num(const char* f, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

Matrix random_matrix(Rng& rng, Eigen::Index n, Eigen::Index d) {
    Matrix X(n, d);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < d; ++j) X(i, j) = rng.normal();
    return X;
}

std::vector<std::size_t> iota(std::size_t n) {
    std::vector<std::size_t> r(n);
    for (std::size_t i = 0; i < n; ++i) r[i] = i;
    return r;
}

// ---------------------------------------------------------------- data

Outcome cooks() {
    Rng rng(20240611);
    double worst = 0.0;
    int recovered = 0;
    std::string misses;
    const int trials = 200;
    for (int t = 0; t < trials; ++t) {
        const auto n = 10 + static_cast<Eigen::Index>(rng.below(41));
        const auto d = 1 + static_cast<Eigen::Index>(rng.below(5));
        Matrix X = random_matrix(rng, n, d);
        Vector y(n);
        std::vector<RowId> ids;
        for (Eigen::Index i = 0; i < n; ++i) {
            y(i) = 1.0 + X.row(i).sum() + 0.1 * rng.normal();
            ids.push_back(i);
        }
        const auto report = data::cooks_distance(X, y, ids, {});
        const auto oracle = testing::cooks_leave_one_out(X, y);
        for (std::size_t i = 0; i < oracle.size(); ++i)
            worst = std::max(worst, std::abs(report.distances[i] - oracle[i]) / std::max(std::abs(oracle[i]), 1e-300));

        // Planted gross error: shift one row's response by 50 noise-free units.
        const auto planted = static_cast<Eigen::Index>(rng.below(static_cast<std::uint64_t>(n)));
        y(planted) += 50.0;
        const auto flagged = data::cooks_distance(X, y, ids, {}).flagged;
        if (std::find(flagged.begin(), flagged.end(), planted) != flagged.end()) ++recovered;
        else misses += " n=" + std::to_string(n) + ",d=" + std::to_string(d);
    }
    return {worst < 1e-8 && recovered == trials,
            "max relative error " + num("%.2e", worst) + ", planted outliers recovered " + std::to_string(recovered) +
                "/" + std::to_string(trials) + (misses.empty() ? "" : " (missed at" + misses + ")")};
}

Outcome scaling() {
    auto records = data::generate_wall_records(1000, 77);
    const auto raw = data::from_records(records, data::wall_schema());
    const auto [encoded, state] = data::encode_one_hot(raw);
    const auto scaler = data::fit_scaler(encoded);
    const Matrix Z = data::apply_scaler(scaler, encoded.features);
    double worst_mu = 0.0, worst_sigma = 0.0;
    for (auto c : scaler.positions) {
        const auto col = Z.col(static_cast<Eigen::Index>(c));
        const double mu = col.mean();
        const double sigma = std::sqrt((col.array() - mu).square().mean());
        worst_mu = std::max(worst_mu, std::abs(mu));
        worst_sigma = std::max(worst_sigma, std::abs(sigma - 1.0));
    }
    bool one_hot = true;
    for (const auto& m : state.category_maps)
        for (Eigen::Index r = 0; r < Z.rows(); ++r) {
            double sum = 0.0;
            for (std::size_t k = 0; k < m.categories.size(); ++k) {
                const double v = Z(r, static_cast<Eigen::Index>(m.first_index + k));
                one_hot = one_hot && (v == 0.0 || v == 1.0);
                sum += v;
            }
            one_hot = one_hot && sum == 1.0;
        }
    return {worst_mu < 1e-10 && worst_sigma < 1e-10 && one_hot,
            "max |mean| " + num("%.2e", worst_mu) + ", max |sigma-1| " + num("%.2e", worst_sigma) +
                (one_hot ? ", one-hot groups exact on 1000 rows" : ", one-hot violation")};
}

// ---------------------------------------------------------------- models

Outcome linear() {
    Rng rng(11);
    double ols = 0.0, kkt = 0.0;
    for (int t = 0; t < 50; ++t) {
        const auto n = 20 + static_cast<Eigen::Index>(rng.below(40));
        const auto d = 1 + static_cast<Eigen::Index>(rng.below(6));
        const Matrix X = random_matrix(rng, n, d);
        Vector y(n);
        for (Eigen::Index i = 0; i < n; ++i) y(i) = X.row(i).sum() + rng.normal(0.0, 2.0);
        const auto m = models::fit_linear(X, y, 0.0, 0.0);
        const auto beta = testing::normal_equations(X, y);
        ols = std::max(ols, std::abs(m.intercept - beta(0)));
        for (Eigen::Index j = 0; j < d; ++j) ols = std::max(ols, std::abs(m.weights(j) - beta(j + 1)));

        const auto lasso = models::fit_linear(X, y, rng.uniform(0.01, 1.0), 1.0);
        kkt = std::max(kkt, testing::elastic_net_kkt_violation(X, y, lasso));
    }
    return {ols < 1e-8 && kkt < 1e-6,
            "OLS vs normal equations " + num("%.2e", ols) + ", worst lasso KKT violation " + num("%.2e", kkt) +
                " over 50 problems"};
}

Outcome cart() {
    Rng rng(5);
    const models::Criterion crits[] = {models::Criterion::squared_error, models::Criterion::friedman_mse,
                                       models::Criterion::absolute_error, models::Criterion::poisson};
    int optimal = 0, checked_nodes = 0;
    double worst_gap = 0.0;
    for (int t = 0; t < 100; ++t) {
        const auto n = 5 + static_cast<Eigen::Index>(rng.below(46));
        const auto d = 1 + static_cast<Eigen::Index>(rng.below(4));
        Matrix X(n, d);
        Vector y(n);
        for (Eigen::Index i = 0; i < n; ++i) {
            for (Eigen::Index j = 0; j < d; ++j) X(i, j) = std::round(rng.normal() * 4.0) / 4.0;
            y(i) = std::exp(0.5 * X(i, 0)) + rng.uniform();
        }
        const auto c = crits[t % 4];
        const auto tree = models::fit_cart(X, y, 4, 1, c);
        const auto rows = testing::rows_per_node(tree, X, iota(static_cast<std::size_t>(n)));
        bool ok = true;
        for (std::size_t i = 0; i < tree.nodes.size(); ++i) {
            const auto& node = tree.nodes[i];
            if (node.is_leaf()) continue;
            ++checked_nodes;
            std::size_t nl = 0, nr = 0;
            const double chosen = testing::split_reduction(X, y, rows[i], node.feature, node.threshold, c, &nl, &nr);
            const auto best = testing::best_split_exhaustive(X, y, rows[i], c);
            const double gap = best.reduction - chosen;
            worst_gap = std::max(worst_gap, gap);
            ok = ok && nl > 0 && nr > 0 && gap <= 1e-9 * std::max(1.0, std::abs(best.reduction));
        }
        optimal += ok;
    }
    return {optimal == 100, std::to_string(optimal) + "/100 trees optimal at all " + std::to_string(checked_nodes) +
                                " splits, largest shortfall " + num("%.2e", worst_gap)};
}

Outcome boosting() {
    Rng rng(9);
    double worst_mse = 0.0, worst_decomp = 0.0;
    bool full_leaves = true;
    for (int t = 0; t < 20; ++t) {
        const auto n = 5 + static_cast<Eigen::Index>(rng.below(16));
        Matrix X(n, 2);
        Vector y(n);
        for (Eigen::Index i = 0; i < n; ++i) {
            X(i, 0) = static_cast<double>(i) + rng.uniform(0.0, 0.5);  // distinct rows
            X(i, 1) = rng.normal();
            y(i) = std::sin(X(i, 0)) + rng.normal();
        }
        models::BoostingOptions o;
        o.learning_rate = 1.0;
        o.max_depth = 0;
        o.n_stages = 5;
        const auto e = models::fit_gradient_boosting(X, y, o);
        double mse = 0.0;
        for (Eigen::Index i = 0; i < n; ++i) {
            const auto x = row_span(X, i);
            const double p = e.predict(x);
            mse += (p - y(i)) * (p - y(i)) / static_cast<double>(n);
            double manual = e.initial;
            for (std::size_t m = 0; m < e.trees.size(); ++m) manual += e.learning_rates[m] * e.trees[m].predict(x);
            worst_decomp = std::max(worst_decomp, std::abs(manual - p));
        }
        worst_mse = std::max(worst_mse, mse);

        const Matrix Xo = random_matrix(rng, 40, 3);
        models::BoostingOptions ob;
        ob.variant = models::BoostingVariant::oblivious;
        ob.max_depth = 1 + static_cast<int>(rng.below(5));
        ob.n_stages = 4;
        const auto eo = models::fit_gradient_boosting(Xo, Xo.col(0).array().square().matrix(), ob);
        for (const auto& tree : eo.trees) full_leaves = full_leaves && tree.leaf_count() == (std::size_t{1} << tree.depth());
    }
    return {worst_mse < 1e-12 && worst_decomp == 0.0 && full_leaves,
            "max train MSE " + num("%.2e", worst_mse) + ", decomposition error " + num("%.1e", worst_decomp) +
                (full_leaves ? ", oblivious trees have 2^d leaves" : ", oblivious leaf count wrong")};
}

Outcome mlp() {
    Rng rng(31);
    double worst = 0.0;
    int nets = 0;
    for (auto act : {models::Activation::sigmoid, models::Activation::tanh, models::Activation::identity,
                     models::Activation::relu}) {
        int checked = 0;
        for (int attempt = 0; checked < 20 && attempt < 500; ++attempt) {
            const int in = 1 + static_cast<int>(rng.below(5));
            const int hidden = 1 + static_cast<int>(rng.below(6));
            auto m = models::init_mlp({in, hidden, 1}, act, rng.next_u64());
            for (auto& l : m.layers) l.b = Vector::NullaryExpr(l.b.size(), [&] { return rng.normal(0.0, 0.3); });
            const Matrix X = random_matrix(rng, 8, in);
            Vector y(8);
            for (Eigen::Index i = 0; i < 8; ++i) y(i) = rng.normal();
            if (act == models::Activation::relu && testing::min_abs_hidden_preactivation(m, X) <= 1e-3) continue;
            worst = std::max(worst, testing::mlp_gradient_max_relative_error(m, X, y, rng.uniform(0.0, 0.5)));
            ++checked;
        }
        nets += checked;
    }
    return {worst < 1e-5 && nets == 80,
            std::to_string(nets) + " nets (20 per activation), max relative error " + num("%.2e", worst)};
}

// ---------------------------------------------------------------- selection

Outcome metrics() {
    Vector y(3), yh(3);
    y << 1, 2, 3;
    yh << 1, 2, 4;
    const auto m = selection::compute_metrics(y, yh);
    const bool exact = m.mse == 1.0 / 3.0 && m.r2 == 0.5 && m.mape == 1.0 / 9.0;
    Rng rng(4);
    double worst = 0.0;
    for (int t = 0; t < 100; ++t) {
        Vector a(20), b(20);
        for (int i = 0; i < 20; ++i) {
            a(i) = rng.uniform(1.0, 100.0);
            b(i) = a(i) + rng.normal(0.0, 10.0);
        }
        const auto r = selection::compute_metrics(a, b);
        worst = std::max(worst, std::abs(r.rmse * r.rmse - r.mse) / std::max(1.0, r.mse));
    }
    return {exact && worst < 1e-12, std::string(exact ? "triple exact" : "triple mismatch") + " (mse " +
                                        num("%.17g", m.mse) + ", r2 " + num("%.17g", m.r2) + ", mape " +
                                        num("%.17g", m.mape) + "), max |rmse^2-mse| " + num("%.1e", worst)};
}

Outcome search() {
    Rng rng(8);
    bool partition = true;
    for (int t = 0; t < 50; ++t) {
        const std::size_t n = 5 + rng.below(200), k = 2 + rng.below(std::min<std::size_t>(n - 1, 9));
        const auto folds = selection::kfold_indices(n, k, rng.next_u64());
        std::vector<int> seen(n, 0);
        for (const auto& f : folds) {
            for (auto i : f.validation) ++seen[i];
            std::set<std::size_t> train(f.train.begin(), f.train.end());
            partition = partition && train.size() + f.validation.size() == n;
            for (auto i : f.validation) partition = partition && !train.count(i);
        }
        for (int s : seen) partition = partition && s == 1;
    }
    const Matrix X = random_matrix(rng, 60, 4);
    Vector y(60);
    for (Eigen::Index i = 0; i < 60; ++i) y(i) = X(i, 0) * X(i, 1) + X(i, 2);
    selection::SearchOptions o;
    o.seed = 42;
    o.refit = false;
    const auto space = selection::default_space(models::Learner::gradient_boosting, 12, 3);
    const auto a = selection::search_report(selection::randomized_search(models::Learner::gradient_boosting, space, X, y, o)).dump();
    const auto b = selection::search_report(selection::randomized_search(models::Learner::gradient_boosting, space, X, y, o)).dump();

    selection::HyperSpace single;
    single.fixed = {{"alpha", 0.7}};
    single.n_candidates = 10;
    const auto s = selection::randomized_search(models::Learner::ridge, single, X, y, o);
    const bool singleton = s.ranked.size() == 1 && s.best().params == single.fixed;
    return {partition && a == b && singleton,
            std::string(partition ? "folds partition exactly" : "fold partition broken") +
                (a == b ? ", reports byte-identical (" + std::to_string(a.size()) + " bytes)" : ", reports differ") +
                (singleton ? ", singleton space returns itself" : ", singleton space altered")};
}

// ---------------------------------------------------------------- interpret

Outcome shapley() {
    Rng rng(13);
    double worst_eff = 0.0;
    int instances = 0;
    const models::Learner learners[] = {models::Learner::gradient_boosting, models::Learner::random_forest,
                                        models::Learner::mlp, models::Learner::knn, models::Learner::ridge};
    for (int mdl = 0; mdl < 10; ++mdl) {
        const auto d = 2 + static_cast<Eigen::Index>(rng.below(9));  // 2..10 features
        const Matrix X = random_matrix(rng, 60, d);
        Vector y(60);
        for (Eigen::Index i = 0; i < 60; ++i) y(i) = X(i, 0) * X(i, d - 1) + std::sin(X.row(i).sum());
        const auto model = models::fit_model(learners[mdl % 5], {}, X, y, static_cast<std::uint64_t>(mdl));
        const auto f = interpret::predictor_of(model);
        const Matrix bg = X.topRows(20);
        for (Eigen::Index r = 0; r < 10; ++r) {
            const auto a = interpret::shapley_exact(f, row_span(X, 20 + r), bg,
                                                    interpret::singleton_groups(static_cast<std::size_t>(d)));
            double total = a.base_value;
            for (double p : a.phi) total += p;
            worst_eff = std::max(worst_eff, std::abs(total - a.prediction));
            ++instances;
        }
    }

    // Additive closed form plus a null feature.
    const Matrix bg = random_matrix(rng, 25, 4);
    const interpret::Predictor add = [](std::span<const double> x) { return std::sin(x[0]) + x[1] * x[1] + 3.0 * x[2]; };
    double worst_closed = 0.0, null_phi = 0.0, worst_enum = 0.0;
    for (int t = 0; t < 10; ++t) {
        std::vector<double> x = {rng.normal(), rng.normal(), rng.normal(), rng.normal()};
        const auto a = interpret::shapley_exact(add, x, bg, interpret::singleton_groups(4));
        const auto oracle = testing::shapley_by_subsets(add, x, bg);
        double m0 = 0, m1 = 0, m2 = 0;
        for (Eigen::Index r = 0; r < bg.rows(); ++r) {
            m0 += std::sin(bg(r, 0));
            m1 += bg(r, 1) * bg(r, 1);
            m2 += 3.0 * bg(r, 2);
        }
        const double nb = static_cast<double>(bg.rows());
        const double closed[3] = {std::sin(x[0]) - m0 / nb, x[1] * x[1] - m1 / nb, 3.0 * x[2] - m2 / nb};
        for (int j = 0; j < 3; ++j) worst_closed = std::max(worst_closed, std::abs(a.phi[j] - closed[j]));
        for (int j = 0; j < 4; ++j) worst_enum = std::max(worst_enum, std::abs(a.phi[j] - oracle[j]));
        null_phi = std::max(null_phi, std::abs(a.phi[3]));
    }

    // Sampled convergence on an 8-feature interacting model.
    const Matrix bg8 = random_matrix(rng, 12, 8);
    const interpret::Predictor g = [](std::span<const double> x) {
        return x[0] * x[1] - x[2] * x[3] * x[4] + std::tanh(x[5] + x[6]) * x[7];
    };
    std::vector<double> dev;
    for (std::size_t n : {100u, 1000u, 10000u}) {
        double s = 0.0;
        for (int t = 0; t < 3; ++t) {
            const auto x = row_span(bg8, t);
            const auto exact = interpret::shapley_exact(g, x, bg8, interpret::singleton_groups(8));
            const auto sampled = interpret::shapley_sampled(g, x, bg8, interpret::singleton_groups(8), n, derive_seed(99, t));
            for (int j = 0; j < 8; ++j) s += std::abs(sampled.phi[j] - exact.phi[j]);
        }
        dev.push_back(s / 24.0);
    }
    const bool monotone = dev[0] > dev[1] && dev[1] > dev[2];
    return {worst_eff < 1e-8 && instances == 100 && worst_closed < 1e-8 && worst_enum < 1e-8 && null_phi == 0.0 &&
                monotone,
            "efficiency " + num("%.1e", worst_eff) + " on " + std::to_string(instances) + " instances, closed form " +
                num("%.1e", worst_closed) + ", subset enumeration " + num("%.1e", worst_enum) + ", null |phi| " +
                num("%.1e", null_phi) + ", sampled deviation " + num("%.4f", dev[0]) + " > " + num("%.4f", dev[1]) +
                " > " + num("%.4f", dev[2])};
}

Outcome ice_pdp() {
    Rng rng(17);
    const Matrix X = random_matrix(rng, 40, 5);
    Vector y(40);
    for (Eigen::Index i = 0; i < 40; ++i) y(i) = X(i, 0) * X(i, 1) + X(i, 2);
    const auto model = models::fit_model(models::Learner::random_forest, {}, X, y, 3);
    const auto f = interpret::predictor_of(model);
    bool exact = true;
    for (std::size_t c = 0; c < 5; ++c) {
        const auto d = interpret::ice_pdp(f, X, c, "x", 15);
        for (std::size_t g = 0; g < d.grid.size(); ++g) {
            double s = 0.0;
            for (const auto& curve : d.ice) s += curve[g];
            exact = exact && d.pdp[g] == s / static_cast<double>(d.ice.size());
        }
    }
    const interpret::Predictor add = [](std::span<const double> x) {
        return std::exp(x[0]) + std::sin(x[1]) * 4.0 + x[2] * x[2] - x[3] + 0.5 * x[4];
    };
    double worst = 0.0;
    for (std::size_t c = 0; c < 5; ++c) {
        const auto d = interpret::ice_pdp(add, X, c, "x", 25);
        for (std::size_t a = 1; a < d.ice.size(); ++a) {
            const double gap = d.ice[a][0] - d.ice[0][0];
            for (std::size_t g = 1; g < d.grid.size(); ++g) worst = std::max(worst, std::abs(d.ice[a][g] - d.ice[0][g] - gap));
        }
    }
    return {exact && worst < 1e-10, std::string(exact ? "pdp == mean(ice) bit-exact" : "pdp != mean(ice)") +
                                        ", additive-model curve spread " + num("%.1e", worst)};
}

// ---------------------------------------------------------------- service

service::ModelArtifact small_artifact() {
    const auto records = data::generate_wall_records(80, 12);
    const auto prepared = data::preprocess(data::from_records(records, data::wall_schema()));
    const auto split = data::make_split(prepared, 0.15, 1);
    auto model = models::fit_model(models::Learner::second_order_boosting,
                                   {{"n_stages", std::int64_t{40}}, {"max_depth", std::int64_t{3}}},
                                   split.train.features, split.train.target, 5);
    return service::make_artifact(prepared.state, split.scaler, std::move(model), split.train.features,
                                  {{"purpose", "acceptance"}}, 2);
}

json record_json(const data::WallRecord& r) {
    const auto& s = data::wall_schema();
    json j = json::object();
    for (std::size_t c = 0; c < s.categorical_columns.size(); ++c) j[s.categorical_columns[c].name] = r.categorical[c];
    for (std::size_t k = 0; k < s.numeric_columns.size(); ++k) j[s.numeric_columns[k].name] = r.numeric[k];
    return j;
}

Outcome artifact_round_trip() {
    const auto a = small_artifact();
    const auto path = fs::temp_directory_path() / "trm_acceptance.artifact.json";
    service::save_artifact(a, path);
    const auto b = service::load_artifact(path);
    auto rows = data::generate_wall_records(100, 555);
    for (auto& r : rows) r.target.reset();
    const Vector before = service::predict_records(a, rows), after = service::predict_records(b, rows);
    int identical = 0;
    for (Eigen::Index i = 0; i < 100; ++i) identical += before(i) == after(i);
    auto j = service::to_json(a);
    j["format_version"] = "2.0";
    bool rejected = false;
    try {
        service::artifact_from_json(j);
    } catch (const service::ArtifactError&) {
        rejected = true;
    }
    fs::remove(path);
    return {identical == 100 && rejected, std::to_string(identical) + "/100 predictions bit-identical after reload, " +
                                              (rejected ? "version 2.0 rejected" : "version 2.0 accepted")};
}

Outcome service_api() {
    const service::PredictionService svc(small_artifact());
    double worst = 0.0;
    int explained = 0;
    for (const auto& rec : data::generate_wall_records(10, 321)) {
        const auto r = svc.handle("POST", "/explain", record_json(rec).dump());
        if (r.status != 200) return {false, "/explain returned " + std::to_string(r.status) + ": " + r.body.dump()};
        double total = r.body["base_value"].get<double>();
        for (const auto& c : r.body["contributions"]) total += c["value"].get<double>();
        worst = std::max(worst, std::abs(total - r.body["prediction_kN"].get<double>()));
        ++explained;
    }
    auto bad = record_json(data::generate_wall_records(1, 4).front());
    bad["E_f"] = "stiff";
    const auto r = svc.handle("POST", "/predict", bad.dump());
    const bool named = r.status == 400 && r.body["field"] == "E_f";
    return {worst < 1e-6 && named,
            "/explain efficiency " + num("%.1e", worst) + " over " + std::to_string(explained) + " requests, invalid field -> " +
                std::to_string(r.status) + " naming '" + (r.body["field"].is_string() ? r.body["field"].get<std::string>() : "") +
                "', no web client in this build"};
}

// ---------------------------------------------------------------- end to end

struct E2EConfig {
    std::string cli;
    fs::path workdir;
};

// Fixed protocol: 110 synthetic rows (seed 1, 5% noise), default preprocessing, a 15% hold-out
// (split seed 3), 100 candidates x 5 folds per learner (search seed 7), blend of the two best
// learners by mean cross-validated R².
Outcome end_to_end(const E2EConfig& cfg) {
    fs::create_directories(cfg.workdir);
    auto run = [&](const std::string& args) {
        const std::string cmd = "\"" + cfg.cli + "\" -q " + args + " 2>&1";
        if (std::system(cmd.c_str()) != 0) throw Error("command failed: trm " + args);
    };
    auto at = [&](const std::string& f) { return "\"" + (cfg.workdir / f).string() + "\""; };
    const std::string split = " --split-seed 3 --test-fraction 0.15";

    run("synth --rows 110 --seed 1 --noise 0.05 --out " + at("data.csv"));
    run("preprocess --input " + at("data.csv") + " --out " + at("prep.json") + " --report " + at("cooks.json"));

    struct Ranked {
        std::string learner;
        double r2, rmse;
    };
    std::vector<Ranked> ranked;
    for (auto learner : models::all_learners()) {
        const std::string name = models::to_string(learner);
        run("tune --method " + name + " --data " + at("prep.json") + " --folds 5 --candidates 100 --seed 7" + split +
            " --out " + at("search_" + name + ".json"));
        std::ifstream in(cfg.workdir / ("search_" + name + ".json"));
        const auto j = json::parse(in);
        ranked.push_back({name, j["best"]["mean"]["r2"].get<double>(), j["best"]["mean"]["rmse"].get<double>()});
    }
    std::stable_sort(ranked.begin(), ranked.end(), [](const Ranked& a, const Ranked& b) {
        return a.r2 != b.r2 ? a.r2 > b.r2 : a.rmse < b.rmse;
    });
    const auto& m1 = ranked[0].learner;
    const auto& m2 = ranked[1].learner;
    run("train --config " + at("search_" + m1 + ".json") + " --data " + at("prep.json") + split + " --out " + at(m1 + ".model.json"));
    run("train --config " + at("search_" + m2 + ".json") + " --data " + at("prep.json") + split + " --out " + at(m2 + ".model.json"));
    run("train --config " + at("search_" + m1 + ".json") + " --config " + at("search_" + m2 + ".json") + " --data " +
        at("prep.json") + split + " --out " + at("voting.model.json"));
    run("evaluate --model " + at(m1 + ".model.json") + " --name " + m1 + " --model " + at(m2 + ".model.json") +
        " --name " + m2 + " --model " + at("voting.model.json") + " --name voting --data " + at("prep.json") + split +
        " --out " + at("leaderboard.json"));

    std::ifstream in(cfg.workdir / "leaderboard.json");
    const auto board = json::parse(in);
    double vote = NAN, best_member = -INFINITY;
    for (const auto& row : board["rows"]) {
        const double r2 = row["test"]["r2"].get<double>();
        if (row["name"] == "voting") vote = r2;
        else best_member = std::max(best_member, r2);
    }
    const bool pass = vote >= 0.85 && vote >= best_member - 0.02;
    return {pass, "blend of " + m1 + " (cv r2 " + num("%.3f", ranked[0].r2) + ") and " + m2 + " (cv r2 " +
                      num("%.3f", ranked[1].r2) + "): test r2 " + num("%.4f", vote) + " (need >= 0.85), best member " +
                      num("%.4f", best_member) + " (need voting >= member - 0.02)"};
}

}  // namespace

int main(int argc, char** argv) {
    spdlog::set_level(spdlog::level::err);
    std::string only;
    E2EConfig e2e{TRM_CLI_PATH, fs::path(TRM_ACCEPTANCE_WORKDIR)};
    for (int i = 1; i + 1 < argc; i += 2) {
        const std::string flag = argv[i];
        if (flag == "--only") only = argv[i + 1];
        else if (flag == "--cli") e2e.cli = argv[i + 1];
        else if (flag == "--workdir") e2e.workdir = argv[i + 1];
        else {
            std::cerr << "usage: acceptance [--only <substring>] [--cli <trm>] [--workdir <dir>]\n";
            return 2;
        }
    }

    const std::vector<Criterion> criteria = {
        {"cooks_distance", 10.0, cooks},
        {"scaling_encoding", 0.0, scaling},
        {"linear_models", 0.0, linear},
        {"cart_split_optimality", 0.0, cart},
        {"boosting", 0.0, boosting},
        {"mlp_gradients", 30.0, mlp},
        {"metrics", 0.0, metrics},
        {"cv_search", 0.0, search},
        {"shapley", 60.0, shapley},
        {"ice_pdp", 0.0, ice_pdp},
        {"end_to_end_synthetic", 600.0, [&] { return end_to_end(e2e); }},
        {"artifact_round_trip", 0.0, artifact_round_trip},
        {"service_api", 0.0, service_api},
    };

    int failed = 0, ran = 0;
    for (const auto& c : criteria) {
        if (!only.empty() && c.name.find(only) == std::string::npos) continue;
        ++ran;
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (c.time_limit_s > 0.0 && secs >= c.time_limit_s) {
            o.pass = false;
            o.detail += "; runtime over the " + num("%.0f", c.time_limit_s) + " s limit";
        }
        failed += !o.pass;
        std::cout << (o.pass ? "PASS " : "FAIL ") << c.name << ": " << o.detail << " [" << num("%.1f", secs) << " s"
                  << (c.time_limit_s > 0.0 ? " / " + num("%.0f", c.time_limit_s) + " s" : "") << "]" << std::endl;
    }
    std::cout << (ran - failed) << "/" << ran << " criteria passed" << std::endl;
    return failed == 0 && ran > 0 ? 0 : 1;
}
