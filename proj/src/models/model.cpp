#include "trm/models/model.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <ctime>

#include "trm/common/error.hpp"

namespace trm::models {

namespace {

struct LearnerName {
    Learner learner;
    const char* name;
};

constexpr std::array<LearnerName, 16> kNames{{
    {Learner::linear, "linear"},
    {Learner::ridge, "ridge"},
    {Learner::lasso, "lasso"},
    {Learner::elastic_net, "elastic_net"},
    {Learner::mean, "mean"},
    {Learner::knn, "knn"},
    {Learner::decision_tree, "decision_tree"},
    {Learner::random_forest, "random_forest"},
    {Learner::extra_trees, "extra_trees"},
    {Learner::adaboost, "adaboost"},
    {Learner::gradient_boosting, "gradient_boosting"},
    {Learner::second_order_boosting, "second_order_boosting"},
    {Learner::histogram_boosting, "histogram_boosting"},
    {Learner::oblivious_boosting, "oblivious_boosting"},
    {Learner::mlp, "mlp"},
    {Learner::voting, "voting"},
}};

void check_keys(Learner learner, const Params& params) {
    const auto allowed = param_names(learner);
    for (const auto& [k, v] : params)
        if (std::find(allowed.begin(), allowed.end(), k) == allowed.end())
            throw InvalidArgument(std::string("unknown hyperparameter '") + k + "' for " + to_string(learner));
}

int as_int(const Params& p, const std::string& key, std::int64_t fallback) {
    return static_cast<int>(get_int(p, key, fallback));
}

BoostingOptions boosting_options(BoostingVariant variant, const Params& p) {
    BoostingOptions o;
    o.variant = variant;
    o.n_stages = as_int(p, "n_stages", 100);
    o.learning_rate = get_double(p, "learning_rate", 0.1);
    o.max_depth = as_int(p, "max_depth", 3);
    o.l2_leaf = get_double(p, "l2_leaf", 1.0);
    o.n_bins = as_int(p, "n_bins", 32);
    o.min_samples_leaf = static_cast<std::size_t>(std::max<std::int64_t>(1, get_int(p, "min_samples_leaf", 1)));
    return o;
}

}  // namespace

const char* to_string(Learner l) {
    for (const auto& n : kNames)
        if (n.learner == l) return n.name;
    return "unknown";
}

Learner learner_from_string(const std::string& s) {
    for (const auto& n : kNames)
        if (s == n.name) return n.learner;
    throw InvalidArgument("unknown learner '" + s + "'");
}

std::vector<Learner> all_learners() {
    std::vector<Learner> out;
    for (const auto& n : kNames)
        if (n.learner != Learner::voting) out.push_back(n.learner);
    return out;
}

bool is_tree_based(Learner l) {
    switch (l) {
        case Learner::decision_tree:
        case Learner::random_forest:
        case Learner::extra_trees:
        case Learner::adaboost:
        case Learner::gradient_boosting:
        case Learner::second_order_boosting:
        case Learner::histogram_boosting:
        case Learner::oblivious_boosting: return true;
        default: return false;
    }
}

std::vector<std::string> param_names(Learner learner) {
    switch (learner) {
        case Learner::linear:
        case Learner::mean:
        case Learner::voting: return {};
        case Learner::ridge:
        case Learner::lasso: return {"alpha", "max_iter", "tol"};
        case Learner::elastic_net: return {"alpha", "l1_ratio", "max_iter", "tol"};
        case Learner::knn: return {"k"};
        case Learner::decision_tree: return {"max_depth", "criterion", "min_samples_leaf"};
        case Learner::random_forest:
        case Learner::extra_trees: return {"n_trees", "max_depth", "max_features", "bootstrap", "min_samples_leaf"};
        case Learner::adaboost: return {"n_stages", "learning_rate", "max_depth"};
        case Learner::gradient_boosting:
        case Learner::second_order_boosting:
        case Learner::histogram_boosting:
        case Learner::oblivious_boosting:
            return {"n_stages", "learning_rate", "max_depth", "l2_leaf", "n_bins", "min_samples_leaf"};
        case Learner::mlp: return {"hidden_neurons", "activation", "lambda", "learning_rate", "batch_size", "epochs"};
    }
    return {};
}

std::string utc_timestamp() {
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

FittedModel fit_model(Learner learner, const Params& p, const Matrix& X, const Vector& y, std::uint64_t seed) {
    if (learner == Learner::voting) throw InvalidArgument("voting models are built with make_voting");
    check_keys(learner, p);
    if (X.rows() == 0) throw InvalidArgument("fit: no training rows");
    if (y.size() != X.rows()) throw InvalidArgument("fit: X and y differ in length");

    FittedModel m;
    m.learner = learner;
    m.params = p;
    m.seed = seed;
    m.n_features = static_cast<std::size_t>(X.cols());
    const int max_iter = as_int(p, "max_iter", 10000);
    const double tol = get_double(p, "tol", 1e-8);

    switch (learner) {
        case Learner::linear: m.body = fit_linear(X, y, 0.0, 0.0); break;
        case Learner::ridge: m.body = fit_linear(X, y, get_double(p, "alpha", 1.0), 0.0, max_iter, tol); break;
        case Learner::lasso: m.body = fit_linear(X, y, get_double(p, "alpha", 1.0), 1.0, max_iter, tol); break;
        case Learner::elastic_net:
            m.body = fit_linear(X, y, get_double(p, "alpha", 1.0), get_double(p, "l1_ratio", 0.5), max_iter, tol);
            break;
        case Learner::mean: m.body = fit_mean(X, y); break;
        case Learner::knn: m.body = fit_knn(X, y, as_int(p, "k", 5)); break;
        case Learner::decision_tree: {
            const auto leaf = get_int(p, "min_samples_leaf", 1);
            if (leaf < 1) throw InvalidArgument("min_samples_leaf must be >= 1");
            m.body = fit_cart(X, y, as_int(p, "max_depth", 5), static_cast<std::size_t>(leaf),
                              criterion_from_string(get_string(p, "criterion", "squared_error")));
            break;
        }
        case Learner::random_forest:
        case Learner::extra_trees: {
            BaggingOptions o;
            o.mode = learner == Learner::random_forest ? BaggingMode::random_forest : BaggingMode::extra_trees;
            o.n_trees = as_int(p, "n_trees", 100);
            o.max_depth = as_int(p, "max_depth", 0);
            o.max_features = get_double(p, "max_features", 1.0);
            o.bootstrap = get_bool(p, "bootstrap", learner == Learner::random_forest);
            const auto leaf = get_int(p, "min_samples_leaf", 1);
            if (leaf < 1) throw InvalidArgument("min_samples_leaf must be >= 1");
            o.min_samples_leaf = static_cast<std::size_t>(leaf);
            o.seed = seed;
            m.body = fit_bagged_trees(X, y, o);
            break;
        }
        case Learner::adaboost: {
            AdaBoostOptions o;
            o.n_stages = as_int(p, "n_stages", 50);
            o.learning_rate = get_double(p, "learning_rate", 1.0);
            o.max_depth = as_int(p, "max_depth", 3);
            o.seed = seed;
            m.body = fit_adaboost(X, y, o);
            break;
        }
        case Learner::gradient_boosting:
            m.body = fit_gradient_boosting(X, y, boosting_options(BoostingVariant::vanilla, p));
            break;
        case Learner::second_order_boosting:
            m.body = fit_gradient_boosting(X, y, boosting_options(BoostingVariant::second_order, p));
            break;
        case Learner::histogram_boosting:
            m.body = fit_gradient_boosting(X, y, boosting_options(BoostingVariant::histogram, p));
            break;
        case Learner::oblivious_boosting:
            m.body = fit_gradient_boosting(X, y, boosting_options(BoostingVariant::oblivious, p));
            break;
        case Learner::mlp: {
            MlpOptions o;
            o.hidden = {as_int(p, "hidden_neurons", 50)};
            o.activation = activation_from_string(get_string(p, "activation", "relu"));
            o.lambda = get_double(p, "lambda", 0.0);
            o.learning_rate = get_double(p, "learning_rate", 0.01);
            o.batch_size = as_int(p, "batch_size", 32);
            o.epochs = as_int(p, "epochs", 300);
            o.seed = seed;
            m.body = fit_mlp(X, y, o);
            break;
        }
        case Learner::voting: break;
    }
    m.fitted_at = utc_timestamp();
    return m;
}

FittedModel make_voting(std::vector<FittedModel> members) {
    if (members.size() < 2) throw InvalidArgument("voting needs at least two members");
    const auto width = members.front().n_features;
    for (const auto& mm : members)
        if (mm.n_features != width) throw InvalidArgument("voting members disagree on input width");
    FittedModel m;
    m.learner = Learner::voting;
    m.n_features = width;
    m.fitted_at = utc_timestamp();
    m.body = VotingModel{std::move(members)};
    return m;
}

double predict(const FittedModel& model, std::span<const double> x) {
    if (x.size() != model.n_features)
        throw InvalidArgument("predict: expected " + std::to_string(model.n_features) + " features, got " +
                              std::to_string(x.size()));
    return std::visit(
        [&](const auto& body) -> double {
            using T = std::decay_t<decltype(body)>;
            if constexpr (std::is_same_v<T, VotingModel>) {
                double s = 0.0;
                for (const auto& member : body.members) s += predict(member, x);
                return s / static_cast<double>(body.members.size());
            } else {
                return body.predict(x);
            }
        },
        model.body);
}

Vector predict(const FittedModel& model, const Matrix& X) {
    Vector out(X.rows());
    for (Eigen::Index r = 0; r < X.rows(); ++r) out(r) = predict(model, row_span(X, r));
    return out;
}

std::vector<const DecisionTree*> model_trees(const FittedModel& model) {
    std::vector<const DecisionTree*> out;
    if (const auto* t = std::get_if<DecisionTree>(&model.body)) out.push_back(t);
    if (const auto* e = std::get_if<EnsembleModel>(&model.body))
        for (const auto& t : e->trees) out.push_back(&t);
    return out;
}

}  // namespace trm::models
