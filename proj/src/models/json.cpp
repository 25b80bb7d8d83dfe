#include "trm/models/json.hpp"

#include "trm/common/error.hpp"

namespace trm::models {
namespace {

json vec(const Vector& v) { return std::vector<double>(v.data(), v.data() + v.size()); }

Vector vec(const json& j) {
    const auto v = j.get<std::vector<double>>();
    return Eigen::Map<const Vector>(v.data(), static_cast<Eigen::Index>(v.size()));
}

template <typename M>
json mat(const M& m) {
    json rows = json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        std::vector<double> row(static_cast<std::size_t>(m.cols()));
        for (Eigen::Index c = 0; c < m.cols(); ++c) row[static_cast<std::size_t>(c)] = m(r, c);
        rows.push_back(std::move(row));
    }
    return {{"rows", m.rows()}, {"cols", m.cols()}, {"data", rows}};
}

template <typename M>
M mat(const json& j) {
    const auto rows = j.at("rows").get<Eigen::Index>();
    const auto cols = j.at("cols").get<Eigen::Index>();
    M m(rows, cols);
    const auto& data = j.at("data");
    if (static_cast<Eigen::Index>(data.size()) != rows) throw InvalidArgument("matrix row count mismatch");
    for (Eigen::Index r = 0; r < rows; ++r) {
        const auto row = data[static_cast<std::size_t>(r)].get<std::vector<double>>();
        if (static_cast<Eigen::Index>(row.size()) != cols) throw InvalidArgument("matrix column count mismatch");
        for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = row[static_cast<std::size_t>(c)];
    }
    return m;
}

json body_to_json(const ModelBody& body);

json linear_json(const LinearModel& m) {
    return {{"type", "linear"}, {"weights", vec(m.weights)}, {"intercept", m.intercept},
            {"alpha", m.alpha}, {"l1_ratio", m.l1_ratio},      {"iterations", m.iterations}};
}

json knn_json(const KnnModel& m) { return {{"type", "knn"}, {"k", m.k}, {"X", mat(m.X)}, {"y", vec(m.y)}}; }

json ensemble_json(const EnsembleModel& m) {
    return {{"type", "ensemble"},          {"combine", to_string(m.combine)},     {"initial", m.initial},
            {"learning_rates", m.learning_rates}, {"stage_weights", m.stage_weights}, {"trees", m.trees}};
}

json mlp_json(const MlpModel& m) {
    json layers = json::array();
    for (const auto& l : m.layers) layers.push_back({{"W", mat(l.W)}, {"b", vec(l.b)}});
    return {{"type", "mlp"},         {"activation", to_string(m.activation)}, {"y_mean", m.y_mean},
            {"y_scale", m.y_scale},  {"layers", layers},                      {"loss_history", m.loss_history}};
}

json body_to_json(const ModelBody& body) {
    return std::visit(
        [](const auto& b) -> json {
            using T = std::decay_t<decltype(b)>;
            if constexpr (std::is_same_v<T, LinearModel>) return linear_json(b);
            if constexpr (std::is_same_v<T, KnnModel>) return knn_json(b);
            if constexpr (std::is_same_v<T, DecisionTree>) return {{"type", "tree"}, {"tree", b}};
            if constexpr (std::is_same_v<T, EnsembleModel>) return ensemble_json(b);
            if constexpr (std::is_same_v<T, MlpModel>) return mlp_json(b);
            if constexpr (std::is_same_v<T, VotingModel>) return {{"type", "voting"}, {"members", b.members}};
        },
        body);
}

ModelBody body_from_json(const json& j) {
    const auto type = j.at("type").get<std::string>();
    if (type == "linear") {
        LinearModel m;
        m.weights = vec(j.at("weights"));
        m.intercept = j.at("intercept").get<double>();
        m.alpha = j.value("alpha", 0.0);
        m.l1_ratio = j.value("l1_ratio", 0.0);
        m.iterations = j.value("iterations", 0);
        return m;
    }
    if (type == "knn") return KnnModel{mat<Matrix>(j.at("X")), vec(j.at("y")), j.at("k").get<int>()};
    if (type == "tree") return j.at("tree").get<DecisionTree>();
    if (type == "ensemble") {
        EnsembleModel m;
        m.combine = combine_mode_from_string(j.at("combine").get<std::string>());
        m.initial = j.at("initial").get<double>();
        m.learning_rates = j.at("learning_rates").get<std::vector<double>>();
        m.stage_weights = j.at("stage_weights").get<std::vector<double>>();
        m.trees = j.at("trees").get<std::vector<DecisionTree>>();
        return m;
    }
    if (type == "mlp") {
        MlpModel m;
        m.activation = activation_from_string(j.at("activation").get<std::string>());
        m.y_mean = j.at("y_mean").get<double>();
        m.y_scale = j.at("y_scale").get<double>();
        for (const auto& l : j.at("layers")) m.layers.push_back({mat<Eigen::MatrixXd>(l.at("W")), vec(l.at("b"))});
        m.loss_history = j.value("loss_history", std::vector<double>{});
        return m;
    }
    if (type == "voting") return VotingModel{j.at("members").get<std::vector<FittedModel>>()};
    throw InvalidArgument("unknown model type '" + type + "'");
}

}  // namespace

json param_to_json(const ParamValue& v) {
    return std::visit([](const auto& x) { return json(x); }, v);
}

ParamValue param_from_json(const json& j) {
    ParamValue v;
    if (j.is_number_integer()) v = j.get<std::int64_t>();
    else if (j.is_number()) v = j.get<double>();
    else if (j.is_string()) v = j.get<std::string>();
    else if (j.is_boolean()) v = std::string(j.get<bool>() ? "true" : "false");
    else throw InvalidArgument("hyperparameter values must be numbers or strings");
    return v;
}

json params_to_json(const Params& p) {
    json j = json::object();
    for (const auto& [k, v] : p) j[k] = param_to_json(v);
    return j;
}

Params params_from_json(const json& j) {
    Params p;
    for (const auto& [k, v] : j.items()) p[k] = param_from_json(v);
    return p;
}

void to_json(json& j, const DecisionTree& t) {
    json nodes = json::array();
    for (const auto& n : t.nodes)
        nodes.push_back({n.feature, n.threshold, n.left, n.right, n.value, n.n_samples, n.sum_squared_residual});
    j = {{"n_features", t.n_features}, {"nodes", nodes}};
}

void from_json(const json& j, DecisionTree& t) {
    t = {};
    t.n_features = j.at("n_features").get<std::size_t>();
    for (const auto& n : j.at("nodes")) {
        if (!n.is_array() || n.size() != 7) throw InvalidArgument("tree node must be a 7-element array");
        TreeNode node;
        node.feature = n[0].get<int>();
        node.threshold = n[1].get<double>();
        node.left = n[2].get<int>();
        node.right = n[3].get<int>();
        node.value = n[4].get<double>();
        node.n_samples = n[5].get<std::size_t>();
        node.sum_squared_residual = n[6].get<double>();
        t.nodes.push_back(node);
    }
    const auto size = static_cast<int>(t.nodes.size());
    if (size == 0) throw InvalidArgument("tree has no nodes");
    for (const auto& n : t.nodes)
        if (!n.is_leaf() && (n.left <= 0 || n.right <= 0 || n.left >= size || n.right >= size ||
                             n.feature >= static_cast<int>(t.n_features)))
            throw InvalidArgument("tree node references are out of range");
}

void to_json(json& j, const FittedModel& m) {
    j = {{"learner", to_string(m.learner)},
         {"params", params_to_json(m.params)},
         {"seed", m.seed},
         {"n_features", m.n_features},
         {"fitted_at", m.fitted_at},
         {"body", body_to_json(m.body)}};
}

void from_json(const json& j, FittedModel& m) {
    m.learner = learner_from_string(j.at("learner").get<std::string>());
    m.params = params_from_json(j.value("params", json::object()));
    m.seed = j.value("seed", std::uint64_t{0});
    m.n_features = j.at("n_features").get<std::size_t>();
    m.fitted_at = j.value("fitted_at", "");
    m.body = body_from_json(j.at("body"));
}

}  // namespace trm::models
