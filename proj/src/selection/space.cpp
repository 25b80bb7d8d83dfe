#include "trm/selection/space.hpp"

#include <algorithm>
#include <cmath>

#include "trm/common/error.hpp"

namespace trm::selection {

using models::Learner;
using models::ParamValue;
using models::Params;

const char* to_string(SpecKind k) {
    switch (k) {
        case SpecKind::uniform: return "uniform";
        case SpecKind::log_uniform: return "log_uniform";
        case SpecKind::integer: return "integer";
        case SpecKind::categorical: return "categorical";
    }
    return "uniform";
}

SpecKind spec_kind_from_string(const std::string& s) {
    for (auto k : {SpecKind::uniform, SpecKind::log_uniform, SpecKind::integer, SpecKind::categorical})
        if (s == to_string(k)) return k;
    throw InvalidArgument("unknown hyperparameter distribution '" + s + "'");
}

HyperSpec uniform(std::string name, double lo, double hi) {
    if (!(lo <= hi)) throw InvalidArgument("uniform spec " + name + ": lo > hi");
    return {std::move(name), SpecKind::uniform, lo, hi, {}};
}

HyperSpec log_uniform(std::string name, double lo, double hi) {
    if (!(lo > 0.0 && lo <= hi)) throw InvalidArgument("log-uniform spec " + name + ": need 0 < lo <= hi");
    return {std::move(name), SpecKind::log_uniform, lo, hi, {}};
}

HyperSpec integer(std::string name, std::int64_t lo, std::int64_t hi) {
    if (lo > hi) throw InvalidArgument("integer spec " + name + ": lo > hi");
    return {std::move(name), SpecKind::integer, static_cast<double>(lo), static_cast<double>(hi), {}};
}

HyperSpec categorical(std::string name, std::vector<ParamValue> choices) {
    if (choices.empty()) throw InvalidArgument("categorical spec " + name + ": no choices");
    return {std::move(name), SpecKind::categorical, 0.0, 0.0, std::move(choices)};
}

ParamValue HyperSpec::sample(Rng& rng) const {
    switch (kind) {
        case SpecKind::uniform: return lo == hi ? lo : rng.uniform(lo, hi);
        case SpecKind::log_uniform: return lo == hi ? lo : std::exp(rng.uniform(std::log(lo), std::log(hi)));
        case SpecKind::integer: {
            const auto a = static_cast<std::int64_t>(lo), b = static_cast<std::int64_t>(hi);
            return a + static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(b - a + 1)));
        }
        case SpecKind::categorical: return choices[static_cast<std::size_t>(rng.below(choices.size()))];
    }
    return lo;
}

bool HyperSpec::contains(const ParamValue& v) const {
    switch (kind) {
        case SpecKind::uniform:
        case SpecKind::log_uniform: {
            const auto* d = std::get_if<double>(&v);
            return d && *d >= lo && *d <= hi;
        }
        case SpecKind::integer: {
            const auto* i = std::get_if<std::int64_t>(&v);
            return i && static_cast<double>(*i) >= lo && static_cast<double>(*i) <= hi;
        }
        case SpecKind::categorical: return std::find(choices.begin(), choices.end(), v) != choices.end();
    }
    return false;
}

std::optional<std::size_t> HyperSpec::cardinality() const {
    switch (kind) {
        case SpecKind::integer: return static_cast<std::size_t>(hi - lo) + 1;
        case SpecKind::categorical: return choices.size();
        case SpecKind::uniform:
        case SpecKind::log_uniform: return lo == hi ? std::optional<std::size_t>(1) : std::nullopt;
    }
    return std::nullopt;
}

HyperSpace default_space(Learner learner, std::size_t n_candidates, std::uint64_t seed) {
    HyperSpace s;
    s.n_candidates = n_candidates;
    s.seed = seed;
    const std::vector<ParamValue> activations{std::string("sigmoid"), std::string("relu"), std::string("tanh"),
                                              std::string("identity")};
    const std::vector<ParamValue> criteria{std::string("squared_error"), std::string("friedman_mse"),
                                           std::string("absolute_error"), std::string("poisson")};
    switch (learner) {
        case Learner::linear:
        case Learner::mean:
        case Learner::voting: break;
        case Learner::ridge:
        case Learner::lasso: s.specs = {uniform("alpha", 0.0, 10.0)}; break;
        case Learner::elastic_net: s.specs = {uniform("alpha", 0.0, 10.0), uniform("l1_ratio", 0.0, 1.0)}; break;
        case Learner::knn: s.specs = {integer("k", 5, 20)}; break;
        case Learner::decision_tree: s.specs = {integer("max_depth", 2, 10), categorical("criterion", criteria)}; break;
        case Learner::random_forest:
        case Learner::extra_trees: s.specs = {integer("n_trees", 10, 200), integer("max_depth", 2, 10)}; break;
        case Learner::adaboost:
        case Learner::gradient_boosting:
        case Learner::second_order_boosting:
        case Learner::histogram_boosting:
        case Learner::oblivious_boosting:
            s.specs = {integer("n_stages", 50, 500), log_uniform("learning_rate", 0.01, 1.0), integer("max_depth", 2, 10)};
            break;
        case Learner::mlp:
            s.specs = {integer("hidden_neurons", 10, 100), uniform("lambda", 0.0, 10.0),
                       categorical("activation", activations)};
            break;
    }
    return s;
}

std::vector<Params> sample_candidates(const HyperSpace& space) {
    if (space.n_candidates == 0) throw InvalidArgument("search: n_candidates must be >= 1");
    std::size_t target = space.n_candidates;
    std::optional<std::size_t> total = 1;
    for (const auto& spec : space.specs) {
        const auto c = spec.cardinality();
        if (!c || !total) {
            total.reset();
            continue;
        }
        *total = *total > (std::size_t{1} << 40) / *c ? (std::size_t{1} << 40) : *total * *c;
    }
    if (total) target = std::min(target, *total);

    Rng rng(space.seed);
    std::vector<Params> out;
    const std::size_t max_draws = 1000 * space.n_candidates + 1000;
    for (std::size_t draw = 0; out.size() < target && draw < max_draws; ++draw) {
        Params p = space.fixed;
        for (const auto& spec : space.specs) p[spec.name] = spec.sample(rng);
        if (std::find(out.begin(), out.end(), p) == out.end()) out.push_back(std::move(p));
    }
    return out;
}

}  // namespace trm::selection
