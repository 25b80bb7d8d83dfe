// trm: command-line front end for the shear-capacity pipeline.
//
//   synth -> preprocess -> tune -> train -> evaluate / explain / importance / curves / dot -> serve

#include <CLI11.hpp>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include <algorithm>
#include <csignal>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "trm/data/json.hpp"
#include "trm/data/pipeline.hpp"
#include "trm/data/synthetic.hpp"
#include "trm/interpret/dependence.hpp"
#include "trm/interpret/importance.hpp"
#include "trm/interpret/report.hpp"
#include "trm/models/json.hpp"
#include "trm/selection/curves.hpp"
#include "trm/selection/leaderboard.hpp"
#include "trm/selection/report.hpp"
#include "trm/selection/search.hpp"
#include "trm/service/http.hpp"
#include "trm/service/service.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace trm;

namespace {

json read_json(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open " + path.string());
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw Error(path.string() + " is not valid JSON: " + e.what());
    }
}

void write_text(const fs::path& path, const std::string& text) {
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    std::ofstream out(path);
    if (!out) throw Error("cannot write " + path.string());
    out << text;
    if (!out) throw Error("failed writing " + path.string());
}

void write_json(const fs::path& path, const json& j) { write_text(path, j.dump(2) + "\n"); }

data::PreparedData load_prepared(const fs::path& path) {
    data::PreparedData p;
    try {
        data::from_json(read_json(path), p);
    } catch (const std::exception& e) {
        throw Error(path.string() + ": " + e.what());
    }
    return p;
}

// Options shared by every command that re-creates the modeling split.
struct SplitArgs {
    double test_fraction = 0.15;
    std::uint64_t seed = 0;
    bool scale_on_train = false;

    void add(CLI::App* cmd) {
        cmd->add_option("--split-seed", seed, "seed of the train/test split");
        cmd->add_option("--test-fraction", test_fraction, "hold-out fraction")->check(CLI::Range(0.01, 0.9));
        cmd->add_flag("--scale-on-train", scale_on_train, "refit the scaler on the training part only");
    }
    json to_json() const {
        return {{"split_seed", seed}, {"test_fraction", test_fraction}, {"scale_on_train", scale_on_train}};
    }
};

std::vector<std::size_t> all_rows(std::size_t n) {
    std::vector<std::size_t> r(n);
    for (std::size_t i = 0; i < n; ++i) r[i] = i;
    return r;
}

// ---------------------------------------------------------------- synth

struct SynthArgs {
    std::size_t rows = 110;
    std::uint64_t seed = 0;
    double noise = 0.05;
    std::string out;
};

void run_synth(const SynthArgs& a) {
    const auto records = data::generate_wall_records(a.rows, a.seed, a.noise);
    std::ostringstream os;
    data::write_dataset_csv(os, records, data::wall_schema());
    write_text(a.out, os.str());
    spdlog::info("wrote {} synthetic rows to {}", a.rows, a.out);
}

// ---------------------------------------------------------------- preprocess

struct PreprocessArgs {
    std::string input, out, report;
    double cooks_k = 3.0;
    bool with_derived = false;
    bool keep_outliers = false;
};

void run_preprocess(const PreprocessArgs& a) {
    const auto raw = data::load_dataset(a.input, data::wall_schema());
    data::PreprocessOptions o;
    o.cooks_factor = a.cooks_k;
    o.with_derived = a.with_derived;
    o.remove_outliers = !a.keep_outliers;
    const auto prepared = data::preprocess(raw, o);
    json j;
    data::to_json(j, prepared);
    write_json(a.out, j);
    if (!a.report.empty()) write_json(a.report, data::preprocessing_report(prepared));
    spdlog::info("{} rows in, {} flagged by Cook's distance, {} retained", prepared.input_rows,
                 prepared.cooks.flagged.size(), prepared.encoded.size());
}

// ---------------------------------------------------------------- tune

struct TuneArgs {
    std::string method, data, out;
    std::size_t folds = 5;
    std::size_t candidates = 100;
    std::uint64_t seed = 0;
    SplitArgs split;
};

void run_tune(const TuneArgs& a) {
    const auto learner = models::learner_from_string(a.method);
    if (learner == models::Learner::voting) throw InvalidArgument("voting is built by train from several configs");
    const auto prepared = load_prepared(a.data);
    const auto split = data::make_split(prepared, a.split.test_fraction, a.split.seed, a.split.scale_on_train);
    const auto space = selection::default_space(learner, a.candidates, a.seed);
    selection::SearchOptions o;
    o.k = a.folds;
    o.seed = a.seed;
    o.refit = false;
    spdlog::info("tuning {}: up to {} candidates x {} folds on {} rows", a.method, a.candidates, a.folds,
                 split.train.size());
    const auto result = selection::randomized_search(learner, space, split.train.features, split.train.target, o);
    auto report = selection::search_report(result);
    report["data"] = a.split.to_json();
    write_json(a.out, report);
    const auto& best = result.best();
    spdlog::info("best {} candidate #{}: cv r2 {:.4f} +/- {:.4f}", a.method, best.index, best.mean.r2, best.std.r2);
}

// ---------------------------------------------------------------- train

struct TrainArgs {
    std::vector<std::string> configs;
    std::string data, out;
    bool full_data = false;
    SplitArgs split;
};

void run_train(const TrainArgs& a) {
    const auto prepared = load_prepared(a.data);
    Matrix X_train, X_test;
    Vector y_train, y_test;
    data::Scaler scaler;
    if (a.full_data) {
        scaler = prepared.state.scaler;
        X_train = data::apply_scaler(scaler, prepared.encoded.features);
        y_train = prepared.encoded.target;
    } else {
        const auto split = data::make_split(prepared, a.split.test_fraction, a.split.seed, a.split.scale_on_train);
        scaler = split.scaler;
        X_train = split.train.features;
        y_train = split.train.target;
        X_test = split.test.features;
        y_test = split.test.target;
    }

    std::vector<models::FittedModel> members;
    json member_reports = json::array();
    for (const auto& path : a.configs) {
        const auto config = read_json(path);
        if (config.value("kind", "") != "search_report") throw Error(path + " is not a search report");
        const auto learner = models::learner_from_string(config.at("learner").get<std::string>());
        const auto params = models::params_from_json(config.at("best").at("params"));
        const auto seed = config.at("best").at("seed").get<std::uint64_t>();
        members.push_back(models::fit_model(learner, params, X_train, y_train, seed));
        member_reports.push_back({{"config", fs::path(path).filename().string()},
                                  {"learner", models::to_string(learner)},
                                  {"params", models::params_to_json(params)},
                                  {"seed", seed},
                                  {"cv", config.at("best").at("mean")},
                                  {"search_seed", config.at("seed")},
                                  {"folds", config.at("folds")}});
    }
    auto model = members.size() == 1 ? std::move(members.front()) : models::make_voting(std::move(members));

    json report = {{"members", member_reports},
                   {"full_data", a.full_data},
                   {"n_train", X_train.rows()},
                   {"data", fs::path(a.data).filename().string()}};
    if (!a.full_data) report["split"] = a.split.to_json();
    json train_metrics;
    selection::to_json(train_metrics, selection::compute_metrics(y_train, models::predict(model, X_train)));
    report["train_metrics"] = train_metrics;
    if (!a.full_data) {
        json test_metrics;
        selection::to_json(test_metrics, selection::compute_metrics(y_test, models::predict(model, X_test)));
        report["test_metrics"] = test_metrics;
        report["n_test"] = X_test.rows();
    }
    const auto artifact = service::make_artifact(prepared.state, scaler, std::move(model), X_train, report, a.split.seed);
    service::save_artifact(artifact, a.out);
    spdlog::info("trained {} on {} rows, saved {}", models::to_string(artifact.model.learner), X_train.rows(), a.out);
}

// ---------------------------------------------------------------- evaluate

struct EvaluateArgs {
    std::vector<std::string> models;
    std::vector<std::string> names;
    std::string data, out, predictions_dir, learning_curve;
    std::size_t curve_folds = 5;
    std::uint64_t curve_seed = 0;
    SplitArgs split;
};

void run_evaluate(const EvaluateArgs& a) {
    if (!a.names.empty() && a.names.size() != a.models.size())
        throw InvalidArgument("--name must be given once per --model");
    const auto prepared = load_prepared(a.data);
    const auto idx = data::split_indices(prepared.encoded.size(), a.split.test_fraction, a.split.seed);
    const Matrix enc_train = selection::take_rows(prepared.encoded.features, idx.train);
    const Matrix enc_test = selection::take_rows(prepared.encoded.features, idx.test);
    const Vector y_train = selection::take_rows(prepared.encoded.target, idx.train);
    const Vector y_test = selection::take_rows(prepared.encoded.target, idx.test);

    selection::Leaderboard board;
    std::vector<service::ModelArtifact> artifacts;
    for (std::size_t i = 0; i < a.models.size(); ++i) {
        artifacts.push_back(service::load_artifact(a.models[i]));
        const auto& art = artifacts.back();
        auto name = a.names.empty() ? fs::path(a.models[i]).filename().string() : a.names[i];
        if (art.training_report.value("full_data", false))
            spdlog::warn("{} was trained on the full dataset; its hold-out scores are not out-of-sample", name);
        const Matrix X_train = data::apply_scaler(art.preprocessor.scaler, enc_train);
        const Matrix X_test = data::apply_scaler(art.preprocessor.scaler, enc_test);
        const auto one = selection::compare_models({{name, &art.model}}, X_train, y_train, X_test, y_test);
        board.rows.push_back(one.rows.front());
        if (!a.predictions_dir.empty()) {
            std::ostringstream os;
            selection::write_prediction_csv(os, art.model, X_train, y_train, X_test, y_test);
            write_text(fs::path(a.predictions_dir) / (name + ".predictions.csv"), os.str());
        }
    }
    std::stable_sort(board.rows.begin(), board.rows.end(), [](const auto& l, const auto& r) {
        return l.test.r2 != r.test.r2 ? l.test.r2 > r.test.r2 : l.name < r.name;
    });
    auto report = selection::leaderboard_report(board);
    report["split"] = a.split.to_json();
    report["n_train"] = idx.train.size();
    report["n_test"] = idx.test.size();
    write_json(a.out, report);
    for (const auto& r : board.rows)
        spdlog::info("{:<40} test r2 {:.4f}  rmse {:.3f}  mape {:.4f}", r.name, r.test.r2, r.test.rmse, r.test.mape);

    if (!a.learning_curve.empty()) {
        const auto& art = artifacts.front();
        if (art.model.learner == models::Learner::voting)
            throw InvalidArgument("learning curves need a single learner, not a voting blend");
        const Matrix X = data::apply_scaler(art.preprocessor.scaler, enc_train);
        const auto points = selection::learning_curve(art.model.learner, art.model.params, X, y_train,
                                                      {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0},
                                                      a.curve_folds, a.curve_seed);
        std::ostringstream os;
        selection::write_learning_curve_csv(os, points);
        write_text(a.learning_curve, os.str());
    }
}

// ---------------------------------------------------------------- explain

struct ExplainArgs {
    std::string model, row, mode = "shapley", data, out;
    std::size_t samples = 1000;
    std::uint64_t seed = 0;
};

// One scaled encoded row from either a prepared-data row index or a raw JSON record.
Matrix instance(const service::ModelArtifact& art, const std::string& row, const std::string& data_path) {
    const bool is_index = !row.empty() && row.find_first_not_of("0123456789") == std::string::npos;
    if (is_index) {
        if (data_path.empty()) throw InvalidArgument("--row given as an index needs --data");
        const auto prepared = load_prepared(data_path);
        const auto i = std::stoul(row);
        if (i >= prepared.encoded.size())
            throw InvalidArgument("row " + row + " out of range (" + std::to_string(prepared.encoded.size()) + " rows)");
        return data::apply_scaler(art.preprocessor.scaler, selection::take_rows(prepared.encoded.features, {i}));
    }
    json j;
    try {
        j = row.starts_with("@") ? read_json(row.substr(1)) : json::parse(row);
    } catch (const json::parse_error& e) {
        throw InvalidArgument(std::string("--row is neither an index nor a JSON record: ") + e.what());
    }
    try {
        return data::apply_preprocessor(art.preprocessor, {service::record_from_json(j, art.preprocessor.schema)});
    } catch (const service::RequestError& e) {
        throw InvalidArgument("field " + e.field() + ": " + e.what());
    }
}

void run_explain(const ExplainArgs& a) {
    const auto art = service::load_artifact(a.model);
    const Matrix x = instance(art, a.row, a.data);
    const auto xs = row_span(x, 0);
    const auto f = interpret::predictor_of(art.model);
    const auto groups = service::raw_field_groups(art.preprocessor);
    interpret::Attribution attr;
    if (a.mode == "shapley") {
        attr = interpret::shapley_exact(f, xs, art.background, groups);
    } else if (a.mode == "sampled") {
        attr = interpret::shapley_sampled(f, xs, art.background, groups, a.samples, a.seed);
    } else if (a.mode == "lime") {
        interpret::LimeOptions o;
        o.n_perturbations = a.samples;
        o.seed = a.seed;
        const Vector ref = art.background.colwise().mean();
        attr = interpret::lime_explain(f, xs, {ref.data(), static_cast<std::size_t>(ref.size())}, groups, o);
    } else {
        throw InvalidArgument("--mode must be shapley, sampled or lime");
    }
    auto j = interpret::to_json(attr);
    j["prediction_kN"] = attr.prediction;
    j["row"] = a.row;
    write_json(a.out, j);
    spdlog::info("prediction {:.4f} kN, base value {:.4f} kN", attr.prediction, attr.base_value);
}

// ---------------------------------------------------------------- importance

struct ImportanceArgs {
    std::string model, data, out, method = "permutation", on = "test";
    std::size_t repeats = 10;
    std::uint64_t seed = 0;
    SplitArgs split;
};

void run_importance(const ImportanceArgs& a) {
    const auto art = service::load_artifact(a.model);
    const auto groups = service::raw_field_groups(art.preprocessor);
    interpret::Importance imp;
    if (a.method == "impurity") {
        imp = interpret::impurity_importance(art.model, groups);
    } else if (a.method == "permutation") {
        if (a.data.empty()) throw InvalidArgument("permutation importance needs --data");
        const auto prepared = load_prepared(a.data);
        const auto idx = data::split_indices(prepared.encoded.size(), a.split.test_fraction, a.split.seed);
        const auto rows = a.on == "test" ? idx.test : a.on == "train" ? idx.train : all_rows(prepared.encoded.size());
        const Matrix X = data::apply_scaler(art.preprocessor.scaler, selection::take_rows(prepared.encoded.features, rows));
        const Vector y = selection::take_rows(prepared.encoded.target, rows);
        imp = interpret::permutation_importance(interpret::predictor_of(art.model), X, y, groups, a.repeats, a.seed);
    } else {
        throw InvalidArgument("--method must be permutation or impurity");
    }
    write_json(a.out, interpret::to_json(imp));
}

// ---------------------------------------------------------------- curves / dot

struct CurvesArgs {
    std::string model, feature, out;
    std::size_t grid = 20;
    bool json_out = false;
};

void run_curves(const CurvesArgs& a) {
    const auto art = service::load_artifact(a.model);
    const auto& cols = art.preprocessor.encoded_columns;
    std::size_t column = cols.size();
    for (std::size_t c = 0; c < cols.size(); ++c)
        if (cols[c].name == a.feature) column = c;
    if (column == cols.size()) {
        std::string names;
        for (const auto& c : cols) names += (names.empty() ? "" : ", ") + c.name;
        throw InvalidArgument("unknown feature '" + a.feature + "' (columns: " + names + ")");
    }
    auto d = interpret::ice_pdp(interpret::predictor_of(art.model), art.background, column, a.feature, a.grid);
    // Report the grid in physical units.
    const auto& s = art.preprocessor.scaler;
    for (std::size_t k = 0; k < s.positions.size(); ++k)
        if (s.positions[k] == column)
            for (auto& g : d.grid) g = s.zero_sigma[k] ? s.mu[k] : s.mu[k] + s.sigma[k] * g;
    if (a.json_out) {
        write_json(a.out, interpret::to_json(d));
    } else {
        std::ostringstream os;
        interpret::write_dependence_csv(os, {d});
        write_text(a.out, os.str());
    }
}

struct DotArgs {
    std::string model, out;
    std::size_t tree = 0;
};

void run_dot(const DotArgs& a) {
    const auto art = service::load_artifact(a.model);
    std::vector<std::string> names;
    for (const auto& c : art.preprocessor.encoded_columns) names.push_back(c.name);
    write_text(a.out, interpret::tree_to_dot(art.model, a.tree, names));
}

// ---------------------------------------------------------------- serve

struct ServeArgs {
    std::string model, bind = "127.0.0.1:8080";
    std::size_t explain_slots = 2;
};

service::HttpServer* g_server = nullptr;

void run_serve(const ServeArgs& a) {
    const auto [host, port] = service::parse_bind_address(a.bind);
    service::ServiceOptions o;
    o.max_concurrent_explain = a.explain_slots;
    const service::PredictionService svc(service::load_artifact(a.model), o);
    service::HttpServer server(svc);
    const int bound = server.bind(host, port);
    g_server = &server;
    std::signal(SIGINT, [](int) { if (g_server) g_server->stop(); });
    std::signal(SIGTERM, [](int) { if (g_server) g_server->stop(); });
    spdlog::info("serving {} on {}:{}", a.model, host, bound);
    std::cout << "listening on " << host << ":" << bound << std::endl;
    server.listen();
    g_server = nullptr;
}

std::string one_line(std::string s) {
    std::replace(s.begin(), s.end(), '\n', ' ');
    return s;
}

}  // namespace

int main(int argc, char** argv) {
    spdlog::set_default_logger(spdlog::stderr_color_mt("trm"));
    spdlog::set_pattern("[%l] %v");

    CLI::App app{"Shear-capacity modeling toolkit for TRM-strengthened masonry walls"};
    app.require_subcommand(1);
    bool quiet = false;
    app.add_flag("-q,--quiet", quiet, "only log warnings and errors");

    SynthArgs synth;
    auto* c_synth = app.add_subcommand("synth", "write a synthetic wall-test CSV");
    c_synth->add_option("--rows", synth.rows)->check(CLI::PositiveNumber);
    c_synth->add_option("--seed", synth.seed);
    c_synth->add_option("--noise", synth.noise, "relative Gaussian noise")->check(CLI::Range(0.0, 1.0));
    c_synth->add_option("--out", synth.out)->required();

    PreprocessArgs prep;
    auto* c_prep = app.add_subcommand("preprocess", "encode, scale and drop Cook's-distance outliers");
    c_prep->add_option("--input", prep.input)->required()->check(CLI::ExistingFile);
    c_prep->add_option("--out", prep.out)->required();
    c_prep->add_option("--report", prep.report, "Cook's distance and scaling report");
    c_prep->add_option("--cooks-k", prep.cooks_k, "flag rows with D > k * mean(D)")->check(CLI::PositiveNumber);
    c_prep->add_flag("--with-derived", prep.with_derived, "add the n_layers * t_f column");
    c_prep->add_flag("--keep-outliers", prep.keep_outliers);

    TuneArgs tune;
    auto* c_tune = app.add_subcommand("tune", "randomized k-fold search for one learner");
    c_tune->add_option("--method", tune.method)->required();
    c_tune->add_option("--data", tune.data)->required()->check(CLI::ExistingFile);
    c_tune->add_option("--folds", tune.folds)->check(CLI::Range(2, 100));
    c_tune->add_option("--candidates", tune.candidates)->check(CLI::PositiveNumber);
    c_tune->add_option("--seed", tune.seed);
    c_tune->add_option("--out", tune.out)->required();
    tune.split.add(c_tune);

    TrainArgs train;
    auto* c_train = app.add_subcommand("train", "fit the best configuration (several --config build a voting blend)");
    c_train->add_option("--config", train.configs, "search report")->required()->check(CLI::ExistingFile);
    c_train->add_option("--data", train.data)->required()->check(CLI::ExistingFile);
    c_train->add_option("--out", train.out)->required();
    c_train->add_flag("--full-data", train.full_data, "fit on every retained row");
    train.split.add(c_train);

    EvaluateArgs eval;
    auto* c_eval = app.add_subcommand("evaluate", "train/test leaderboard for one or more artifacts");
    c_eval->add_option("--model", eval.models)->required()->check(CLI::ExistingFile);
    c_eval->add_option("--name", eval.names, "display name per --model");
    c_eval->add_option("--data", eval.data)->required()->check(CLI::ExistingFile);
    c_eval->add_option("--out", eval.out)->required();
    c_eval->add_option("--predictions-dir", eval.predictions_dir, "write <name>.predictions.csv per model");
    c_eval->add_option("--learning-curve", eval.learning_curve, "learning-curve CSV for the first model");
    c_eval->add_option("--curve-folds", eval.curve_folds)->check(CLI::Range(2, 100));
    c_eval->add_option("--curve-seed", eval.curve_seed);
    eval.split.add(c_eval);

    ExplainArgs expl;
    auto* c_expl = app.add_subcommand("explain", "per-feature attribution for one wall");
    c_expl->add_option("--model", expl.model)->required()->check(CLI::ExistingFile);
    c_expl->add_option("--row", expl.row, "row index into --data, a JSON record, or @file.json")->required();
    c_expl->add_option("--mode", expl.mode, "shapley, sampled or lime");
    c_expl->add_option("--data", expl.data);
    c_expl->add_option("--samples", expl.samples, "permutations (sampled) or perturbations (lime)");
    c_expl->add_option("--seed", expl.seed);
    c_expl->add_option("--out", expl.out)->required();

    ImportanceArgs imp;
    auto* c_imp = app.add_subcommand("importance", "global feature importance");
    c_imp->add_option("--model", imp.model)->required()->check(CLI::ExistingFile);
    c_imp->add_option("--method", imp.method, "permutation or impurity");
    c_imp->add_option("--data", imp.data);
    c_imp->add_option("--on", imp.on, "rows to score: test, train or all")->check(CLI::IsMember({"test", "train", "all"}));
    c_imp->add_option("--repeats", imp.repeats)->check(CLI::PositiveNumber);
    c_imp->add_option("--seed", imp.seed);
    c_imp->add_option("--out", imp.out)->required();
    imp.split.add(c_imp);

    CurvesArgs curves;
    auto* c_curves = app.add_subcommand("curves", "ICE and partial dependence for one encoded column");
    c_curves->add_option("--model", curves.model)->required()->check(CLI::ExistingFile);
    c_curves->add_option("--feature", curves.feature)->required();
    c_curves->add_option("--grid", curves.grid)->check(CLI::Range(2, 1000));
    c_curves->add_flag("--json", curves.json_out, "write JSON instead of CSV");
    c_curves->add_option("--out", curves.out)->required();

    DotArgs dot;
    auto* c_dot = app.add_subcommand("dot", "Graphviz export of one tree");
    c_dot->add_option("--model", dot.model)->required()->check(CLI::ExistingFile);
    c_dot->add_option("--tree", dot.tree);
    c_dot->add_option("--out", dot.out)->required();

    ServeArgs serve;
    auto* c_serve = app.add_subcommand("serve", "JSON-over-HTTP prediction and explanation service");
    c_serve->add_option("--model", serve.model)->required()->check(CLI::ExistingFile);
    c_serve->add_option("--bind", serve.bind, "host:port");
    c_serve->add_option("--explain-slots", serve.explain_slots)->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << one_line(e.what()) << '\n';
        return e.get_exit_code() == 0 ? 2 : e.get_exit_code();
    }
    if (quiet) spdlog::set_level(spdlog::level::warn);

    try {
        if (*c_synth) run_synth(synth);
        else if (*c_prep) run_preprocess(prep);
        else if (*c_tune) run_tune(tune);
        else if (*c_train) run_train(train);
        else if (*c_eval) run_evaluate(eval);
        else if (*c_expl) run_explain(expl);
        else if (*c_imp) run_importance(imp);
        else if (*c_curves) run_curves(curves);
        else if (*c_dot) run_dot(dot);
        else if (*c_serve) run_serve(serve);
    } catch (const std::exception& e) {
        std::cerr << "error: " << one_line(e.what()) << '\n';
        return 1;
    }
    return 0;
}
