#include "trm/data/json.hpp"

#include <cmath>

namespace trm::data {
namespace {

// JSON has no infinity; unbounded Cook's distances travel as the string "inf".
json number_or_inf(double v) { return std::isinf(v) ? json("inf") : json(v); }
double number_or_inf(const json& j) {
    return j.is_string() ? std::numeric_limits<double>::infinity() : j.get<double>();
}

const char* quantity_name(Quantity q) { return to_string(q); }

Quantity quantity_from(const std::string& s) {
    for (auto q : {Quantity::area, Quantity::strength, Quantity::thickness, Quantity::modulus, Quantity::count,
                   Quantity::strain})
        if (s == to_string(q)) return q;
    throw std::invalid_argument("unknown quantity '" + s + "'");
}

}  // namespace

void to_json(json& j, const DatasetSchema& s) {
    j = json::object();
    for (const auto& c : s.categorical_columns)
        j["categorical_columns"].push_back({{"name", c.name}, {"categories", c.categories}, {"description", c.description}});
    for (const auto& n : s.numeric_columns)
        j["numeric_columns"].push_back({{"name", n.name},
                                        {"unit", n.unit},
                                        {"quantity", quantity_name(n.quantity)},
                                        {"description", n.description}});
    j["target_column"] = s.target_column;
    j["target_unit"] = s.target_unit;
    j["derived_columns"] = json::array();
    for (const auto& d : s.derived_columns)
        j["derived_columns"].push_back({{"name", d.name}, {"left", d.left}, {"right", d.right}, {"unit", d.unit}});
}

void from_json(const json& j, DatasetSchema& s) {
    s = {};
    for (const auto& c : j.at("categorical_columns"))
        s.categorical_columns.push_back({c.at("name").get<std::string>(), c.at("categories").get<std::vector<std::string>>(),
                                         c.value("description", "")});
    for (const auto& n : j.at("numeric_columns"))
        s.numeric_columns.push_back({n.at("name").get<std::string>(), n.at("unit").get<std::string>(),
                                     quantity_from(n.at("quantity").get<std::string>()), n.value("description", "")});
    s.target_column = j.at("target_column").get<std::string>();
    s.target_unit = j.value("target_unit", "");
    for (const auto& d : j.value("derived_columns", json::array()))
        s.derived_columns.push_back({d.at("name").get<std::string>(), d.at("left").get<std::string>(),
                                     d.at("right").get<std::string>(), d.value("unit", "")});
}

void to_json(json& j, const Column& c) {
    j = {{"name", c.name}, {"kind", to_string(c.kind)}, {"unit", c.unit}, {"group", c.group}};
}

void from_json(const json& j, Column& c) {
    c.name = j.at("name").get<std::string>();
    c.kind = column_kind_from_string(j.at("kind").get<std::string>());
    c.unit = j.value("unit", "");
    c.group = j.value("group", "");
}

void to_json(json& j, const Scaler& s) {
    j = {{"positions", s.positions}, {"mu", s.mu},   {"sigma", s.sigma},
         {"zero_sigma", s.zero_sigma}, {"min", s.min}, {"max", s.max},
         {"fitted_on", s.fitted_on},   {"sigma_convention", "population"}};
}

void from_json(const json& j, Scaler& s) {
    s.positions = j.at("positions").get<std::vector<std::size_t>>();
    s.mu = j.at("mu").get<std::vector<double>>();
    s.sigma = j.at("sigma").get<std::vector<double>>();
    s.zero_sigma = j.at("zero_sigma").get<std::vector<bool>>();
    s.min = j.at("min").get<std::vector<double>>();
    s.max = j.at("max").get<std::vector<double>>();
    s.fitted_on = j.at("fitted_on").get<std::size_t>();
}

void to_json(json& j, const PreprocessorState& s) {
    j = json::object();
    j["schema"] = s.schema;
    j["category_maps"] = json::array();
    for (const auto& m : s.category_maps)
        j["category_maps"].push_back({{"column", m.column}, {"categories", m.categories}, {"first_index", m.first_index}});
    j["encoded_columns"] = s.encoded_columns;
    j["with_derived"] = s.with_derived;
    j["scaler"] = s.scaler;
}

void from_json(const json& j, PreprocessorState& s) {
    s.schema = j.at("schema").get<DatasetSchema>();
    s.category_maps.clear();
    for (const auto& m : j.at("category_maps"))
        s.category_maps.push_back({m.at("column").get<std::string>(), m.at("categories").get<std::vector<std::string>>(),
                                   m.at("first_index").get<std::size_t>()});
    s.encoded_columns = j.at("encoded_columns").get<std::vector<Column>>();
    s.with_derived = j.at("with_derived").get<bool>();
    s.scaler = j.at("scaler").get<Scaler>();
}

void to_json(json& j, const CooksReport& r) {
    json d = json::array();
    for (double v : r.distances) d.push_back(number_or_inf(v));
    j = {{"distances", d},        {"row_ids", r.row_ids},   {"p", r.p},
         {"mse", r.mse},          {"threshold_factor", r.threshold_factor},
         {"threshold", r.threshold}, {"flagged", r.flagged}, {"design_columns", r.design_columns}};
}

void from_json(const json& j, CooksReport& r) {
    r.distances.clear();
    for (const auto& v : j.at("distances")) r.distances.push_back(number_or_inf(v));
    r.row_ids = j.at("row_ids").get<std::vector<RowId>>();
    r.p = j.at("p").get<std::size_t>();
    r.mse = j.at("mse").get<double>();
    r.threshold_factor = j.at("threshold_factor").get<double>();
    r.threshold = j.at("threshold").get<double>();
    r.flagged = j.at("flagged").get<std::vector<RowId>>();
    r.design_columns = j.value("design_columns", std::vector<std::string>{});
}

void to_json(json& j, const TabularDataset& ds) {
    json rows = json::array();
    for (Eigen::Index r = 0; r < ds.features.rows(); ++r) {
        json row = json::array();
        for (Eigen::Index c = 0; c < ds.features.cols(); ++c) row.push_back(ds.features(r, c));
        rows.push_back(std::move(row));
    }
    std::vector<double> target(ds.target.data(), ds.target.data() + ds.target.size());
    j = {{"stage", to_string(ds.stage)}, {"columns", ds.columns}, {"row_ids", ds.row_ids},
         {"rows", rows},                 {"target", target},      {"schema", ds.schema}};
}

void from_json(const json& j, TabularDataset& ds) {
    ds.stage = stage_from_string(j.at("stage").get<std::string>());
    ds.columns = j.at("columns").get<std::vector<Column>>();
    ds.row_ids = j.at("row_ids").get<std::vector<RowId>>();
    ds.schema = j.at("schema").get<DatasetSchema>();
    const auto& rows = j.at("rows");
    const auto target = j.at("target").get<std::vector<double>>();
    ds.features = Matrix(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(ds.columns.size()));
    ds.target = Vector(static_cast<Eigen::Index>(target.size()));
    if (target.size() != rows.size() || ds.row_ids.size() != rows.size())
        throw std::invalid_argument("dataset rows, target and row_ids differ in length");
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != ds.columns.size()) throw std::invalid_argument("dataset row width mismatch");
        for (std::size_t c = 0; c < ds.columns.size(); ++c)
            ds.features(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = rows[r][c].get<double>();
        ds.target(static_cast<Eigen::Index>(r)) = target[r];
    }
}

void to_json(json& j, const PreparedData& p) {
    j = {{"kind", "prepared_dataset"}, {"input_rows", p.input_rows}, {"state", p.state},
         {"cooks", p.cooks},           {"encoded", p.encoded}};
}

void from_json(const json& j, PreparedData& p) {
    if (j.value("kind", "") != "prepared_dataset") throw std::invalid_argument("not a prepared dataset file");
    p.input_rows = j.at("input_rows").get<std::size_t>();
    p.state = j.at("state").get<PreprocessorState>();
    p.cooks = j.at("cooks").get<CooksReport>();
    p.encoded = j.at("encoded").get<TabularDataset>();
}

json preprocessing_report(const PreparedData& p) {
    json report;
    report["input_rows"] = p.input_rows;
    report["retained_rows"] = p.encoded.size();
    report["category_maps"] = json::object();
    for (const auto& m : p.state.category_maps) {
        json map = json::object();
        for (std::size_t k = 0; k < m.categories.size(); ++k) map[m.categories[k]] = m.first_index + k;
        report["category_maps"][m.column] = map;
    }
    report["scaler"] = json::object();
    const auto& s = p.state.scaler;
    for (std::size_t k = 0; k < s.positions.size(); ++k)
        report["scaler"][p.state.encoded_columns[s.positions[k]].name] = {
            {"mu", s.mu[k]}, {"sigma", s.sigma[k]}, {"zero_sigma", static_cast<bool>(s.zero_sigma[k])}};
    report["cooks_distance"] = p.cooks;
    return report;
}

}  // namespace trm::data
