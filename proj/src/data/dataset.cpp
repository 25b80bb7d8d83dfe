#include "trm/data/dataset.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

#include "trm/common/error.hpp"

namespace trm::data {
namespace {

std::string trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(first, last - first + 1));
}

// Comma separated, double quotes may wrap a field and "" escapes a quote.
std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string current;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                current += '"';
                ++i;
            } else if (c == '"') {
                quoted = false;
            } else {
                current += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            fields.push_back(trim(current));
            current.clear();
        } else {
            current += c;
        }
    }
    fields.push_back(trim(current));
    return fields;
}

double parse_number(const std::string& cell, RowId row, const std::string& column) {
    double value = 0.0;
    const char* begin = cell.data();
    const char* end = begin + cell.size();
    if (!cell.empty() && *begin == '+') ++begin;
    const auto [ptr, ec] = std::from_chars(begin, end, value);
    if (cell.empty() || ec != std::errc{} || ptr != end)
        throw DataError("unparseable cell '" + cell + "'", row, column);
    return value;
}

}  // namespace

std::vector<std::string> TabularDataset::column_names() const {
    std::vector<std::string> names;
    names.reserve(columns.size());
    for (const auto& c : columns) names.push_back(c.name);
    return names;
}

std::optional<std::size_t> TabularDataset::column_index(const std::string& name) const {
    for (std::size_t i = 0; i < columns.size(); ++i)
        if (columns[i].name == name) return i;
    return std::nullopt;
}

void validate_record(const WallRecord& record, const DatasetSchema& schema, RowId row) {
    if (record.categorical.size() != schema.categorical_columns.size() ||
        record.numeric.size() != schema.numeric_columns.size())
        throw DataError("record does not match the schema width", row);

    for (std::size_t c = 0; c < schema.categorical_columns.size(); ++c) {
        const auto& field = schema.categorical_columns[c];
        const auto& value = record.categorical[c];
        bool known = false;
        for (const auto& cat : field.categories) known = known || cat == value;
        if (!known) {
            std::string allowed;
            for (const auto& cat : field.categories) allowed += (allowed.empty() ? "" : ", ") + cat;
            throw CategoryError("unknown category '" + value + "' (allowed: " + allowed + ")", row, field.name);
        }
    }

    for (std::size_t k = 0; k < schema.numeric_columns.size(); ++k) {
        const auto& field = schema.numeric_columns[k];
        const double v = record.numeric[k];
        if (!std::isfinite(v)) throw DataError("non-finite value", row, field.name);
        if (field.quantity == Quantity::count) {
            if (v < 1.0 || std::floor(v) != v)
                throw DataError("count must be an integer >= 1", row, field.name);
        } else if (v <= 0.0) {
            throw DataError(std::string("non-positive ") + to_string(field.quantity), row, field.name);
        }
    }

    if (record.target) {
        if (!std::isfinite(*record.target)) throw DataError("non-finite value", row, schema.target_column);
        if (*record.target <= 0.0) throw DataError("non-positive shear capacity", row, schema.target_column);
    }
}

TabularDataset from_records(const std::vector<WallRecord>& records, const DatasetSchema& schema,
                            std::vector<RowId> row_ids) {
    if (row_ids.empty()) {
        row_ids.resize(records.size());
        for (std::size_t i = 0; i < records.size(); ++i) row_ids[i] = static_cast<RowId>(i);
    }
    if (row_ids.size() != records.size()) throw InvalidArgument("row id count differs from record count");

    TabularDataset ds;
    ds.schema = schema;
    ds.stage = Stage::raw;
    for (const auto& c : schema.categorical_columns) ds.columns.push_back({c.name, ColumnKind::categorical, "", ""});
    for (const auto& n : schema.numeric_columns) ds.columns.push_back({n.name, ColumnKind::numeric, n.unit, ""});

    const auto n_cat = schema.categorical_columns.size();
    ds.features = Matrix(static_cast<Eigen::Index>(records.size()), static_cast<Eigen::Index>(ds.columns.size()));
    ds.target = Vector(static_cast<Eigen::Index>(records.size()));
    for (std::size_t r = 0; r < records.size(); ++r) {
        const auto& rec = records[r];
        validate_record(rec, schema, row_ids[r]);
        if (!rec.target) throw DataError("missing target", row_ids[r], schema.target_column);
        const auto i = static_cast<Eigen::Index>(r);
        for (std::size_t c = 0; c < n_cat; ++c) {
            const auto& cats = schema.categorical_columns[c].categories;
            std::size_t code = 0;
            while (cats[code] != rec.categorical[c]) ++code;
            ds.features(i, static_cast<Eigen::Index>(c)) = static_cast<double>(code);
        }
        for (std::size_t k = 0; k < rec.numeric.size(); ++k)
            ds.features(i, static_cast<Eigen::Index>(n_cat + k)) = rec.numeric[k];
        ds.target(i) = *rec.target;
    }
    ds.row_ids = std::move(row_ids);
    return ds;
}

std::vector<WallRecord> to_records(const TabularDataset& raw) {
    if (raw.stage != Stage::raw) throw InvalidArgument("to_records expects a raw-stage dataset");
    const auto n_cat = raw.schema.categorical_columns.size();
    std::vector<WallRecord> out(raw.size());
    for (std::size_t r = 0; r < raw.size(); ++r) {
        const auto i = static_cast<Eigen::Index>(r);
        for (std::size_t c = 0; c < n_cat; ++c) {
            const auto code = static_cast<std::size_t>(raw.features(i, static_cast<Eigen::Index>(c)));
            out[r].categorical.push_back(raw.schema.categorical_columns[c].categories.at(code));
        }
        for (std::size_t k = n_cat; k < raw.width(); ++k)
            out[r].numeric.push_back(raw.features(i, static_cast<Eigen::Index>(k)));
        out[r].target = raw.target(i);
    }
    return out;
}

TabularDataset read_dataset(std::istream& in, const DatasetSchema& schema) {
    std::string line;
    if (!std::getline(in, line)) throw DataError("empty CSV: header row required");
    if (line.size() >= 3 && line.compare(0, 3, "\xEF\xBB\xBF") == 0) line.erase(0, 3);
    const auto header = split_csv_line(line);

    std::map<std::string, std::size_t> position;
    for (std::size_t i = 0; i < header.size(); ++i) position[header[i]] = i;
    auto locate = [&](const std::string& name) {
        const auto it = position.find(name);
        if (it == position.end()) throw DataError("missing column", std::nullopt, name);
        return it->second;
    };
    std::vector<std::size_t> cat_pos, num_pos;
    for (const auto& c : schema.categorical_columns) cat_pos.push_back(locate(c.name));
    for (const auto& n : schema.numeric_columns) num_pos.push_back(locate(n.name));
    const auto target_pos = locate(schema.target_column);

    std::vector<WallRecord> records;
    RowId row = 0;
    while (std::getline(in, line)) {
        if (trim(line).empty()) continue;
        const auto cells = split_csv_line(line);
        if (cells.size() != header.size())
            throw DataError("expected " + std::to_string(header.size()) + " cells, found " +
                                std::to_string(cells.size()),
                            row);
        WallRecord rec;
        for (std::size_t c = 0; c < cat_pos.size(); ++c) rec.categorical.push_back(cells[cat_pos[c]]);
        for (std::size_t k = 0; k < num_pos.size(); ++k)
            rec.numeric.push_back(parse_number(cells[num_pos[k]], row, schema.numeric_columns[k].name));
        rec.target = parse_number(cells[target_pos], row, schema.target_column);
        validate_record(rec, schema, row);
        records.push_back(std::move(rec));
        ++row;
    }
    return from_records(records, schema);
}

TabularDataset load_dataset(const std::filesystem::path& path, const DatasetSchema& schema) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open " + path.string());
    return read_dataset(in, schema);
}

void write_dataset_csv(std::ostream& out, const std::vector<WallRecord>& records, const DatasetSchema& schema) {
    std::string header;
    for (const auto& name : schema.input_names()) header += name + ",";
    out << header << schema.target_column << '\n';
    std::ostringstream row;
    row.precision(17);
    for (const auto& rec : records) {
        row.str({});
        for (const auto& c : rec.categorical) row << c << ',';
        for (double v : rec.numeric) row << v << ',';
        row << rec.target.value_or(0.0);
        out << row.str() << '\n';
    }
}

TabularDataset select_rows(const TabularDataset& ds, const std::vector<std::size_t>& indices) {
    TabularDataset out;
    out.schema = ds.schema;
    out.columns = ds.columns;
    out.stage = ds.stage;
    out.features = Matrix(static_cast<Eigen::Index>(indices.size()), ds.features.cols());
    out.target = Vector(static_cast<Eigen::Index>(indices.size()));
    out.row_ids.reserve(indices.size());
    for (std::size_t i = 0; i < indices.size(); ++i) {
        if (indices[i] >= ds.size()) throw InvalidArgument("row index out of range");
        const auto src = static_cast<Eigen::Index>(indices[i]);
        out.features.row(static_cast<Eigen::Index>(i)) = ds.features.row(src);
        out.target(static_cast<Eigen::Index>(i)) = ds.target(src);
        out.row_ids.push_back(ds.row_ids[indices[i]]);
    }
    return out;
}

const char* to_string(Stage stage) {
    switch (stage) {
        case Stage::raw: return "raw";
        case Stage::encoded: return "encoded";
        case Stage::scaled: return "scaled";
    }
    return "raw";
}

Stage stage_from_string(const std::string& s) {
    if (s == "raw") return Stage::raw;
    if (s == "encoded") return Stage::encoded;
    if (s == "scaled") return Stage::scaled;
    throw InvalidArgument("unknown stage '" + s + "'");
}

const char* to_string(ColumnKind kind) {
    switch (kind) {
        case ColumnKind::categorical: return "categorical";
        case ColumnKind::binary: return "binary";
        case ColumnKind::numeric: return "numeric";
    }
    return "numeric";
}

ColumnKind column_kind_from_string(const std::string& s) {
    if (s == "categorical") return ColumnKind::categorical;
    if (s == "binary") return ColumnKind::binary;
    if (s == "numeric") return ColumnKind::numeric;
    throw InvalidArgument("unknown column kind '" + s + "'");
}

}  // namespace trm::data
