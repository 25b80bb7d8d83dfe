#include "trm/data/preprocess.hpp"

#include <algorithm>
#include <cmath>

#include "trm/common/error.hpp"

namespace trm::data {
namespace {

void encode_row(const PreprocessorState& state, const WallRecord& rec, RowId row, std::span<double> out) {
    const auto& schema = state.schema;
    std::fill(out.begin(), out.end(), 0.0);
    for (std::size_t c = 0; c < state.category_maps.size(); ++c) {
        const auto& map = state.category_maps[c];
        const auto& value = rec.categorical.at(c);
        std::size_t offset = 0;
        while (offset < map.categories.size() && map.categories[offset] != value) ++offset;
        if (offset == map.categories.size())
            throw CategoryError("unknown category '" + value + "'", row, map.column);
        out[map.first_index + offset] = 1.0;
    }
    std::size_t pos = 0;
    for (const auto& map : state.category_maps) pos += map.categories.size();
    for (double v : rec.numeric) out[pos++] = v;
    if (state.with_derived) {
        for (const auto& d : schema.derived_columns) {
            const auto l = schema.numeric_index(d.left);
            const auto r = schema.numeric_index(d.right);
            out[pos++] = rec.numeric.at(*l) * rec.numeric.at(*r);
        }
    }
}

}  // namespace

std::pair<TabularDataset, PreprocessorState> encode_one_hot(const TabularDataset& raw, EncodeOptions options) {
    if (raw.stage != Stage::raw) throw InvalidArgument("encode_one_hot expects a raw-stage dataset");
    const auto& schema = raw.schema;

    PreprocessorState state;
    state.schema = schema;
    state.with_derived = options.with_derived;
    std::size_t next = 0;
    for (const auto& c : schema.categorical_columns) {
        state.category_maps.push_back({c.name, c.categories, next});
        for (const auto& cat : c.categories) state.encoded_columns.push_back({cat, ColumnKind::binary, "", c.name});
        next += c.categories.size();
    }
    for (const auto& n : schema.numeric_columns) state.encoded_columns.push_back({n.name, ColumnKind::numeric, n.unit, ""});
    if (options.with_derived) {
        for (const auto& d : schema.derived_columns) {
            if (!schema.numeric_index(d.left) || !schema.numeric_index(d.right))
                throw InvalidArgument("derived column " + d.name + " references an unknown field");
            state.encoded_columns.push_back({d.name, ColumnKind::numeric, d.unit, ""});
        }
    }

    TabularDataset out;
    out.schema = schema;
    out.columns = state.encoded_columns;
    out.stage = Stage::encoded;
    out.target = raw.target;
    out.row_ids = raw.row_ids;
    out.features = encode_records(state, to_records(raw));
    return {std::move(out), std::move(state)};
}

Scaler fit_scaler(const TabularDataset& encoded) {
    if (encoded.stage != Stage::encoded) throw InvalidArgument("fit_scaler expects an encoded dataset");
    if (encoded.size() == 0) throw InvalidArgument("fit_scaler needs at least one row");
    Scaler s;
    s.fitted_on = encoded.size();
    const auto n = static_cast<double>(encoded.size());
    for (std::size_t j = 0; j < encoded.columns.size(); ++j) {
        if (encoded.columns[j].kind != ColumnKind::numeric) continue;
        const auto col = encoded.features.col(static_cast<Eigen::Index>(j));
        const double mu = col.sum() / n;
        const double var = (col.array() - mu).square().sum() / n;
        const double sigma = std::sqrt(var);
        s.positions.push_back(j);
        s.mu.push_back(mu);
        s.sigma.push_back(sigma);
        s.zero_sigma.push_back(!(sigma > 0.0));
        s.min.push_back(col.minCoeff());
        s.max.push_back(col.maxCoeff());
    }
    return s;
}

Matrix apply_scaler(const Scaler& scaler, const Matrix& encoded) {
    Matrix out = encoded;
    for (std::size_t k = 0; k < scaler.positions.size(); ++k) {
        auto col = out.col(static_cast<Eigen::Index>(scaler.positions[k]));
        if (scaler.zero_sigma[k])
            col.setZero();
        else
            col = ((col.array() - scaler.mu[k]) / scaler.sigma[k]).matrix();
    }
    return out;
}

TabularDataset apply_scaler(const Scaler& scaler, const TabularDataset& encoded) {
    if (encoded.stage != Stage::encoded) throw InvalidArgument("apply_scaler expects an encoded dataset");
    TabularDataset out = encoded;
    out.features = apply_scaler(scaler, encoded.features);
    out.stage = Stage::scaled;
    return out;
}

Matrix encode_records(const PreprocessorState& state, const std::vector<WallRecord>& records) {
    Matrix out(static_cast<Eigen::Index>(records.size()), static_cast<Eigen::Index>(state.encoded_columns.size()));
    for (std::size_t r = 0; r < records.size(); ++r)
        encode_row(state, records[r], static_cast<RowId>(r), row_span(out, static_cast<Eigen::Index>(r)));
    return out;
}

Matrix apply_preprocessor(const PreprocessorState& state, const std::vector<WallRecord>& records) {
    if (!state.scaler_fitted()) throw InvalidArgument("preprocessor state has no fitted scaler");
    for (std::size_t r = 0; r < records.size(); ++r) {
        // Category errors are reported as such, before the positivity checks.
        WallRecord probe = records[r];
        probe.target.reset();
        for (std::size_t c = 0; c < state.category_maps.size() && c < probe.categorical.size(); ++c) {
            const auto& cats = state.category_maps[c].categories;
            if (std::find(cats.begin(), cats.end(), probe.categorical[c]) == cats.end())
                throw CategoryError("unknown category '" + probe.categorical[c] + "'", static_cast<RowId>(r),
                                    state.category_maps[c].column);
        }
        validate_record(probe, state.schema, static_cast<RowId>(r));
    }
    return apply_scaler(state.scaler, encode_records(state, records));
}

}  // namespace trm::data
