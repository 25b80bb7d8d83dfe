#pragma once

#include <string>
#include <utility>
#include <vector>

#include "trm/common/types.hpp"
#include "trm/data/dataset.hpp"

namespace trm::data {

struct CategoryMap {
    std::string column;
    std::vector<std::string> categories;  ///< category -> offset from first_index
    std::size_t first_index = 0;          ///< position of the first binary column in the encoded layout
};

/// Standard scaling parameters for the numeric columns of the encoded layout.
/// Sigma is the population standard deviation (divide by n).
struct Scaler {
    std::vector<std::size_t> positions;  ///< encoded-layout positions that are scaled
    std::vector<double> mu;
    std::vector<double> sigma;
    std::vector<bool> zero_sigma;  ///< constant column: transform maps it to 0
    std::vector<double> min;       ///< observed range, unscaled
    std::vector<double> max;
    std::size_t fitted_on = 0;
};

struct PreprocessorState {
    DatasetSchema schema;
    std::vector<CategoryMap> category_maps;
    std::vector<Column> encoded_columns;
    bool with_derived = false;
    Scaler scaler;

    bool scaler_fitted() const { return scaler.fitted_on > 0; }
};

struct EncodeOptions {
    /// Materialize the schema's derived product columns (e.g. n_layers * t_f).
    bool with_derived = false;
};

/// Replaces each categorical column with one binary column per category.
/// Layout: all binary groups in schema order, then numeric columns, then derived columns.
std::pair<TabularDataset, PreprocessorState> encode_one_hot(const TabularDataset& raw, EncodeOptions options = {});

/// Fits mean/sigma on the numeric columns of an encoded dataset.
Scaler fit_scaler(const TabularDataset& encoded);

/// Scales an encoded matrix in place of a copy; binary columns are untouched.
Matrix apply_scaler(const Scaler& scaler, const Matrix& encoded);
TabularDataset apply_scaler(const Scaler& scaler, const TabularDataset& encoded);

/// Encodes raw records with the state's category maps (no scaling).
Matrix encode_records(const PreprocessorState& state, const std::vector<WallRecord>& records);

/// Serving-time transform: validate, encode, scale.
/// Throws CategoryError for a category outside the fitted maps.
Matrix apply_preprocessor(const PreprocessorState& state, const std::vector<WallRecord>& records);

}  // namespace trm::data
