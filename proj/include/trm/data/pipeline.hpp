#pragma once

#include <cstdint>
#include <vector>

#include "trm/data/cooks.hpp"
#include "trm/data/preprocess.hpp"
#include "trm/data/split.hpp"

namespace trm::data {

struct PreprocessOptions {
    bool with_derived = false;
    double cooks_factor = 3.0;
    bool remove_outliers = true;
};

/// Output of the preprocessing stage. `encoded` holds the retained rows before
/// scaling; `state.scaler` is fit on all of them.
struct PreparedData {
    TabularDataset encoded;
    PreprocessorState state;
    CooksReport cooks;
    std::size_t input_rows = 0;
};

/// encode -> scale -> Cook's distance -> drop flagged rows -> refit the scaler on the survivors.
PreparedData preprocess(const TabularDataset& raw, const PreprocessOptions& options = {});

/// Scaled train/test matrices ready for model fitting.
struct ModelingSplit {
    TabularDataset train;  ///< scaled
    TabularDataset test;   ///< scaled
    Scaler scaler;
};

/// Splits the prepared rows; by default reuses the scaler fit on all retained rows,
/// with `scale_on_train` the scaler is refit on the train part only.
ModelingSplit make_split(const PreparedData& prepared, double test_fraction, std::uint64_t seed,
                         bool scale_on_train = false);

}  // namespace trm::data
