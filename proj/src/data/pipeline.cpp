#include "trm/data/pipeline.hpp"

#include <spdlog/spdlog.h>

namespace trm::data {

PreparedData preprocess(const TabularDataset& raw, const PreprocessOptions& options) {
    auto [encoded, state] = encode_one_hot(raw, {options.with_derived});
    state.scaler = fit_scaler(encoded);

    PreparedData out;
    out.input_rows = raw.size();
    out.cooks = cooks_distance(apply_scaler(state.scaler, encoded), options.cooks_factor);
    if (options.remove_outliers) {
        encoded = remove_outliers(encoded, out.cooks);
        state.scaler = fit_scaler(encoded);
    }
    spdlog::info("preprocess: {} rows in, {} flagged, {} retained", raw.size(), out.cooks.flagged.size(),
                 encoded.size());
    out.encoded = std::move(encoded);
    out.state = std::move(state);
    return out;
}

ModelingSplit make_split(const PreparedData& prepared, double test_fraction, std::uint64_t seed,
                         bool scale_on_train) {
    auto parts = split_train_test(prepared.encoded, test_fraction, seed);
    ModelingSplit out;
    out.scaler = scale_on_train ? fit_scaler(parts.train) : prepared.state.scaler;
    out.train = apply_scaler(out.scaler, parts.train);
    out.test = apply_scaler(out.scaler, parts.test);
    return out;
}

}  // namespace trm::data
