#include "trm/data/split.hpp"

#include <algorithm>
#include <cmath>

#include "trm/common/error.hpp"
#include "trm/common/random.hpp"

namespace trm::data {

SplitIndices split_indices(std::size_t n, double test_fraction, std::uint64_t seed) {
    if (!(test_fraction > 0.0 && test_fraction < 1.0))
        throw InvalidArgument("test_fraction must lie strictly between 0 and 1");
    const auto n_test = std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(static_cast<double>(n) * test_fraction)));
    if (n_test >= n)
        throw InvalidArgument("split of " + std::to_string(n) + " rows with test_fraction " +
                              std::to_string(test_fraction) + " leaves an empty part");

    Rng rng(seed);
    const auto perm = rng.permutation(n);
    SplitIndices out;
    out.test.assign(perm.begin(), perm.begin() + static_cast<std::ptrdiff_t>(n_test));
    out.train.assign(perm.begin() + static_cast<std::ptrdiff_t>(n_test), perm.end());
    std::sort(out.test.begin(), out.test.end());
    std::sort(out.train.begin(), out.train.end());
    return out;
}

TrainTestSplit split_train_test(const TabularDataset& ds, double test_fraction, std::uint64_t seed) {
    const auto idx = split_indices(ds.size(), test_fraction, seed);
    return {select_rows(ds, idx.train), select_rows(ds, idx.test)};
}

}  // namespace trm::data
