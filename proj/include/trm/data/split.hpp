#pragma once

#include <cstdint>
#include <vector>

#include "trm/data/dataset.hpp"

namespace trm::data {

struct SplitIndices {
    std::vector<std::size_t> train;
    std::vector<std::size_t> test;
};

/// Seeded uniform partition; the test part holds max(1, round(n * test_fraction)) rows.
/// Both parts keep the original row order.
SplitIndices split_indices(std::size_t n, double test_fraction, std::uint64_t seed);

struct TrainTestSplit {
    TabularDataset train;
    TabularDataset test;
};

TrainTestSplit split_train_test(const TabularDataset& ds, double test_fraction, std::uint64_t seed);

}  // namespace trm::data
