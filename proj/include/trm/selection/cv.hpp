#pragma once

#include <cstdint>
#include <vector>

namespace trm::selection {

struct Fold {
    std::vector<std::size_t> train;  ///< ascending
    std::vector<std::size_t> validation;  ///< ascending
};

/// Shuffles 0..n-1 under `seed` and cuts it into k validation parts whose sizes
/// differ by at most one (the first n mod k parts get the extra row).
std::vector<Fold> kfold_indices(std::size_t n, std::size_t k, std::uint64_t seed);

}  // namespace trm::selection
