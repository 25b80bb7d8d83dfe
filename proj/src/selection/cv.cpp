#include "trm/selection/cv.hpp"

#include <algorithm>
#include <string>

#include "trm/common/error.hpp"
#include "trm/common/random.hpp"

namespace trm::selection {

std::vector<Fold> kfold_indices(std::size_t n, std::size_t k, std::uint64_t seed) {
    if (k < 2) throw InvalidArgument("kfold: k must be >= 2");
    if (k > n) throw InvalidArgument("kfold: k = " + std::to_string(k) + " exceeds n = " + std::to_string(n));
    Rng rng(seed);
    const auto perm = rng.permutation(n);
    std::vector<Fold> folds(k);
    std::size_t start = 0;
    for (std::size_t f = 0; f < k; ++f) {
        const std::size_t size = n / k + (f < n % k ? 1 : 0);
        std::vector<bool> in_val(n, false);
        for (std::size_t i = start; i < start + size; ++i) in_val[perm[i]] = true;
        for (std::size_t r = 0; r < n; ++r) (in_val[r] ? folds[f].validation : folds[f].train).push_back(r);
        start += size;
    }
    return folds;
}

}  // namespace trm::selection
