#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "trm/common/random.hpp"
#include "trm/models/model.hpp"
#include "trm/models/params.hpp"

namespace trm::selection {

enum class SpecKind { uniform, log_uniform, integer, categorical };

const char* to_string(SpecKind k);
SpecKind spec_kind_from_string(const std::string& s);

struct HyperSpec {
    std::string name;
    SpecKind kind = SpecKind::uniform;
    double lo = 0.0;
    double hi = 0.0;
    std::vector<models::ParamValue> choices;  ///< categorical only

    models::ParamValue sample(Rng& rng) const;
    bool contains(const models::ParamValue& v) const;
    /// Number of distinct values for integer/categorical specs; nullopt for continuous ones.
    std::optional<std::size_t> cardinality() const;
};

struct HyperSpace {
    std::vector<HyperSpec> specs;
    models::Params fixed;  ///< added unchanged to every candidate
    std::size_t n_candidates = 100;
    std::uint64_t seed = 0;
};

HyperSpec uniform(std::string name, double lo, double hi);
HyperSpec log_uniform(std::string name, double lo, double hi);
HyperSpec integer(std::string name, std::int64_t lo, std::int64_t hi);
HyperSpec categorical(std::string name, std::vector<models::ParamValue> choices);

/// Search space used for each learner when none is supplied.
HyperSpace default_space(models::Learner learner, std::size_t n_candidates = 100, std::uint64_t seed = 0);

/// Draws up to n_candidates distinct parameter sets. Duplicates are discarded and redrawn;
/// a finite space yields at most its cardinality.
std::vector<models::Params> sample_candidates(const HyperSpace& space);

}  // namespace trm::selection
