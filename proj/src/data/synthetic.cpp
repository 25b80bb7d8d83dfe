#include "trm/data/synthetic.hpp"

#include <cmath>

#include "trm/common/random.hpp"

namespace trm::data {
namespace {

double field(const WallRecord& r, const DatasetSchema& s, const char* name) {
    return r.numeric.at(*s.numeric_index(name));
}

double masonry_factor(const std::string& type) {
    if (type == "Cement") return 0.8;
    if (type == "Stone") return 1.25;
    return 1.0;
}

double textile_factor(const std::string& type) {
    if (type == "Carbon") return 1.2;
    if (type == "Glass") return 0.8;
    return 1.0;
}

}  // namespace

double reference_capacity(const WallRecord& r, const DatasetSchema& s) {
    const double a_n = field(r, s, "A_n");
    const double f_t = field(r, s, "f_t");
    const double t_f = field(r, s, "t_f");
    const double e_f = field(r, s, "E_f");
    const double e_m = field(r, s, "E_m");
    const double f_c = field(r, s, "f_c");
    const double a_mortar = field(r, s, "A_mortar");
    const double e_mortar = field(r, s, "E_mortar");
    const double a_f = field(r, s, "A_f");
    const double layers = field(r, s, "n_layers");
    const double eps_fu = field(r, s, "eps_fu");

    const double v_urm = masonry_factor(r.categorical.at(0)) * 0.06 * (a_n / 1000.0) * std::sqrt(f_t);
    const double v_trm = textile_factor(r.categorical.at(1)) * 40.0 * std::tanh(a_f / 0.1) *
                         std::sqrt(layers * t_f / 0.05) * std::sqrt(e_f / 100.0) * (eps_fu / 0.02);
    return (v_urm + v_trm) * (1.0 + 0.05 * std::log(f_c / 10.0)) * (1.0 + 0.02 * std::log(e_m * e_mortar / 25.0)) +
           0.1 * a_mortar / 1000.0;
}

std::vector<WallRecord> generate_wall_records(std::size_t n, std::uint64_t seed, double noise_fraction) {
    const auto& schema = wall_schema();
    Rng rng(seed);
    std::vector<WallRecord> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        WallRecord r;
        const auto& masonry = schema.categorical_columns[0].categories;
        const auto& textile = schema.categorical_columns[1].categories;
        r.categorical = {masonry[rng.below(masonry.size())], textile[rng.below(textile.size())]};

        double e_lo = 85.0, e_hi = 95.0;
        if (r.categorical[1] == "Carbon") e_lo = 200.0, e_hi = 240.0;
        if (r.categorical[1] == "Glass") e_lo = 70.0, e_hi = 80.0;

        r.numeric = {
            rng.uniform(1.0e5, 5.0e5),                      // A_n
            rng.uniform(0.5, 5.0),                          // f_t
            rng.uniform(0.02, 0.1),                         // t_f
            rng.uniform(e_lo, e_hi),                        // E_f
            rng.uniform(1.0, 10.0),                         // E_m
            rng.uniform(2.0, 30.0),                         // f_c
            rng.uniform(1.0e4, 1.0e5),                      // A_mortar
            rng.uniform(1.0, 10.0),                         // E_mortar
            rng.uniform(0.02, 0.4),                         // A_f
            static_cast<double>(1 + rng.below(4)),          // n_layers
            rng.uniform(0.01, 0.03),                        // eps_fu
        };
        r.target = reference_capacity(r, schema) * (1.0 + noise_fraction * rng.normal());
        out.push_back(std::move(r));
    }
    return out;
}

}  // namespace trm::data
