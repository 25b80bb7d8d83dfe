#pragma once

#include <cstdint>
#include <vector>

#include "trm/data/dataset.hpp"

namespace trm::data {

/// Reference ground truth used for the synthetic benchmark, in kN:
///
///   V_urm = c_m * 0.06 * (A_n / 1000) * sqrt(f_t)
///   V_trm = c_t * 40 * tanh(A_f / 0.1) * sqrt(n_layers * t_f / 0.05) * sqrt(E_f / 100) * (eps_fu / 0.02)
///   V     = (V_urm + V_trm) * (1 + 0.05 * ln(f_c / 10)) * (1 + 0.02 * ln(E_m * E_mortar / 25))
///           + 0.1 * A_mortar / 1000
///
/// with c_m = {Brick 1.0, Cement 0.8, Stone 1.25} and c_t = {Carbon 1.2, Glass 0.8, Basalt 1.0}.
double reference_capacity(const WallRecord& record, const DatasetSchema& schema = wall_schema());

/// Draws `n` wall records uniformly over plausible ranges and labels them with
/// reference_capacity times (1 + noise_fraction * N(0, 1)).
/// E_f is drawn from a textile-specific interval (carbon stiffest, glass softest).
std::vector<WallRecord> generate_wall_records(std::size_t n, std::uint64_t seed, double noise_fraction = 0.05);

}  // namespace trm::data
