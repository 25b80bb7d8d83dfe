#include "trm/data/schema.hpp"

namespace trm::data {

std::optional<std::size_t> DatasetSchema::numeric_index(const std::string& name) const {
    for (std::size_t i = 0; i < numeric_columns.size(); ++i)
        if (numeric_columns[i].name == name) return i;
    return std::nullopt;
}

std::optional<std::size_t> DatasetSchema::categorical_index(const std::string& name) const {
    for (std::size_t i = 0; i < categorical_columns.size(); ++i)
        if (categorical_columns[i].name == name) return i;
    return std::nullopt;
}

std::size_t DatasetSchema::encoded_width() const {
    std::size_t width = numeric_columns.size();
    for (const auto& c : categorical_columns) width += c.categories.size();
    return width;
}

std::vector<std::string> DatasetSchema::input_names() const {
    std::vector<std::string> names;
    for (const auto& c : categorical_columns) names.push_back(c.name);
    for (const auto& n : numeric_columns) names.push_back(n.name);
    return names;
}

const DatasetSchema& wall_schema() {
    static const DatasetSchema schema = [] {
        DatasetSchema s;
        s.categorical_columns = {
            {"masonry_type", {"Brick", "Cement", "Stone"}, "masonry unit type"},
            {"trm_type", {"Carbon", "Glass", "Basalt"}, "textile fiber type"},
        };
        s.numeric_columns = {
            {"A_n", "mm^2", Quantity::area, "cross-sectional net area of the URM wall"},
            {"f_t", "MPa", Quantity::strength, "tensile strength of the URM binding mortar"},
            {"t_f", "mm", Quantity::thickness, "thickness of one fiber layer"},
            {"E_f", "GPa", Quantity::modulus, "Young modulus of the textile"},
            {"E_m", "GPa", Quantity::modulus, "Young modulus of the masonry"},
            {"f_c", "MPa", Quantity::strength, "compressive strength of the masonry"},
            {"A_mortar", "mm^2", Quantity::area, "TRM mortar area per unit width"},
            {"E_mortar", "GPa", Quantity::modulus, "tensile modulus of the cracked TRM mortar"},
            {"A_f", "mm^2", Quantity::area, "fabric reinforcement area per unit width"},
            {"n_layers", "-", Quantity::count, "number of fabric layers"},
            {"eps_fu", "-", Quantity::strain, "ultimate tensile strain of the TRM reinforcement"},
        };
        s.target_column = "V_exp";
        s.target_unit = "kN";
        s.derived_columns = {{"n_t_f", "n_layers", "t_f", "mm"}};
        return s;
    }();
    return schema;
}

const char* to_string(Quantity q) {
    switch (q) {
        case Quantity::area: return "area";
        case Quantity::strength: return "strength";
        case Quantity::thickness: return "thickness";
        case Quantity::modulus: return "modulus";
        case Quantity::count: return "count";
        case Quantity::strain: return "strain";
    }
    return "quantity";
}

}  // namespace trm::data
