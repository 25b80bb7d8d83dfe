#pragma once

#include <optional>
#include <string>
#include <vector>

namespace trm::data {

/// Physical quantity family; drives the validation message for non-positive values.
enum class Quantity { area, strength, thickness, modulus, count, strain };

struct NumericField {
    std::string name;
    std::string unit;
    Quantity quantity;
    std::string description;
};

struct CategoricalField {
    std::string name;
    std::vector<std::string> categories;  ///< fixed order; defines one-hot column order
    std::string description;
};

/// Engineered column: the product of two numeric fields.
struct DerivedField {
    std::string name;
    std::string left;
    std::string right;
    std::string unit;
};

struct DatasetSchema {
    std::vector<NumericField> numeric_columns;
    std::vector<CategoricalField> categorical_columns;
    std::string target_column;
    std::string target_unit;
    std::vector<DerivedField> derived_columns;

    std::optional<std::size_t> numeric_index(const std::string& name) const;
    std::optional<std::size_t> categorical_index(const std::string& name) const;

    /// Binary columns after one-hot encoding plus numeric columns (derived excluded).
    std::size_t encoded_width() const;

    /// All raw input names, categoricals first, target excluded.
    std::vector<std::string> input_names() const;
};

/// The shear-capacity wall-test schema: 2 categorical + 11 numeric inputs, target V_exp (kN).
const DatasetSchema& wall_schema();

const char* to_string(Quantity q);

}  // namespace trm::data
