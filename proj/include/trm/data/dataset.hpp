#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "trm/common/types.hpp"
#include "trm/data/schema.hpp"

namespace trm::data {

/// One wall test in physical units. Values are stored in schema order.
struct WallRecord {
    std::vector<std::string> categorical;  ///< one entry per schema categorical column
    std::vector<double> numeric;           ///< one entry per schema numeric column
    std::optional<double> target;          ///< V_exp in kN; absent at serving time
};

enum class Stage { raw, encoded, scaled };
enum class ColumnKind { categorical, binary, numeric };

struct Column {
    std::string name;
    ColumnKind kind = ColumnKind::numeric;
    std::string unit;
    std::string group;  ///< source categorical column for binary columns
};

/// Feature matrix plus target with a column layout that follows the pipeline stage.
/// In the raw stage categorical cells hold the category's index in the schema.
struct TabularDataset {
    DatasetSchema schema;
    std::vector<Column> columns;
    Matrix features;
    Vector target;
    std::vector<RowId> row_ids;
    Stage stage = Stage::raw;

    std::size_t size() const { return static_cast<std::size_t>(features.rows()); }
    std::size_t width() const { return static_cast<std::size_t>(features.cols()); }
    std::vector<std::string> column_names() const;
    std::optional<std::size_t> column_index(const std::string& name) const;
};

/// Checks positivity, finiteness, integrality of n_layers and closed category sets.
void validate_record(const WallRecord& record, const DatasetSchema& schema, RowId row);

/// Builds a raw-stage dataset. Records must carry targets.
TabularDataset from_records(const std::vector<WallRecord>& records, const DatasetSchema& schema,
                            std::vector<RowId> row_ids = {});

/// Recovers the physical-unit records of a raw-stage dataset.
std::vector<WallRecord> to_records(const TabularDataset& raw);

TabularDataset read_dataset(std::istream& in, const DatasetSchema& schema);
TabularDataset load_dataset(const std::filesystem::path& path, const DatasetSchema& schema);

void write_dataset_csv(std::ostream& out, const std::vector<WallRecord>& records, const DatasetSchema& schema);

/// Subset of rows in the given order; row ids travel with their rows.
TabularDataset select_rows(const TabularDataset& ds, const std::vector<std::size_t>& indices);

const char* to_string(Stage stage);
Stage stage_from_string(const std::string& s);
const char* to_string(ColumnKind kind);
ColumnKind column_kind_from_string(const std::string& s);

}  // namespace trm::data
