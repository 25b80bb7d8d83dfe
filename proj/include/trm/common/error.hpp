#pragma once

#include <optional>
#include <stdexcept>
#include <string>

#include "trm/common/types.hpp"

namespace trm {

/// Base for every error the toolkit raises on purpose.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& message) : std::runtime_error(message) {}
};

/// Invalid input data: carries the row and column that failed validation.
class DataError : public Error {
public:
    DataError(std::string message, std::optional<RowId> row = std::nullopt, std::string column = {})
        : Error(format(message, row, column)), row_(row), column_(std::move(column)), detail_(std::move(message)) {}

    const std::optional<RowId>& row() const noexcept { return row_; }
    const std::string& column() const noexcept { return column_; }
    const std::string& detail() const noexcept { return detail_; }

private:
    static std::string format(const std::string& message, const std::optional<RowId>& row,
                              const std::string& column) {
        std::string out;
        if (row) out += "row " + std::to_string(*row);
        if (!column.empty()) out += (out.empty() ? "" : ", ") + std::string("column ") + column;
        return out.empty() ? message : out + ": " + message;
    }

    std::optional<RowId> row_;
    std::string column_;
    std::string detail_;
};

/// A category value outside the closed set of its column.
class CategoryError : public DataError {
public:
    using DataError::DataError;
};

/// Numerical failure inside a fitting routine (non-convergence, overflow, singular system).
class NumericalError : public Error {
public:
    using Error::Error;
};

/// Caller violated an operation's precondition.
class InvalidArgument : public Error {
public:
    using Error::Error;
};

}  // namespace trm
