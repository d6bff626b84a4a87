#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "spurious/dgp.hpp"

namespace spurious {

/// Named real columns of equal length, optionally indexed by year.
struct Dataset {
    std::string name;
    std::map<std::string, Series> columns;
    std::optional<std::vector<long long>> year;

    std::size_t size() const noexcept { return columns.empty() ? 0 : columns.begin()->second.size(); }
    const Series& column(const std::string& column_name) const;
};

/// Reads a comma-separated file with a header row. Only `y_column` and
/// `x_column` (plus a `year` column, if present) are kept, but every row must
/// have as many fields as the header. Errors name the offending row and column.
Dataset load_csv(const std::filesystem::path& path, const std::string& y_column, const std::string& x_column);

/// Same as load_csv, reading from an in-memory document.
Dataset parse_csv(const std::string& text, const std::string& y_column, const std::string& x_column,
                  const std::string& name = "inline");

/// Pearson correlation coefficient.
double correlation(std::span<const double> a, std::span<const double> b);

}  // namespace spurious
