#include "spurious/dataset.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string_view>

#include "spurious/errors.hpp"

namespace spurious {

const Series& Dataset::column(const std::string& column_name) const {
    const auto it = columns.find(column_name);
    if (it == columns.end()) throw LoadError("dataset " + name + ": no column '" + column_name + "'");
    return it->second;
}

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    if (s.size() >= 2 && s.front() == '"' && s.back() == '"') s = s.substr(1, s.size() - 2);
    return s;
}

std::vector<std::string_view> split(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = line.find(',', start);
        out.push_back(trim(line.substr(start, comma == std::string_view::npos ? line.npos : comma - start)));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return out;
}

std::string where(const std::string& name, std::size_t line_no, std::string_view column) {
    return name + ": row " + std::to_string(line_no) + ", column '" + std::string(column) + "'";
}

template <class T>
T parse_number(std::string_view cell, const std::string& name, std::size_t line_no, std::string_view column) {
    if (cell.empty()) throw LoadError(where(name, line_no, column) + ": empty cell");
    if (cell.front() == '+') cell.remove_prefix(1);
    T value{};
    const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), value);
    if (ec != std::errc() || ptr != cell.data() + cell.size()) {
        throw LoadError(where(name, line_no, column) + ": '" + std::string(cell) + "' is not a number");
    }
    if constexpr (std::is_floating_point_v<T>) {
        if (!std::isfinite(value)) throw LoadError(where(name, line_no, column) + ": non-finite value");
    }
    return value;
}

}  // namespace

Dataset parse_csv(const std::string& text, const std::string& y_column, const std::string& x_column,
                  const std::string& name) {
    std::istringstream in(text);
    std::string line;
    std::size_t line_no = 0;

    std::vector<std::string_view> header;
    std::string header_line;
    while (std::getline(in, line)) {
        ++line_no;
        if (!trim(line).empty()) {
            header_line = line;
            header = split(header_line);
            break;
        }
    }
    if (header.empty()) throw LoadError(name + ": missing header row");

    auto find = [&](std::string_view wanted) -> std::optional<std::size_t> {
        for (std::size_t i = 0; i < header.size(); ++i) {
            if (header[i] == wanted) return i;
        }
        return std::nullopt;
    };
    const auto y_idx = find(y_column);
    if (!y_idx) throw LoadError(name + ": missing column '" + y_column + "'");
    const auto x_idx = find(x_column);
    if (!x_idx) throw LoadError(name + ": missing column '" + x_column + "'");
    const auto year_idx = find("year");

    Dataset ds;
    ds.name = name;
    Series y;
    Series x;
    std::vector<long long> year;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        const auto fields = split(line);
        if (fields.size() != header.size()) {
            throw LoadError(name + ": row " + std::to_string(line_no) + " has " + std::to_string(fields.size()) +
                            " fields, header has " + std::to_string(header.size()));
        }
        y.push_back(parse_number<double>(fields[*y_idx], name, line_no, y_column));
        x.push_back(parse_number<double>(fields[*x_idx], name, line_no, x_column));
        if (year_idx) year.push_back(parse_number<long long>(fields[*year_idx], name, line_no, "year"));
    }
    if (y.empty()) throw LoadError(name + ": no data rows");
    ds.columns.emplace(y_column, std::move(y));
    ds.columns.emplace(x_column, std::move(x));
    if (year_idx) ds.year = std::move(year);
    return ds;
}

Dataset load_csv(const std::filesystem::path& path, const std::string& y_column, const std::string& x_column) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw LoadError("cannot open data file " + path.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_csv(buffer.str(), y_column, x_column, path.string());
}

double correlation(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) throw ParameterError("correlation: lengths differ");
    if (a.size() < 2) throw ParameterError("correlation: need at least 2 observations");
    const double n = static_cast<double>(a.size());
    double ma = 0.0;
    double mb = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        ma += a[i];
        mb += b[i];
    }
    ma /= n;
    mb /= n;
    double sab = 0.0;
    double saa = 0.0;
    double sbb = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        sab += (a[i] - ma) * (b[i] - mb);
        saa += (a[i] - ma) * (a[i] - ma);
        sbb += (b[i] - mb) * (b[i] - mb);
    }
    if (!(saa > 0.0 && sbb > 0.0)) throw DegenerateError("correlation: a series is constant");
    return sab / std::sqrt(saa * sbb);
}

}  // namespace spurious
