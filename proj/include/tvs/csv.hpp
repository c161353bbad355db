#pragma once

#include "tvs/series.hpp"

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace tvs::csv {

/// Single numeric column, optional single header line, '.' decimal point.
/// Blank lines are ignored; a trailing '\r' is tolerated.
Series read_series(std::istream& in);
Series read_series(const std::filesystem::path& path);

void write_series(std::ostream& out, const Series& x, const std::string& header = "value");
void write_series(const std::filesystem::path& path, const Series& x, const std::string& header = "value");

/// Shortest decimal text with 17 significant digits, round-trip exact for doubles.
std::string format_double(double value);

/// Parses a double, accepting "inf"/"-inf"/"nan" as written by format_double.
double parse_double(const std::string& text);

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    /// Index of a named column; throws parse-error when absent.
    std::size_t column(const std::string& name) const;
};

Table read_table(std::istream& in);
Table read_table(const std::filesystem::path& path);
void write_table(std::ostream& out, const Table& table);
void write_table(const std::filesystem::path& path, const Table& table);

} // namespace tvs::csv
