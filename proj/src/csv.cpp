#include "tvs/csv.hpp"

#include "tvs/error.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

namespace tvs::csv {
namespace {

std::string trim(std::string s)
{
    const auto not_space = [](unsigned char c) { return c != ' ' && c != '\t' && c != '\r' && c != '\n'; };
    std::size_t b = 0;
    while (b < s.size() && !not_space(static_cast<unsigned char>(s[b])))
        ++b;
    std::size_t e = s.size();
    while (e > b && !not_space(static_cast<unsigned char>(s[e - 1])))
        --e;
    return s.substr(b, e - b);
}

bool try_parse(const std::string& text, double& out)
{
    if (text == "inf" || text == "+inf") {
        out = std::numeric_limits<double>::infinity();
        return true;
    }
    if (text == "-inf") {
        out = -std::numeric_limits<double>::infinity();
        return true;
    }
    if (text == "nan") {
        out = std::numeric_limits<double>::quiet_NaN();
        return true;
    }
    const char* begin = text.data();
    const char* end = begin + text.size();
    if (begin != end && *begin == '+')
        ++begin;
    auto [ptr, ec] = std::from_chars(begin, end, out);
    return ec == std::errc() && ptr == end && begin != end;
}

std::vector<std::string> split_fields(const std::string& line)
{
    std::vector<std::string> fields;
    std::string field;
    std::istringstream ss(line);
    while (std::getline(ss, field, ','))
        fields.push_back(trim(field));
    if (!line.empty() && line.back() == ',')
        fields.emplace_back();
    return fields;
}

std::ifstream open_in(const std::filesystem::path& path)
{
    if (!std::filesystem::exists(path))
        throw Error(ErrorKind::InputNotFound, "input file not found: " + path.string());
    std::ifstream in(path);
    if (!in)
        throw Error(ErrorKind::Io, "cannot open " + path.string());
    return in;
}

std::ofstream open_out(const std::filesystem::path& path)
{
    std::ofstream out(path);
    if (!out)
        throw Error(ErrorKind::Io, "cannot write " + path.string());
    return out;
}

} // namespace

Series read_series(std::istream& in)
{
    std::vector<double> values;
    std::string line;
    std::size_t line_no = 0;
    bool header_allowed = true;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string field = trim(line);
        if (field.empty())
            continue;
        double v = 0.0;
        if (!try_parse(field, v)) {
            if (header_allowed) {
                header_allowed = false;
                continue;
            }
            throw Error(ErrorKind::Parse, "line " + std::to_string(line_no) + ": not a number: '" + field + "'");
        }
        if (!std::isfinite(v))
            throw Error(ErrorKind::Parse, "line " + std::to_string(line_no) + ": non-finite value");
        header_allowed = false;
        values.push_back(v);
    }
    if (values.empty())
        throw Error(ErrorKind::Parse, "no numeric values found");
    return Series(std::move(values));
}

Series read_series(const std::filesystem::path& path)
{
    auto in = open_in(path);
    return read_series(in);
}

void write_series(std::ostream& out, const Series& x, const std::string& header)
{
    if (!header.empty())
        out << header << '\n';
    for (double v : x.values())
        out << format_double(v) << '\n';
}

void write_series(const std::filesystem::path& path, const Series& x, const std::string& header)
{
    auto out = open_out(path);
    write_series(out, x, header);
}

std::string format_double(double value)
{
    if (std::isnan(value))
        return "nan";
    if (std::isinf(value))
        return value > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    return buf;
}

double parse_double(const std::string& text)
{
    double v = 0.0;
    if (!try_parse(trim(text), v))
        throw Error(ErrorKind::Parse, "not a number: '" + text + "'");
    return v;
}

std::size_t Table::column(const std::string& name) const
{
    for (std::size_t i = 0; i < header.size(); ++i)
        if (header[i] == name)
            return i;
    throw Error(ErrorKind::Parse, "missing column '" + name + "'");
}

Table read_table(std::istream& in)
{
    Table table;
    std::string line;
    bool have_header = false;
    while (std::getline(in, line)) {
        if (trim(line).empty())
            continue;
        auto fields = split_fields(trim(line));
        if (!have_header) {
            table.header = std::move(fields);
            have_header = true;
            continue;
        }
        if (fields.size() != table.header.size())
            throw Error(ErrorKind::Parse, "row width " + std::to_string(fields.size()) + " does not match header width " +
                                              std::to_string(table.header.size()));
        table.rows.push_back(std::move(fields));
    }
    if (!have_header)
        throw Error(ErrorKind::Parse, "empty table");
    return table;
}

Table read_table(const std::filesystem::path& path)
{
    auto in = open_in(path);
    return read_table(in);
}

void write_table(std::ostream& out, const Table& table)
{
    auto write_row = [&out](const std::vector<std::string>& row) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i)
                out << ',';
            out << row[i];
        }
        out << '\n';
    };
    write_row(table.header);
    for (const auto& row : table.rows)
        write_row(row);
}

void write_table(const std::filesystem::path& path, const Table& table)
{
    auto out = open_out(path);
    write_table(out, table);
}

} // namespace tvs::csv
