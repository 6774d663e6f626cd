#include "thz/csv.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <fmt/format.h>

namespace thz {

namespace {

std::string_view trim(std::string_view s)
{
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t'))
        s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
        s.remove_suffix(1);
    return s;
}

} // namespace

std::vector<std::vector<double>> parse_numeric_csv(std::string_view text,
                                                   std::string_view expected_header)
{
    std::vector<std::vector<double>> rows;
    bool header_seen = false;
    std::size_t columns = 1;
    for (char c : expected_header)
        if (c == ',')
            ++columns;

    std::size_t line_no = 0;
    while (!text.empty()) {
        auto nl = text.find('\n');
        auto line = trim(text.substr(0, nl));
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
        ++line_no;
        if (line.empty())
            continue;
        if (!header_seen) {
            if (line != expected_header)
                throw std::runtime_error(fmt::format("line {}: expected header '{}', got '{}'",
                                                     line_no, expected_header, line));
            header_seen = true;
            continue;
        }
        std::vector<double> row;
        row.reserve(columns);
        std::string_view rest = line;
        while (true) {
            auto comma = rest.find(',');
            auto field = trim(rest.substr(0, comma));
            double v = 0.0;
            auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
            if (ec != std::errc{} || ptr != field.data() + field.size() || field.empty())
                throw std::runtime_error(
                    fmt::format("line {}: malformed number '{}'", line_no, field));
            row.push_back(v);
            if (comma == std::string_view::npos)
                break;
            rest = rest.substr(comma + 1);
        }
        if (row.size() != columns)
            throw std::runtime_error(fmt::format("line {}: expected {} fields, got {}", line_no,
                                                 columns, row.size()));
        rows.push_back(std::move(row));
    }
    if (!header_seen)
        throw std::runtime_error(fmt::format("missing header '{}'", expected_header));
    return rows;
}

std::string read_text_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_file(const std::string& path, std::string_view text)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw std::runtime_error("cannot write " + path);
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
}

std::string format_number(double value)
{
    // fmt's default double format is the shortest round-trip representation
    // and never consults the global locale.
    return fmt::format("{}", value);
}

CsvWriter::CsvWriter(std::initializer_list<std::string_view> header)
    : columns_(header.size())
{
    bool first = true;
    for (auto h : header) {
        if (!first)
            text_ += ',';
        text_ += h;
        first = false;
    }
    text_ += '\n';
}

void CsvWriter::row(std::initializer_list<double> values)
{
    if (values.size() != columns_)
        throw std::logic_error("csv row width mismatch");
    bool first = true;
    for (double v : values) {
        if (!first)
            text_ += ',';
        text_ += format_number(v);
        first = false;
    }
    text_ += '\n';
}

void CsvWriter::row(const std::vector<std::string>& fields)
{
    if (fields.size() != columns_)
        throw std::logic_error("csv row width mismatch");
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i)
            text_ += ',';
        text_ += fields[i];
    }
    text_ += '\n';
}

} // namespace thz
