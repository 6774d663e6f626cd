#pragma once

#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

namespace thz {

/// Numeric CSV with a fixed header. Throws std::runtime_error naming the
/// offending line on a header mismatch or malformed field.
std::vector<std::vector<double>> parse_numeric_csv(std::string_view text,
                                                   std::string_view expected_header);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, std::string_view text);

/// Locale-independent number formatting (shortest round-trip form).
std::string format_number(double value);

/// Accumulates rows into a `\n`-terminated CSV document.
class CsvWriter {
public:
    explicit CsvWriter(std::initializer_list<std::string_view> header);

    void row(std::initializer_list<double> values);
    void row(const std::vector<std::string>& fields);

    const std::string& str() const { return text_; }
    std::size_t columns() const { return columns_; }

private:
    std::string text_;
    std::size_t columns_ = 0;
};

} // namespace thz
