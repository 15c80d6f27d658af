#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace maskreg {

/// Minimal RFC-4180-ish table: a header row plus string cells. Double-quoted
/// cells may contain commas and doubled quotes.
struct CsvTable
{
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    /// Index of `name` in the header; throws std::runtime_error when absent.
    std::size_t column(std::string_view name) const;
};

CsvTable read_csv(const std::filesystem::path& path);
std::vector<std::string> split_csv_line(std::string_view line);
std::string csv_escape(std::string_view cell);

/// Shortest decimal text that parses back to exactly `v`.
std::string format_real(double v);
double parse_real(std::string_view text);

} // namespace maskreg
