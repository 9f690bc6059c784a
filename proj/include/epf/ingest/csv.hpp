#pragma once

#include <string>
#include <vector>

namespace epf {

/// Minimal RFC-4180 CSV: quoted fields, embedded commas/quotes/newlines,
/// UTF-8 passthrough. Header row handled by callers.
struct CsvData {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    int column_index(const std::string& name) const;  // -1 when absent
};

CsvData read_csv(const std::string& path);
CsvData parse_csv(const std::string& text);

std::string csv_escape(const std::string& field);

/// Shortest decimal that round-trips the exact binary64 value.
std::string format_double(double v);

}  // namespace epf
