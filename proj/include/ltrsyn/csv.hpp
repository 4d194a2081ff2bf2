#pragma once

#include <fstream>
#include <string>
#include <vector>

namespace ltr {

/// Deterministic number formatting for file output: 12 significant digits,
/// '.' decimal separator.
std::string format_number(double value);

/// Round-trip-exact formatting (17 significant digits) for machine artifacts
/// that are read back, such as solved coefficients.
std::string format_exact(double value);

/// Minimal CSV writer: comma-separated, LF line endings, one header row.
class CsvWriter {
public:
    CsvWriter(const std::string& path, const std::vector<std::string>& header);

    void row(const std::vector<std::string>& cells);
    bool good() const { return static_cast<bool>(out_); }

private:
    std::ofstream out_;
    std::size_t columns_;
};

} // namespace ltr
