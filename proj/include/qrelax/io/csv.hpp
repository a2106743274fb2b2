#pragma once

#include <initializer_list>
#include <ostream>
#include <span>
#include <string>
#include <vector>

namespace qrelax::io {

/// Comma-separated output: header row, 12 significant digits, '\n' line ends.
class CsvWriter {
public:
    CsvWriter(std::ostream& out, std::vector<std::string> header);

    void row(std::span<const double> values);
    void row(std::initializer_list<double> values) { row(std::span<const double>(values.begin(), values.size())); }

    [[nodiscard]] std::size_t columns() const { return header_.size(); }

    static constexpr int kSignificantDigits = 12;

private:
    std::ostream& out_;
    std::vector<std::string> header_;
};

/// One number formatted the way CsvWriter prints it.
std::string format_number(double value);

}  // namespace qrelax::io
