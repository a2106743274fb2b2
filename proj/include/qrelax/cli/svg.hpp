#pragma once

#include <string>

namespace qrelax::cli {

/// Line plot of every CSV column against the first one. Non-numeric cells
/// (inf, nan) break the line; the x-axis turns logarithmic when the first
/// column is positive and spans more than three decades.
std::string svg_line_plot(const std::string& csv_text, const std::string& title);

}  // namespace qrelax::cli
