#include "qrelax/cli/svg.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <sstream>
#include <vector>

#include "qrelax/io/csv.hpp"

namespace qrelax::cli {

namespace {

constexpr double kWidth = 720.0;
constexpr double kHeight = 440.0;
constexpr double kLeft = 80.0;
constexpr double kRight = 200.0;
constexpr double kTop = 40.0;
constexpr double kBottom = 50.0;
constexpr const char* kColours[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd",
                                    "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};

std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) out.push_back(cell);
    return out;
}

double number(const std::string& cell) {
    double v = std::numeric_limits<double>::quiet_NaN();
    const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
    if (ec != std::errc() || ptr != cell.data() + cell.size()) return std::numeric_limits<double>::quiet_NaN();
    return v;
}

std::string escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '&': out += "&amp;"; break;
            default: out += c;
        }
    }
    return out;
}

struct Range {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    void add(double v) {
        if (!std::isfinite(v)) return;
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    [[nodiscard]] bool empty() const { return !(hi >= lo); }
    void pad() {
        if (empty()) {
            lo = 0.0;
            hi = 1.0;
        } else if (hi == lo) {
            const double d = lo == 0.0 ? 1.0 : 0.05 * std::abs(lo);
            lo -= d;
            hi += d;
        }
    }
};

}  // namespace

std::string svg_line_plot(const std::string& csv_text, const std::string& title) {
    std::istringstream in(csv_text);
    std::string line;
    std::getline(in, line);
    const auto header = split(line);
    std::vector<std::vector<double>> columns(header.size());
    while (std::getline(in, line)) {
        const auto cells = split(line);
        for (std::size_t c = 0; c < header.size(); ++c) columns[c].push_back(c < cells.size() ? number(cells[c]) : NAN);
    }

    Range xr;
    for (double v : columns.empty() ? std::vector<double>{} : columns[0]) xr.add(v);
    const bool log_x = !xr.empty() && xr.lo > 0.0 && xr.hi / xr.lo > 1e3;
    auto xt = [&](double x) { return log_x ? std::log10(x) : x; };
    Range tx;
    for (double v : columns.empty() ? std::vector<double>{} : columns[0]) {
        if (!log_x || v > 0.0) tx.add(xt(v));
    }
    Range yr;
    for (std::size_t c = 1; c < columns.size(); ++c) {
        for (double v : columns[c]) yr.add(v);
    }
    tx.pad();
    yr.pad();

    const double plot_w = kWidth - kLeft - kRight;
    const double plot_h = kHeight - kTop - kBottom;
    auto px = [&](double x) { return kLeft + (xt(x) - tx.lo) / (tx.hi - tx.lo) * plot_w; };
    auto py = [&](double y) { return kTop + (yr.hi - y) / (yr.hi - yr.lo) * plot_h; };

    std::ostringstream out;
    out.precision(6);
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
        << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out << "<text x=\"" << kLeft << "\" y=\"24\" font-size=\"14\">" << escape(title) << "</text>\n";
    out << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\"" << plot_w << "\" height=\"" << plot_h
        << "\" fill=\"none\" stroke=\"black\"/>\n";

    auto tick_label = [&](double t) { return io::format_number(log_x ? std::pow(10.0, t) : t); };
    for (int k = 0; k <= 4; ++k) {
        const double f = k / 4.0;
        const double xv = tx.lo + f * (tx.hi - tx.lo);
        const double xpos = kLeft + f * plot_w;
        out << "<text x=\"" << xpos << "\" y=\"" << kTop + plot_h + 18 << "\" text-anchor=\"middle\">"
            << tick_label(xv) << "</text>\n";
        const double yv = yr.lo + f * (yr.hi - yr.lo);
        const double ypos = kTop + (1.0 - f) * plot_h;
        out << "<text x=\"" << kLeft - 6 << "\" y=\"" << ypos + 4 << "\" text-anchor=\"end\">"
            << io::format_number(yv) << "</text>\n";
    }
    if (!header.empty()) {
        out << "<text x=\"" << kLeft + 0.5 * plot_w << "\" y=\"" << kHeight - 12 << "\" text-anchor=\"middle\">"
            << escape(header[0]) << (log_x ? " (log scale)" : "") << "</text>\n";
    }

    for (std::size_t c = 1; c < columns.size(); ++c) {
        const char* colour = kColours[(c - 1) % std::size(kColours)];
        std::string points;
        auto flush = [&] {
            if (!points.empty()) {
                out << "<polyline fill=\"none\" stroke=\"" << colour << "\" stroke-width=\"1.5\" points=\"" << points
                    << "\"/>\n";
            }
            points.clear();
        };
        for (std::size_t r = 0; r < columns[c].size(); ++r) {
            const double x = columns[0][r];
            const double y = columns[c][r];
            if (!std::isfinite(x) || !std::isfinite(y) || (log_x && x <= 0.0)) {
                flush();
                continue;
            }
            std::ostringstream pt;
            pt.precision(6);
            pt << px(x) << ',' << py(y) << ' ';
            points += pt.str();
        }
        flush();
        const double ly = kTop + 16.0 * static_cast<double>(c);
        out << "<line x1=\"" << kWidth - kRight + 12 << "\" y1=\"" << ly - 4 << "\" x2=\"" << kWidth - kRight + 32
            << "\" y2=\"" << ly - 4 << "\" stroke=\"" << colour << "\" stroke-width=\"2\"/>\n";
        out << "<text x=\"" << kWidth - kRight + 38 << "\" y=\"" << ly << "\">" << escape(header[c]) << "</text>\n";
    }
    out << "</svg>\n";
    return out.str();
}

}  // namespace qrelax::cli
