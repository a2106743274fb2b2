#include "qrelax/io/csv.hpp"

#include <cmath>
#include <sstream>

#include "qrelax/core/errors.hpp"

namespace qrelax::io {

std::string format_number(double value) {
    if (std::isnan(value)) return "nan";
    if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
    std::ostringstream os;
    os.precision(CsvWriter::kSignificantDigits);
    os << value;
    return os.str();
}

CsvWriter::CsvWriter(std::ostream& out, std::vector<std::string> header) : out_(out), header_(std::move(header)) {
    for (std::size_t i = 0; i < header_.size(); ++i) out_ << (i ? "," : "") << header_[i];
    out_ << '\n';
}

void CsvWriter::row(std::span<const double> values) {
    if (values.size() != header_.size()) throw InternalError("CSV row width does not match header");
    for (std::size_t i = 0; i < values.size(); ++i) out_ << (i ? "," : "") << format_number(values[i]);
    out_ << '\n';
}

}  // namespace qrelax::io
