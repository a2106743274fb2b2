#include "qrelax/core/grid.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "qrelax/core/errors.hpp"

namespace qrelax {

CoordGrid::CoordGrid(double lo, double hi, std::size_t points) : lo_(lo), hi_(hi), n_(points) {
    if (!(std::isfinite(lo) && std::isfinite(hi) && hi > lo)) {
        std::ostringstream os;
        os << "grid bounds must satisfy hi > lo (got [" << lo << ", " << hi << "])";
        throw ArgumentError(os.str());
    }
    if (points < kMinPoints) {
        std::ostringstream os;
        os << "grid needs at least " << kMinPoints << " points (got " << points << ")";
        throw ArgumentError(os.str());
    }
    h_ = (hi - lo) / static_cast<double>(points - 1);
}

std::vector<double> CoordGrid::points() const {
    std::vector<double> out(n_);
    for (std::size_t i = 0; i < n_; ++i) out[i] = (*this)[i];
    return out;
}

double CoordGrid::half_width_about(double centre) const {
    return std::min(centre - lo_, hi_ - centre);
}

}  // namespace qrelax
