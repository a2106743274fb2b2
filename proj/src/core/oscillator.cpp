#include "qrelax/core/oscillator.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "qrelax/core/errors.hpp"

namespace qrelax {

namespace {

void require_oscillator(const PhysParams& params) {
    params.validate();
    if (!(params.omega0 > 0.0)) throw ArgumentError("oscillator spectrum requires omega0 > 0");
    if (!(params.hbar > 0.0)) throw ArgumentError("oscillator spectrum requires hbar > 0");
}

// Normalised Hermite function ψ_n(ξ) through the three-term recurrence,
// which stays well scaled for large n where H_n(ξ) alone overflows.
double hermite_function(std::size_t n, double xi) {
    double prev = 0.0;
    double cur = std::pow(std::numbers::pi, -0.25) * std::exp(-0.5 * xi * xi);
    for (std::size_t k = 0; k < n; ++k) {
        const double kd = static_cast<double>(k);
        const double next = std::sqrt(2.0 / (kd + 1.0)) * xi * cur - std::sqrt(kd / (kd + 1.0)) * prev;
        prev = cur;
        cur = next;
    }
    return cur;
}

}  // namespace

Eigenpair oscillator_eigenpair(std::size_t n, const PhysParams& params, const CoordGrid& grid) {
    require_oscillator(params);
    const double length = std::sqrt(params.hbar / (params.mass * params.omega0));
    const double scale = 1.0 / std::sqrt(length);

    Eigenpair out{params.hbar * params.omega0 * (static_cast<double>(n) + 0.5), std::vector<double>(grid.size())};
    double peak = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        out.values[i] = scale * hermite_function(n, grid[i] / length);
        peak = std::max(peak, std::abs(out.values[i]));
    }
    const double edge = std::max(std::abs(out.values.front()), std::abs(out.values.back()));
    if (edge > 1e-8 * peak) {
        std::ostringstream os;
        os << "grid [" << grid.lo() << ", " << grid.hi() << "] clips oscillator level " << n
           << " (boundary amplitude " << edge / peak << " of peak)";
        throw DomainError(os.str());
    }
    return out;
}

double partition_function_ho(double beta, const PhysParams& params, std::size_t n_terms) {
    require_oscillator(params);
    if (!(beta > 0.0)) throw ArgumentError("partition function requires beta > 0");
    if (n_terms < 1) throw ArgumentError("partition function requires n_terms >= 1");
    const double quantum = params.hbar * params.omega0;
    double z = 0.0;
    for (std::size_t n = 0; n < n_terms; ++n) z += std::exp(-beta * quantum * (static_cast<double>(n) + 0.5));
    return z;
}

double partition_function_ho_exact(double beta, const PhysParams& params) {
    require_oscillator(params);
    if (!(beta > 0.0)) throw ArgumentError("partition function requires beta > 0");
    return 0.5 / std::sinh(0.5 * beta * params.hbar * params.omega0);
}

}  // namespace qrelax
