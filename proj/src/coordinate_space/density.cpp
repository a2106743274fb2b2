#include "qrelax/coordinate_space/density.hpp"

#include <cmath>

#include "qrelax/core/errors.hpp"
#include "qrelax/core/stencil.hpp"

namespace qrelax::coord {

CoordDensity::CoordDensity(CoordGrid g, PhysParams p) : grid(g), params(p), values(g.size(), 0.0) {}

CoordDensity::CoordDensity(CoordGrid g, PhysParams p, std::vector<double> v)
    : grid(g), params(p), values(std::move(v)) {
    if (values.size() != grid.size()) throw ArgumentError("density values do not match grid");
}

double density_norm(const CoordDensity& rho) { return stencil::trapezoid(rho.values, rho.grid.spacing()); }

CoordMoments density_moments(const CoordDensity& rho) {
    const std::size_t n = rho.grid.size();
    std::vector<double> wx(n), wxx(n);
    for (std::size_t i = 0; i < n; ++i) {
        wx[i] = rho.grid[i] * rho.values[i];
        wxx[i] = rho.grid[i] * wx[i];
    }
    const double h = rho.grid.spacing();
    const double norm = density_norm(rho);
    if (!(norm != 0.0)) throw DomainError("density has zero norm");
    const double mean = stencil::trapezoid(wx, h) / norm;
    return {mean, stencil::trapezoid(wxx, h) / norm - mean * mean};
}

void normalize(CoordDensity& rho) {
    const double norm = density_norm(rho);
    if (!(norm > 0.0)) throw DomainError("cannot normalise a density with non-positive integral");
    for (double& v : rho.values) v /= norm;
}

CoordDensity gaussian_density(double mean, double variance, const CoordGrid& grid, const PhysParams& params) {
    if (!(variance > 0.0)) throw ArgumentError("Gaussian variance must be positive");
    CoordDensity rho(grid, params);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double d = grid[i] - mean;
        rho.values[i] = std::exp(-0.5 * d * d / variance);
    }
    normalize(rho);
    return rho;
}

double l1_distance(const CoordGrid& grid, const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() != grid.size() || b.size() != grid.size()) throw ArgumentError("densities do not match grid");
    std::vector<double> d(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) d[i] = std::abs(a[i] - b[i]);
    return stencil::trapezoid(d, grid.spacing());
}

}  // namespace qrelax::coord
