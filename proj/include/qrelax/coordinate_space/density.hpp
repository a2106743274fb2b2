#pragma once

#include <vector>

#include "qrelax/core/grid.hpp"
#include "qrelax/core/params.hpp"

namespace qrelax::coord {

/// Coordinate density ρ(x) on a uniform grid.
struct CoordDensity {
    CoordGrid grid;
    PhysParams params;
    std::vector<double> values;

    CoordDensity(CoordGrid g, PhysParams p);
    CoordDensity(CoordGrid g, PhysParams p, std::vector<double> v);
};

struct CoordMoments {
    double mean;
    double variance;
};

/// Trapezoid ∫ρ dx.
double density_norm(const CoordDensity& rho);
/// Mean and variance of ρ/∫ρ.
CoordMoments density_moments(const CoordDensity& rho);
/// Rescales to unit trapezoid norm. Throws DomainError for zero norm.
void normalize(CoordDensity& rho);

/// Normalised Gaussian with the given mean and variance.
CoordDensity gaussian_density(double mean, double variance, const CoordGrid& grid, const PhysParams& params);

/// ∫|a − b| dx on a shared grid.
double l1_distance(const CoordGrid& grid, const std::vector<double>& a, const std::vector<double>& b);

}  // namespace qrelax::coord
