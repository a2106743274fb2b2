#pragma once

#include <cstddef>
#include <vector>

#include "qrelax/core/grid.hpp"
#include "qrelax/core/params.hpp"

namespace qrelax {

struct Eigenpair {
    double energy;
    std::vector<double> values;  // φ_n sampled on the grid
};

/// Harmonic-oscillator level n: E_n = ħω0(n + ½) and the normalised
/// Hermite-Gaussian eigenfunction on `grid`. Throws DomainError when the
/// grid clips the eigenfunction (boundary amplitude above 1e-8 of the peak).
Eigenpair oscillator_eigenpair(std::size_t n, const PhysParams& params, const CoordGrid& grid);

/// Truncated sum Σ_{n < n_terms} exp(-β E_n).
double partition_function_ho(double beta, const PhysParams& params, std::size_t n_terms);

/// Closed form 1 / (2 sinh(βħω0/2)).
double partition_function_ho_exact(double beta, const PhysParams& params);

}  // namespace qrelax
