#pragma once

#include <cstddef>
#include <iosfwd>
#include <vector>

#include "qrelax/coordinate_space/density.hpp"
#include "qrelax/core/potential.hpp"

namespace qrelax::coord {

/// Largest dβ for which RK4 on 2∂_βψ = −Ĥψ is stable: the real-axis RK4
/// bound 2.785 over the spectral radius of Ĥ/2, estimated as
/// (ħ²/2m)(16/3)/dx² + max|U|.
double bloch_stability_limit(const CoordGrid& grid, const PhysParams& params, const Potential& potential);

/// Integrates 2∂_βψ = −Ĥψ, Ĥ = −(ħ²/2m)∂_x² + U, from ψ0 to β_end with RK4 and
/// a fourth-order stencil. The end nodes feel only U. Returns the
/// unnormalised ψ; the equilibrium density is ψ²/∫ψ². Throws
/// ConfigurationError when dβ exceeds bloch_stability_limit.
std::vector<double> bloch_propagate(const std::vector<double>& psi0, double beta_end, const Potential& potential,
                                    double dbeta, const CoordGrid& grid, const PhysParams& params);

/// ψ²/∫ψ² from a constant (infinite-temperature) start.
CoordDensity bloch_equilibrium_density(double beta, const Potential& potential, double dbeta, const CoordGrid& grid,
                                       const PhysParams& params);

/// Z = tr e^{−βĤ} = ‖e^{−βĤ/2}‖_F² of the discretised Hamiltonian: every
/// unit column is propagated to β with the Bloch equation (columns run in
/// parallel) and the squared entries are summed.
double bloch_partition_function(double beta, const Potential& potential, double dbeta, const CoordGrid& grid,
                                const PhysParams& params);

struct GibbsDensity {
    CoordDensity density;
    double tail_weight;     // Boltzmann weight of the omitted levels
    bool accuracy_warning;  // tail_weight > 1e-8
};

/// Σ_{n < n_modes} e^{−βE_n}φ_n²/Z for the harmonic oscillator, normalised on
/// the grid. β = +inf gives φ_0².
GibbsDensity gibbs_coordinate_density(double beta, const PhysParams& params, const CoordGrid& grid,
                                      std::size_t n_modes);

/// CSV rows x,rho_eq,Q,U.
void write_bloch_csv(std::ostream& out, const CoordDensity& rho_eq, const Potential& potential);

}  // namespace qrelax::coord
