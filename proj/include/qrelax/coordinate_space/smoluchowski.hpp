#pragma once

#include <cstddef>
#include <iosfwd>
#include <vector>

#include "qrelax/coordinate_space/density.hpp"
#include "qrelax/core/potential.hpp"

namespace qrelax::coord {

/// Cells with ρ below this fraction of max ρ are masked in the Bohm potential.
inline constexpr double kBohmFloor = 1e-12;

/// Q = −ħ²(∂_x²√ρ)/(2m√ρ), fourth-order stencil on √ρ. Masked cells take the
/// value of the nearest unmasked cell. Throws DegenerateStateError with
/// fewer than five unmasked cells.
std::vector<double> bohm_potential(const CoordDensity& rho);

/// ∂_x[ρ∂_x(U + Q)/b + D∂_xρ] in flux form with D = k_BT/b: zero flux through
/// the outermost interfaces and the end nodes held fixed, so Σ out = 0.
std::vector<double> rhs_smoluchowski_bohm(const CoordDensity& rho, const Potential& potential);

/// ∫ρ(U + Q) dx + k_BT∫ρ ln ρ dx, the Lyapunov functional of the flow.
double smoluchowski_free_energy(const CoordDensity& rho, const Potential& potential);

struct CoordSample {
    double t;
    double mean_x;
    double var_x;
    double norm;
    double free_energy;
};

struct CoordTrajectory {
    std::vector<CoordSample> samples;
    CoordDensity final_density;
};

/// Implicit BDF2 (first step backward Euler) with Newton iterations on a
/// banded finite-difference Jacobian. The fourth-order Bohm term makes
/// explicit stepping impractical (dt ~ dx⁴). Raises InstabilityError when
/// Newton fails or the norm drifts by more than 1e-3.
CoordTrajectory evolve_smoluchowski_bohm(const CoordDensity& rho0, const Potential& potential, double t_end,
                                         double dt, std::size_t stride = 10);

/// T = 0 harmonic relaxation from σ_x² = 0: (ħ/2mω0)√(1 − e^{−4mω0²t/b}).
double dispersion_t0_nonlinear(double t, const PhysParams& params);
/// The classical-like (ħ/2mω0)(1 − e^{−2mω0²t/b}).
double dispersion_t0_classical(double t, const PhysParams& params);

/// CSV with header t,mean_x,var_x,norm,free_energy.
void write_coord_csv(std::ostream& out, const CoordTrajectory& trajectory);

}  // namespace qrelax::coord
