#pragma once

#include <iosfwd>
#include <vector>

#include "qrelax/core/grid.hpp"
#include "qrelax/core/params.hpp"
#include "qrelax/core/potential.hpp"
#include "qrelax/moments/closure.hpp"

namespace qrelax::phase {

using moments::MomentState;

/// Real field on an (x, p) grid: a Wigner function, or the classical phase
/// density f when `classical` is set (then negativity is an error rather
/// than a quasi-probability feature).
struct WignerField {
    PhaseGrid grid;
    PhysParams params;
    std::vector<double> values;  // row-major in x, see PhaseGrid::index
    bool classical = false;

    WignerField(PhaseGrid g, PhysParams p);
    WignerField(PhaseGrid g, PhysParams p, std::vector<double> v);

    [[nodiscard]] double& at(std::size_t i, std::size_t j) { return values[grid.index(i, j)]; }
    [[nodiscard]] double at(std::size_t i, std::size_t j) const { return values[grid.index(i, j)]; }
};

/// Tensor-product trapezoid rule ∬ v dx dp for samples on `grid`.
double integrate(const PhaseGrid& grid, const std::vector<double>& v);

/// ∬ W dx dp.
double field_norm(const WignerField& w);

/// Bivariate Gaussian with the given moments, normalised so the grid
/// integral is 1.
WignerField gaussian_wigner(const MomentState& moments, const PhaseGrid& grid, const PhysParams& params);

/// Equilibrium Wigner function of the harmonic oscillator,
/// W ∝ exp(−2 tanh(βħω0/2) H / ħω0), normalised on the grid. β = +inf gives
/// the ground state exp(−2H/ħω0)/πħ; ħ = 0 gives the classical Gibbs
/// density. Throws DomainError when either axis is narrower than ±6
/// standard deviations.
WignerField equilibrium_wigner_ho(double beta, const PhysParams& params, const PhaseGrid& grid);

/// (σ_x², σ_p²) of equilibrium_wigner_ho: (ħ/2mω0) coth(s) and m²ω0² times that.
MomentState equilibrium_moments_ho(double beta, const PhysParams& params);

/// Moments of W/∬W by quadrature.
MomentState field_moments(const WignerField& w);

/// ∬ H W dx dp with H = p²/2m + U(x).
double field_energy(const WignerField& w, const Potential& potential);

struct EntropyEstimate {
    double value;              // −∬ W ln W over cells with W > 0
    double negative_fraction;  // ∬_{W<0} |W| / ∬ |W|
    [[nodiscard]] bool flagged() const { return negative_fraction > 0.0; }
};

/// Shannon-Wigner entropy in units of k_B. Negative cells are excluded and
/// reported instead of raising.
EntropyEstimate shannon_wigner_entropy(const WignerField& w);

/// CSV rows x,p,W.
void write_field_csv(std::ostream& out, const WignerField& w);

}  // namespace qrelax::phase
