#pragma once

#include <cstddef>
#include <iosfwd>
#include <vector>

#include "qrelax/core/params.hpp"
#include "qrelax/moments/coefficients.hpp"

namespace qrelax::moments {

/// First and second moments of a Gaussian phase-space state.
struct MomentState {
    double mean_x = 0.0;
    double mean_p = 0.0;
    double var_x = 0.0;
    double var_p = 0.0;
    double cov_xp = 0.0;

    /// σ_x²σ_p² − σ_xp².
    [[nodiscard]] double determinant() const { return var_x * var_p - cov_xp * cov_xp; }
    [[nodiscard]] bool valid() const { return var_x > 0.0 && var_p > 0.0 && determinant() > 0.0; }
};

/// ⟨H⟩ of a Gaussian in the harmonic well: (σ_p² + ⟨p⟩²)/2m + mω0²(σ_x² + ⟨x⟩²)/2.
double gaussian_energy(const MomentState& s, const PhysParams& params);

/// Exact moment equations of the linear Fokker-Planck flow
///   ∂_t W = −(p/m)∂_x W + mω0² x ∂_p W + γ∂_p(pW) + D_p ∂_p²W
/// with (γ, D_p) from relaxation_coefficients. For the Maxwell-Heisenberg
/// model D_p follows σ_x² of the state itself, which makes the ODE nonlinear.
/// The returned MomentState holds time derivatives.
MomentState rhs_moment_closure(const MomentState& state, RelaxationModel model, double beta,
                               const PhysParams& params);

/// Self-consistent Maxwell-Heisenberg position variance
/// k_BT[1 + √(1 + (βħω0)²)] / (2mω0²); ħ/(2mω0) at T = 0.
double mh_equilibrium_variance(double beta, const PhysParams& params);

/// Stationary centred Gaussian of a model: σ_xp = 0, σ_p² = D_p/γ and
/// σ_x² = σ_p²/(m²ω0²).
MomentState equilibrium_moments(RelaxationModel model, double beta, const PhysParams& params);

struct MomentSample {
    double t;
    MomentState state;
    double energy;
};

struct MomentTrajectory {
    std::vector<MomentSample> samples;
    MomentState final_state;
};

/// RK4 on the five-component closure, recording every `stride` steps plus
/// both ends. Requires dt·max(γ, ω0) < 0.1 (ArgumentError); a step that
/// leaves a non-positive variance or covariance determinant raises
/// InstabilityError.
MomentTrajectory evolve_moments(const MomentState& state0, RelaxationModel model, double beta,
                                const PhysParams& params, double t_end, double dt, std::size_t stride = 10);

/// CSV with header t,mean_x,mean_p,var_x,var_p,cov_xp,energy.
void write_moment_csv(std::ostream& out, const MomentTrajectory& trajectory);

}  // namespace qrelax::moments
