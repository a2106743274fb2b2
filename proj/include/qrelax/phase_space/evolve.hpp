#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "qrelax/core/potential.hpp"
#include "qrelax/phase_space/field.hpp"
#include "qrelax/phase_space/rhs.hpp"

namespace qrelax::phase {

/// Which phase-space equation to integrate.
struct PhaseDynamics {
    enum class Kind { KleinKramers, Harmonic, Semiclassical };

    Kind kind = Kind::Harmonic;
    RelaxationModel model = RelaxationModel::Quantum;  // Harmonic only
    Potential potential;                               // KleinKramers / Semiclassical
    double beta = 1.0;

    static PhaseDynamics klein_kramers(Potential potential, double beta);
    static PhaseDynamics harmonic(RelaxationModel model, double beta);
    static PhaseDynamics semiclassical(Potential potential, double beta);

    [[nodiscard]] std::string label() const;
};

/// Coefficients for the current field. State-dependent coefficients (σ_x²
/// for MAXWELL_HEISENBERG_14, the covariance determinant for the
/// semiclassical entropy term) are read off `w` itself.
FokkerPlanckTerms dynamics_terms(const PhaseDynamics& dynamics, const WignerField& w);

/// Explicit-step bound 0.4·min(dx m/p_max, dp/max|U′|, dp/(γ p_max),
/// dp²/(2 D_p,max), dp³/(c₃,max)) for fields like `w0`.
double cfl_limit(const PhaseDynamics& dynamics, const WignerField& w0);

struct WignerSample {
    double t;
    MomentState moments;
    double norm;
    double energy;
    double entropy;
    double negative_fraction;
};

struct WignerTrajectory {
    std::vector<WignerSample> samples;
    WignerField final_field;
};

/// Fixed-step RK4. State-dependent coefficients are re-evaluated at every
/// stage. Throws ConfigurationError when dt exceeds cfl_limit, and
/// InstabilityError when the norm drifts by more than 1e-3 or a classical
/// density dips below −1e-10.
WignerTrajectory evolve_wigner(const WignerField& w0, const PhaseDynamics& dynamics, double t_end, double dt,
                               std::size_t stride = 100);

/// CSV with header t,mean_x,mean_p,var_x,var_p,cov_xp,norm,energy,entropy,negative_fraction.
void write_wigner_csv(std::ostream& out, const WignerTrajectory& trajectory);

}  // namespace qrelax::phase
