#pragma once

#include <iosfwd>
#include <optional>
#include <string_view>

#include "qrelax/core/params.hpp"

namespace qrelax::moments {

// Coefficient functions take β explicitly (k_BT = 1/β) and ignore
// params.temperature. β = +inf selects the zero-temperature limit.

/// Isothermal friction B = b sinh(s)/s with s = βħω0/2; +inf at T = 0.
double friction_B(double beta, const PhysParams& params);

/// Momentum diffusion D_p = b k_BT cosh(s); +inf at T = 0.
double diffusion_Dp(double beta, const PhysParams& params);

/// ε = (ħω0/2) coth(s); ħω0/2 at T = 0 and k_BT for ω0 = 0.
double mean_energy_exact(double beta, const PhysParams& params);

/// Maxwell-Heisenberg closure energy ε = (k_BT/2)[√(1 + (βħω0)²) + 1].
double mean_energy_mh(double beta, const PhysParams& params);

/// Relative residual |∂β(βB) − βD_p| / (βD_p), with the β-derivative taken
/// by a central difference of step h.
double check_gibbs_helmholtz(double beta, const PhysParams& params, double h);

enum class RelaxationModel { Classical, Effective, Quantum, MaxwellHeisenberg };

/// CLASSICAL_1, EFFECTIVE_5, QUANTUM_10, MAXWELL_HEISENBERG_14.
std::string_view model_tag(RelaxationModel model);
std::optional<RelaxationModel> parse_model(std::string_view tag);

/// Friction rate γ (1/time) and momentum diffusion D_p of a linear
/// Fokker-Planck relaxation term γ∂_p(pW) + D_p∂_p²W.
struct RelaxationCoefficients {
    double gamma;
    double diffusion;
};

/// Coefficients of one model. The Maxwell-Heisenberg model needs the
/// current position variance; omitting it is an ArgumentError.
RelaxationCoefficients relaxation_coefficients(RelaxationModel model, double beta, const PhysParams& params,
                                               std::optional<double> var_x = std::nullopt);

/// CSV with header beta,B,D_p,eps_exact,eps_mh over `points` log-spaced β.
void write_coefficient_table(std::ostream& out, const PhysParams& params, double beta_min, double beta_max,
                             std::size_t points);

}  // namespace qrelax::moments
