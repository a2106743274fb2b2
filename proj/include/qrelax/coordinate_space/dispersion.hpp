#pragma once

#include <iosfwd>
#include <string_view>
#include <vector>

#include "qrelax/core/params.hpp"

namespace qrelax::coord {

/// Free-particle position-dispersion laws, dσ_x²/dt = f(σ_x², t):
///   CLASSICAL_EINSTEIN    2D
///   QUANTUM_EINSTEIN_17   2D(1 + λ_T²/σ_x²)
///   QUANTUM_BATH          2σ_p²/(mb) with σ_p² = mk_BT + ħm/t + ħ²/4σ_x²
enum class DispersionLaw { ClassicalEinstein, QuantumEinstein, QuantumBath };

std::string_view law_tag(DispersionLaw law);
/// Throws ArgumentError for unknown tags.
DispersionLaw parse_law(std::string_view tag);

double dispersion_rate(DispersionLaw law, double var_x, double t, const PhysParams& params);

/// Default QUANTUM_BATH start time 1e-3·m/b.
double default_bath_start(const PhysParams& params);

struct DispersionSample {
    double t;
    double var_x;
};

/// RK4 from σ_x²(t0) = σ0² to t_end. Steps are capped at dt and also limited
/// so that σ_x² (and, for QUANTUM_BATH, t) changes by at most 1% per step,
/// which resolves the sub-diffusive start. QUANTUM_BATH needs t0 > 0.
/// Every accepted step is recorded. Throws InternalError if the trajectory
/// is not monotone.
std::vector<DispersionSample> free_dispersion_evolve(double var0, double t_end, DispersionLaw law, double dt,
                                                     const PhysParams& params, double t0 = 0.0);

/// The quantum Einstein law solved for t:
/// t = [σ² − λ_T² ln(1 + σ²/λ_T²)] / 2D. At T = 0 this is σ⁴mb/ħ².
double einstein_law_time(double var_x, const PhysParams& params);

/// Inverse of einstein_law_time by bracketed root finding.
double einstein_law_dispersion(double t, const PhysParams& params);

struct NelsonReport {
    double nelson_D;   // ħ/2m
    double einstein_D;  // k_BT/b
    bool quantum_visible;
};

NelsonReport nelson_condition(const PhysParams& params);

/// CSV with header t,sigma_x2.
void write_dispersion_csv(std::ostream& out, const std::vector<DispersionSample>& samples);

}  // namespace qrelax::coord
