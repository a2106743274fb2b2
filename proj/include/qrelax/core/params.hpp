#pragma once

#include <string>
#include <vector>

namespace qrelax {

/// Physical constants and model parameters. Natural units (every field 1) by
/// default; ω0 = 0 selects the free particle and T = 0 the ground-state limit.
///
/// hbar = 0 is accepted as the classical limit and b = 0 as the frictionless
/// (Liouville / von Neumann) limit. Operations that divide by ħ or b check it
/// themselves.
struct PhysParams {
    double mass = 1.0;
    double omega0 = 1.0;
    double friction = 1.0;     // b
    double temperature = 1.0;  // T
    double hbar = 1.0;
    double boltzmann = 1.0;    // k_B

    /// Every violated invariant, one human-readable line each.
    [[nodiscard]] std::vector<std::string> violations() const;
    /// Throws ArgumentError listing all violations.
    void validate() const;

    [[nodiscard]] double thermal_energy() const { return boltzmann * temperature; }
    /// 1/(k_B T). Throws DomainError at T = 0.
    [[nodiscard]] double beta() const;
    /// 1/(k_B T), +inf at T = 0, for closed forms with a finite T -> 0 limit.
    [[nodiscard]] double beta_or_infinity() const;
    /// βħω0/2 (+inf at T = 0).
    [[nodiscard]] double reduced_frequency() const;
    /// Einstein diffusion constant D = k_B T / b.
    [[nodiscard]] double einstein_diffusion() const { return thermal_energy() / friction; }
    /// Thermal de Broglie wavelength λ_T = ħ / (2 √(m k_B T)); +inf at T = 0.
    [[nodiscard]] double thermal_wavelength() const;
    /// Quantum characteristic time τ = λ_T² / 2D; +inf at T = 0.
    [[nodiscard]] double quantum_time() const;
    /// Second Matsubara frequency ω₂ = 2 k_B T / ħ.
    [[nodiscard]] double second_matsubara_frequency() const;
    /// Ground-state position variance ħ/(2mω0).
    [[nodiscard]] double zero_point_variance() const;
};

}  // namespace qrelax
