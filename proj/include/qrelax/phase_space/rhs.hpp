#pragma once

#include <optional>

#include "qrelax/core/potential.hpp"
#include "qrelax/moments/coefficients.hpp"
#include "qrelax/phase_space/field.hpp"
#include "qrelax/phase_space/kernel.hpp"

namespace qrelax::phase {

using moments::RelaxationModel;

// Coefficient builders. β is explicit (k_BT = 1/β, +inf for T = 0); the
// remaining constants come from `params`.

/// Klein-Kramers: γ = b/m, D_p = b k_BT, force U′.
FokkerPlanckTerms klein_kramers_terms(const PhaseGrid& grid, const PhysParams& params, const Potential& potential,
                                      double beta);

/// Harmonic well with the relaxation term of `model`. MAXWELL_HEISENBERG_14
/// needs the current σ_x².
FokkerPlanckTerms harmonic_terms(const PhaseGrid& grid, const PhysParams& params, RelaxationModel model, double beta,
                                 std::optional<double> var_x = std::nullopt);

/// Semiclassical Klein-Kramers: the classical terms, the Moyal cubic term
/// with c₃ = ħ²U‴/24, and the Gaussian-closure quantum entropy term, which
/// adds b k_BT ħ² / (4 det Σ) to D_p. Throws DomainError when det Σ ≤ 0.
FokkerPlanckTerms semiclassical_terms(const PhaseGrid& grid, const PhysParams& params, const Potential& potential,
                                      double beta, const MomentState& gaussian_moments);

/// Evaluates a term set on a field (parallel kernel).
WignerField apply(const WignerField& w, const FokkerPlanckTerms& terms);

/// −(p/m)∂_x f + U′∂_p f + (b/m)∂_p(p f) + b k_BT ∂_p² f at the bath
/// temperature in `f.params`.
WignerField rhs_klein_kramers(const WignerField& f, const Potential& potential);

/// b∂_p(f ∂_p F) − b∂_p(f ∂_p H + k_BT ∂_p f) with F = H + k_BT ln f, both
/// forms evaluated with pointwise fourth-order stencils. Throws DomainError
/// unless f > 0 everywhere.
WignerField check_onsager_form(const WignerField& f, const Potential& potential);

/// Harmonic-oscillator Wigner equation for one relaxation model.
WignerField rhs_wigner_ho(const WignerField& w, RelaxationModel model, double beta,
                          std::optional<double> var_x = std::nullopt);

/// Semiclassical equation for an arbitrary potential; see semiclassical_terms.
WignerField rhs_semiclassical(const WignerField& w, const Potential& potential, double beta,
                              const MomentState& gaussian_moments);

/// The Moyal correction (ħ²/24) U‴(x) ∂_p³ W on its own. It enters ∂_t W
/// with a minus sign.
WignerField quantum_streaming_term(const WignerField& w, const Potential& potential);

}  // namespace qrelax::phase
