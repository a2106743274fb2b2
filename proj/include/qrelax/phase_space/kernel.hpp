#pragma once

#include <span>
#include <vector>

#include "qrelax/core/grid.hpp"

namespace qrelax::phase {

/// Coefficients of the generic phase-space operator
///
///   L W = −∂_x(p W / m) + ∂_p(U′(x) W) + γ ∂_p(p W) + D_p ∂_p² W
///         − ∂_p(c₃(x) ∂_p² W)
///
/// which covers Klein-Kramers, the harmonic Wigner models and the
/// semiclassical equation (c₃ = ħ²U‴/24, the leading Moyal correction).
/// `force` and `cubic` are sampled at the x nodes; an empty `cubic` means 0.
struct FokkerPlanckTerms {
    double mass = 1.0;
    std::vector<double> force;  // U′(x_i)
    std::vector<double> cubic;  // c₃(x_i)
    double gamma = 0.0;
    double diffusion = 0.0;
};

/// Flux-form evaluation, threaded over x rows with OpenMP. Every p-line and
/// x-line is a telescoping sum of interface fluxes with zero flux through
/// the outermost interfaces, and the boundary ring is held fixed
/// (out = 0 there), so Σ out vanishes to rounding.
void apply_fokker_planck(const PhaseGrid& grid, const FokkerPlanckTerms& terms, std::span<const double> w,
                         std::span<double> out);

/// Serial reference: the same discrete operator written as pointwise
/// difference rows (no interface fluxes), for cross-checking and benchmarks.
void apply_fokker_planck_reference(const PhaseGrid& grid, const FokkerPlanckTerms& terms, std::span<const double> w,
                                   std::span<double> out);

}  // namespace qrelax::phase
