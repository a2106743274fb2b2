#pragma once

#include <complex>
#include <cstddef>

#include "qrelax/core/linalg.hpp"
#include "qrelax/core/params.hpp"
#include "qrelax/operator_space/density_matrix.hpp"

namespace qrelax::opspace {

/// Number-basis operators of a harmonic oscillator truncated to N levels.
///
/// Ĥ = ħω0(a†a + ½) is exact on every level; x̂ and p̂ are built from the
/// truncated ladder operator, so [x̂, p̂] = iħ fails only in the last row.
struct OperatorSet {
    std::size_t dimension = 0;
    PhysParams params;
    ComplexMatrix lowering;          // a, a[n-1, n] = √n
    ComplexMatrix hamiltonian;       // Ĥ
    ComplexMatrix position;          // x̂
    ComplexMatrix momentum;          // p̂
    ComplexMatrix position_velocity; // [x̂, Ĥ] / iħ  (p̂/m away from the truncation edge)
    HermitianEigen hamiltonian_eig;
};

OperatorSet build_oscillator_operators(std::size_t dimension, const PhysParams& params);

/// exp(-βĤ) / tr exp(-βĤ). Throws RangeError for βħω0 > 700.
DensityMatrix gibbs_state(double beta, const OperatorSet& ops);

/// Thermal state at β displaced by the coherent amplitude α,
/// D(α) ρ_β D(α)†, built in a padded basis and truncated back to N levels.
DensityMatrix displaced_thermal_state(double beta, std::complex<double> alpha, const OperatorSet& ops);

/// Expectation value tr(ρ A).
Complex expectation(const DensityMatrix& rho, const ComplexMatrix& op);

/// Largest basis size prescribed by the truncation policy,
/// N ≥ 8(⟨n⟩_thermal + 1).
std::size_t recommended_dimension(double beta, const PhysParams& params, double extra_occupation = 0.0);

}  // namespace qrelax::opspace
