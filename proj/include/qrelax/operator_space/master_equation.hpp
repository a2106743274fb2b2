#pragma once

#include <optional>
#include <string_view>

#include "qrelax/core/linalg.hpp"
#include "qrelax/operator_space/density_matrix.hpp"
#include "qrelax/operator_space/operators.hpp"

namespace qrelax::opspace {

/// The three master-equation right-hand sides.
///   CaldeiraLeggett: [Ĥ,ρ]/iħ + b[x̂, {ρ, [x̂,Ĥ]/iħ}/2 + k_BT[x̂,ρ]/iħ]/iħ
///   Nonlinear:       [Ĥ,ρ]/iħ + b[x̂, {ρ, [x̂, Ĥ + k_BT ln ρ]/iħ}/2]/iħ
///   Linearized:      [Ĥ,ρ]/iħ + b k_BT[x̂, {e^{-βĤ}, [x̂, {e^{βĤ}, ρ}/2]/iħ}/2]/iħ
/// Every kernel has x̂ outermost in the dissipator, so each is traceless.
enum class Kernel { CaldeiraLeggett, Nonlinear, Linearized };

std::string_view kernel_name(Kernel kernel);
std::optional<Kernel> parse_kernel(std::string_view tag);

inline constexpr double kDefaultLogFloor = 1e-14;

/// ln ρ with eigenvalues below floor·λ_max clamped up to floor·λ_max.
/// Throws DegenerateStateError when every eigenvalue is below `floor`.
ComplexMatrix matrix_log_density(const DensityMatrix& rho, double floor = kDefaultLogFloor);

ComplexMatrix rhs_caldeira_leggett(const DensityMatrix& rho, const OperatorSet& ops);
ComplexMatrix rhs_nonlinear(const DensityMatrix& rho, const OperatorSet& ops, double floor = kDefaultLogFloor);
/// k_BT in the dissipator is 1/β, so the linearisation point and the
/// temperature are the same state.
ComplexMatrix rhs_linearized(const DensityMatrix& rho, const OperatorSet& ops, double beta);

/// Friction part b[x̂, {ρ, [x̂,Ĥ]/iħ}/2]/iħ common to all kernels; its norm
/// is the scale for stationarity residuals.
ComplexMatrix friction_term(const DensityMatrix& rho, const OperatorSet& ops);

/// Largest RK4 step that keeps the entropic part of NL7 stable. ln ρ makes
/// the kernel stiff on nearly-empty levels, with rate about
/// b k_BT x_max² Δ / ħ² with Δ = min(|ln floor|, ħω0(N−1)/k_BT) the spread
/// of ln ρ; the coarse dt (b/m + ω0) heuristic does not
/// see this. Other kernels return +inf.
double stiff_step_limit(const OperatorSet& ops, Kernel kernel, double log_floor = kDefaultLogFloor);

/// Frobenius norm of the leading `block` x `block` sub-matrix.
double block_norm(const ComplexMatrix& m, std::size_t block);

/// A kernel bound to its operators. Precomputes the exponentials needed by
/// the linearised kernel; evaluation is const and thread-safe.
class MasterEquation {
public:
    /// `beta` is used by the linearised kernel only.
    MasterEquation(OperatorSet ops, Kernel kernel, double beta, double log_floor = kDefaultLogFloor);

    [[nodiscard]] Kernel kernel() const { return kernel_; }
    [[nodiscard]] const OperatorSet& operators() const { return ops_; }
    [[nodiscard]] ComplexMatrix rhs(const ComplexMatrix& rho) const;

private:
    [[nodiscard]] ComplexMatrix unitary_part(const ComplexMatrix& rho) const;

    OperatorSet ops_;
    Kernel kernel_;
    double beta_;
    double log_floor_;
    ComplexMatrix boltzmann_minus_;  // e^{-β(Ĥ - c)}
    ComplexMatrix boltzmann_plus_;   // e^{+β(Ĥ - c)}
};

}  // namespace qrelax::opspace
