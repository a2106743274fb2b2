#include "qrelax/operator_space/operators.hpp"

#include <cmath>
#include <sstream>

#include "qrelax/core/errors.hpp"

namespace qrelax::opspace {

namespace {

constexpr double kExpLimit = 700.0;

ComplexMatrix ladder(Eigen::Index dim) {
    ComplexMatrix a = ComplexMatrix::Zero(dim, dim);
    for (Eigen::Index n = 1; n < dim; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
    return a;
}

void require_beta(double beta, const OperatorSet& ops) {
    if (!(beta > 0.0)) throw ArgumentError("beta must be positive");
    const double reduced = beta * ops.params.hbar * ops.params.omega0;
    if (reduced > kExpLimit) {
        std::ostringstream os;
        os << "beta*hbar*omega0 = " << reduced << " exceeds " << kExpLimit << " (exp overflow)";
        throw RangeError(os.str());
    }
}

}  // namespace

OperatorSet build_oscillator_operators(std::size_t dimension, const PhysParams& params) {
    params.validate();
    if (dimension < 2) throw ArgumentError("operator basis needs N >= 2");
    if (!(params.omega0 > 0.0)) throw ArgumentError("number basis requires omega0 > 0");
    if (!(params.hbar > 0.0)) throw ArgumentError("operator-space kernels require hbar > 0");

    const auto dim = static_cast<Eigen::Index>(dimension);
    OperatorSet ops;
    ops.dimension = dimension;
    ops.params = params;
    ops.lowering = ladder(dim);
    const ComplexMatrix raising = ops.lowering.adjoint();

    ops.hamiltonian = ComplexMatrix::Zero(dim, dim);
    for (Eigen::Index n = 0; n < dim; ++n) {
        ops.hamiltonian(n, n) = params.hbar * params.omega0 * (static_cast<double>(n) + 0.5);
    }
    const double x_scale = std::sqrt(params.hbar / (2.0 * params.mass * params.omega0));
    const double p_scale = std::sqrt(params.mass * params.hbar * params.omega0 / 2.0);
    ops.position = x_scale * (ops.lowering + raising);
    ops.momentum = Complex(0.0, p_scale) * (raising - ops.lowering);
    ops.position_velocity = commutator(ops.position, ops.hamiltonian) / Complex(0.0, params.hbar);
    ops.hamiltonian_eig = hermitian_eigendecompose(ops.hamiltonian);
    return ops;
}

DensityMatrix gibbs_state(double beta, const OperatorSet& ops) {
    require_beta(beta, ops);
    const double ground = ops.hamiltonian_eig.values.minCoeff();
    ComplexMatrix rho = hermitian_function(ops.hamiltonian_eig, [&](double e) { return std::exp(-beta * (e - ground)); });
    rho /= rho.trace().real();
    return DensityMatrix(std::move(rho));
}

DensityMatrix displaced_thermal_state(double beta, std::complex<double> alpha, const OperatorSet& ops) {
    require_beta(beta, ops);
    // Work in a padded basis so the displacement does not feel the truncation
    // edge, then keep the leading N x N block.
    const std::size_t padded_dim = 2 * ops.dimension + 16;
    const OperatorSet padded = build_oscillator_operators(padded_dim, ops.params);
    const DensityMatrix thermal = gibbs_state(beta, padded);

    const ComplexMatrix generator = alpha * padded.lowering.adjoint() - std::conj(alpha) * padded.lowering;
    // D = exp(G) with G anti-Hermitian; K = -iG is Hermitian and D = exp(iK).
    const HermitianEigen k_eig = hermitian_eigendecompose(Complex(0.0, -1.0) * generator);
    const ComplexMatrix displacement =
        hermitian_function_complex(k_eig, [](double k) { return std::exp(Complex(0.0, k)); });

    const ComplexMatrix full = displacement * thermal.matrix() * displacement.adjoint();
    const auto dim = static_cast<Eigen::Index>(ops.dimension);
    ComplexMatrix block = full.topLeftCorner(dim, dim);
    block = 0.5 * (block + block.adjoint());
    block /= block.trace().real();
    return DensityMatrix(std::move(block));
}

Complex expectation(const DensityMatrix& rho, const ComplexMatrix& op) { return (rho.matrix() * op).trace(); }

std::size_t recommended_dimension(double beta, const PhysParams& params, double extra_occupation) {
    const double s = beta * params.hbar * params.omega0;
    const double occupation = std::isinf(beta) ? 0.0 : 1.0 / std::expm1(s);
    return static_cast<std::size_t>(std::ceil(8.0 * (occupation + extra_occupation + 1.0)));
}

}  // namespace qrelax::opspace
