#include "qrelax/operator_space/master_equation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "qrelax/core/errors.hpp"

namespace qrelax::opspace {

namespace {

constexpr double kExpLimit = 700.0;

ComplexMatrix log_of(const ComplexMatrix& rho, double floor) {
    if (!(floor > 0.0)) throw ArgumentError("log floor must be positive");
    const HermitianEigen eig = hermitian_eigendecompose(0.5 * (rho + rho.adjoint()));
    const double top = eig.values.maxCoeff();
    if (!(top >= floor)) throw DegenerateStateError("every eigenvalue of rho lies below the log floor");
    const double clamp = floor * top;
    return hermitian_function(eig, [clamp](double lambda) { return std::log(std::max(lambda, clamp)); });
}

void require_same_dimension(const ComplexMatrix& rho, const OperatorSet& ops) {
    if (static_cast<std::size_t>(rho.rows()) != ops.dimension || rho.rows() != rho.cols()) {
        std::ostringstream os;
        os << "density matrix dimension " << rho.rows() << " does not match operator basis " << ops.dimension;
        throw ArgumentError(os.str());
    }
}

}  // namespace

std::string_view kernel_name(Kernel kernel) {
    switch (kernel) {
        case Kernel::CaldeiraLeggett: return "CL2";
        case Kernel::Nonlinear: return "NL7";
        case Kernel::Linearized: return "LIN8";
    }
    return "?";
}

std::optional<Kernel> parse_kernel(std::string_view tag) {
    if (tag == "CL2") return Kernel::CaldeiraLeggett;
    if (tag == "NL7") return Kernel::Nonlinear;
    if (tag == "LIN8") return Kernel::Linearized;
    return std::nullopt;
}

ComplexMatrix matrix_log_density(const DensityMatrix& rho, double floor) { return log_of(rho.matrix(), floor); }

MasterEquation::MasterEquation(OperatorSet ops, Kernel kernel, double beta, double log_floor)
    : ops_(std::move(ops)), kernel_(kernel), beta_(beta), log_floor_(log_floor) {
    if (kernel_ != Kernel::Linearized) return;
    if (!(beta_ > 0.0) || std::isinf(beta_)) throw ArgumentError("linearized kernel needs a finite beta > 0");
    const double reduced = beta_ * ops_.params.hbar * ops_.params.omega0;
    const double lo = ops_.hamiltonian_eig.values.minCoeff();
    const double hi = ops_.hamiltonian_eig.values.maxCoeff();
    if (reduced > kExpLimit || 0.5 * beta_ * (hi - lo) > kExpLimit) {
        std::ostringstream os;
        os << "exp(+-beta H) overflows for beta = " << beta_ << " on a " << ops_.dimension << "-level basis";
        throw RangeError(os.str());
    }
    // The shift c cancels between the two exponentials.
    const double shift = 0.5 * (lo + hi);
    boltzmann_minus_ = hermitian_function(ops_.hamiltonian_eig, [&](double e) { return std::exp(-beta_ * (e - shift)); });
    boltzmann_plus_ = hermitian_function(ops_.hamiltonian_eig, [&](double e) { return std::exp(beta_ * (e - shift)); });
}

ComplexMatrix MasterEquation::unitary_part(const ComplexMatrix& rho) const {
    return commutator(ops_.hamiltonian, rho) / Complex(0.0, ops_.params.hbar);
}

ComplexMatrix MasterEquation::rhs(const ComplexMatrix& rho) const {
    require_same_dimension(rho, ops_);
    const Complex ih(0.0, ops_.params.hbar);
    const double b = ops_.params.friction;
    const ComplexMatrix& x = ops_.position;

    switch (kernel_) {
        case Kernel::CaldeiraLeggett: {
            const double kt = ops_.params.thermal_energy();
            const ComplexMatrix inner =
                0.5 * anticommutator(rho, ops_.position_velocity) + kt * commutator(x, rho) / ih;
            return unitary_part(rho) + b * commutator(x, inner) / ih;
        }
        case Kernel::Nonlinear: {
            const double kt = ops_.params.thermal_energy();
            ComplexMatrix velocity = ops_.position_velocity;
            if (kt > 0.0) velocity += kt * commutator(x, log_of(rho, log_floor_)) / ih;
            const ComplexMatrix inner = 0.5 * anticommutator(rho, velocity);
            return unitary_part(rho) + b * commutator(x, inner) / ih;
        }
        case Kernel::Linearized: {
            const double kt = 1.0 / beta_;
            const ComplexMatrix weighted = 0.5 * anticommutator(boltzmann_plus_, rho);
            const ComplexMatrix inner = 0.5 * anticommutator(boltzmann_minus_, commutator(x, weighted) / ih);
            return unitary_part(rho) + b * kt * commutator(x, inner) / ih;
        }
    }
    throw InternalError("unknown master-equation kernel");
}

ComplexMatrix rhs_caldeira_leggett(const DensityMatrix& rho, const OperatorSet& ops) {
    return MasterEquation(ops, Kernel::CaldeiraLeggett, 0.0).rhs(rho.matrix());
}

ComplexMatrix rhs_nonlinear(const DensityMatrix& rho, const OperatorSet& ops, double floor) {
    return MasterEquation(ops, Kernel::Nonlinear, 0.0, floor).rhs(rho.matrix());
}

ComplexMatrix rhs_linearized(const DensityMatrix& rho, const OperatorSet& ops, double beta) {
    return MasterEquation(ops, Kernel::Linearized, beta).rhs(rho.matrix());
}

ComplexMatrix friction_term(const DensityMatrix& rho, const OperatorSet& ops) {
    require_same_dimension(rho.matrix(), ops);
    const Complex ih(0.0, ops.params.hbar);
    const ComplexMatrix inner = 0.5 * anticommutator(rho.matrix(), ops.position_velocity);
    return ops.params.friction * commutator(ops.position, inner) / ih;
}

double stiff_step_limit(const OperatorSet& ops, Kernel kernel, double log_floor) {
    const double kt = ops.params.thermal_energy();
    if (kernel != Kernel::Nonlinear || !(kt > 0.0) || !(ops.params.friction > 0.0)) {
        return std::numeric_limits<double>::infinity();
    }
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(ops.position, Eigen::EigenvaluesOnly);
    const double x_max = solver.eigenvalues().cwiseAbs().maxCoeff();
    const double hbar = ops.params.hbar;
    // Spread of ln ρ: set by the floor, or by the thermal spectrum when that
    // is narrower.
    const double thermal_span =
        hbar * ops.params.omega0 * static_cast<double>(ops.dimension - 1) / kt;
    const double span = std::min(std::abs(std::log(log_floor)), thermal_span);
    const double rate = ops.params.friction * kt * x_max * x_max * span / (hbar * hbar);
    // Measured RK4 threshold is dt * rate ≈ 1.5; keep a margin.
    return 1.0 / rate;
}

double block_norm(const ComplexMatrix& m, std::size_t block) {
    const auto k = static_cast<Eigen::Index>(std::min<std::size_t>(block, static_cast<std::size_t>(m.rows())));
    return m.topLeftCorner(k, k).norm();
}

}  // namespace qrelax::opspace
