#include "qrelax/operator_space/evolve.hpp"

#include <cmath>
#include <ostream>
#include <sstream>

#include "qrelax/core/errors.hpp"
#include "qrelax/io/csv.hpp"

namespace qrelax::opspace {

double von_neumann_entropy(const DensityMatrix& rho, double floor) {
    const RealVector lambda = rho.eigenvalues();
    double s = 0.0;
    for (Eigen::Index k = 0; k < lambda.size(); ++k) {
        if (lambda[k] > floor) s -= lambda[k] * std::log(lambda[k]);
    }
    return std::max(s, 0.0);
}

double trace_distance(const DensityMatrix& a, const DensityMatrix& b) {
    if (a.dimension() != b.dimension()) throw ArgumentError("trace distance of matrices with different dimension");
    const ComplexMatrix diff = a.matrix() - b.matrix();
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(0.5 * (diff + diff.adjoint()), Eigen::EigenvaluesOnly);
    return 0.5 * solver.eigenvalues().cwiseAbs().sum();
}

namespace {

DensityMatrix default_reference(const OperatorSet& ops) {
    if (ops.params.temperature > 0.0) return gibbs_state(ops.params.beta(), ops);
    return number_state(0, ops.dimension);
}

TrajectorySample diagnose(double t, const ComplexMatrix& rho, const OperatorSet& ops, const DensityMatrix& reference) {
    const DensityMatrix state = DensityMatrix::unchecked(rho);
    return {t,
            rho.trace().real(),
            state.min_eigenvalue(),
            expectation(state, ops.hamiltonian).real(),
            von_neumann_entropy(state),
            trace_distance(state, reference)};
}

}  // namespace

Trajectory evolve(const DensityMatrix& rho0, const OperatorSet& ops, Kernel kernel, double t_end, double dt,
                  const EvolveOptions& options) {
    if (!(dt > 0.0)) throw ArgumentError("time step must be positive");
    if (!(t_end >= 0.0)) throw ArgumentError("t_end must be non-negative");
    const PhysParams& params = ops.params;
    const double heuristic = dt * (params.friction / params.mass + params.omega0);
    if (!(heuristic < 0.1)) {
        std::ostringstream os;
        os << "dt*(b/m + omega0) = " << heuristic << " must be below 0.1";
        throw ArgumentError(os.str());
    }
    if (rho0.dimension() != ops.dimension) throw ArgumentError("initial state does not match operator basis");

    const double beta = kernel == Kernel::Linearized ? params.beta() : 0.0;
    const MasterEquation equation(ops, kernel, beta, options.log_floor);
    const DensityMatrix reference = options.reference ? *options.reference : default_reference(ops);

    const auto steps = static_cast<std::size_t>(std::ceil(t_end / dt - 1e-9));
    const double h = steps ? t_end / static_cast<double>(steps) : 0.0;
    const std::size_t stride = std::max<std::size_t>(options.stride, 1);

    ComplexMatrix rho = rho0.matrix();
    Trajectory out{{}, rho0};
    out.samples.push_back(diagnose(0.0, rho, ops, reference));

    for (std::size_t step = 1; step <= steps; ++step) {
        const ComplexMatrix k1 = equation.rhs(rho);
        const ComplexMatrix k2 = equation.rhs(rho + 0.5 * h * k1);
        const ComplexMatrix k3 = equation.rhs(rho + 0.5 * h * k2);
        const ComplexMatrix k4 = equation.rhs(rho + h * k3);
        rho += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        rho = 0.5 * (rho + rho.adjoint());

        const double t = h * static_cast<double>(step);
        const double drift = std::abs(rho.trace().real() - 1.0);
        const double lowest = DensityMatrix::unchecked(rho).min_eigenvalue();
        if (!(drift <= options.trace_tolerance) || !(lowest >= -options.positivity_tolerance)) {
            std::ostringstream os;
            os << kernel_name(kernel) << " evolution unstable at step " << step << " (t = " << t
               << "): trace drift " << drift << ", min eigenvalue " << lowest;
            throw InstabilityError(os.str());
        }
        if (step % stride == 0 || step == steps) out.samples.push_back(diagnose(t, rho, ops, reference));
    }
    out.final_state = DensityMatrix::unchecked(rho);
    return out;
}

void write_trajectory_csv(std::ostream& out, const Trajectory& trajectory) {
    io::CsvWriter csv(out, {"t", "trace", "min_eigenvalue", "energy", "entropy", "trace_distance_to_gibbs"});
    for (const auto& s : trajectory.samples) {
        csv.row({s.t, s.trace, s.min_eigenvalue, s.energy, s.entropy, s.distance_to_gibbs});
    }
}

}  // namespace qrelax::opspace
