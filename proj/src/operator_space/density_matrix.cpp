#include "qrelax/operator_space/density_matrix.hpp"

#include <cmath>
#include <random>
#include <sstream>

#include "qrelax/core/errors.hpp"

namespace qrelax::opspace {

DensityMatrix::DensityMatrix(ComplexMatrix rho) : rho_(std::move(rho)) {
    if (rho_.rows() != rho_.cols() || rho_.rows() < 1) throw ArgumentError("density matrix must be square");
    const double defect = hermiticity_defect(rho_);
    if (defect > kHermitianTolerance) {
        std::ostringstream os;
        os << "density matrix is not Hermitian (relative defect " << defect << ")";
        throw ArgumentError(os.str());
    }
    const Complex tr = rho_.trace();
    if (std::abs(tr - Complex(1.0, 0.0)) > kTraceTolerance) {
        std::ostringstream os;
        os << "density matrix trace " << tr.real() << (tr.imag() >= 0 ? "+" : "") << tr.imag() << "i differs from 1";
        throw ArgumentError(os.str());
    }
}

DensityMatrix DensityMatrix::unchecked(ComplexMatrix rho) { return DensityMatrix(std::move(rho), Unchecked{}); }

RealVector DensityMatrix::eigenvalues() const {
    const ComplexMatrix sym = 0.5 * (rho_ + rho_.adjoint());
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(sym, Eigen::EigenvaluesOnly);
    return solver.eigenvalues();
}

double DensityMatrix::min_eigenvalue() const { return eigenvalues().minCoeff(); }

DensityMatrix number_state(std::size_t n, std::size_t dimension) {
    if (n >= dimension) throw ArgumentError("number state index exceeds basis size");
    const auto dim = static_cast<Eigen::Index>(dimension);
    ComplexMatrix rho = ComplexMatrix::Zero(dim, dim);
    rho(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n)) = 1.0;
    return DensityMatrix(std::move(rho));
}

DensityMatrix maximally_mixed(std::size_t dimension) {
    const auto dim = static_cast<Eigen::Index>(dimension);
    return DensityMatrix(ComplexMatrix::Identity(dim, dim) / static_cast<double>(dimension));
}

DensityMatrix random_density_matrix(std::size_t dimension, unsigned seed, double decay) {
    if (dimension < 1) throw ArgumentError("basis size must be positive");
    std::mt19937 rng(seed);
    std::normal_distribution<double> gauss;
    const auto n = static_cast<Eigen::Index>(dimension);
    ComplexMatrix g(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            g(i, j) = Complex(gauss(rng), gauss(rng)) * std::exp(-decay * static_cast<double>(i));
        }
    }
    ComplexMatrix rho = g * g.adjoint() + 1e-6 * ComplexMatrix::Identity(n, n);
    rho /= rho.trace();
    return DensityMatrix(0.5 * (rho + rho.adjoint()));
}

}  // namespace qrelax::opspace
