#include "qrelax/core/linalg.hpp"

#include <algorithm>
#include <sstream>

#include "qrelax/core/errors.hpp"

namespace qrelax {

double hermiticity_defect(const ComplexMatrix& m) {
    const double scale = std::max(m.norm(), 1.0);
    return (m - m.adjoint()).norm() / scale;
}

HermitianEigen hermitian_eigendecompose(const ComplexMatrix& m) {
    if (m.rows() != m.cols()) throw ContractViolation("eigendecomposition of a non-square matrix");
    const double defect = hermiticity_defect(m);
    if (defect > 1e-12) {
        std::ostringstream os;
        os << "matrix is not Hermitian (relative defect " << defect << ")";
        throw ContractViolation(os.str());
    }
    // Eigen reads only the lower triangle; symmetrise so rounding noise in the
    // upper triangle does not bias the result.
    const ComplexMatrix sym = 0.5 * (m + m.adjoint());
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(sym);
    if (solver.info() != Eigen::Success) throw InternalError("Hermitian eigensolver did not converge");
    return {solver.eigenvalues(), solver.eigenvectors()};
}

ComplexMatrix hermitian_function(const HermitianEigen& eig, const std::function<double(double)>& f) {
    RealVector mapped(eig.values.size());
    for (Eigen::Index k = 0; k < eig.values.size(); ++k) mapped[k] = f(eig.values[k]);
    return eig.vectors * mapped.asDiagonal() * eig.vectors.adjoint();
}

ComplexMatrix hermitian_function_complex(const HermitianEigen& eig, const std::function<Complex(double)>& f) {
    Eigen::VectorXcd mapped(eig.values.size());
    for (Eigen::Index k = 0; k < eig.values.size(); ++k) mapped[k] = f(eig.values[k]);
    return eig.vectors * mapped.asDiagonal() * eig.vectors.adjoint();
}

}  // namespace qrelax
