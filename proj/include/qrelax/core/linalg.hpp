#pragma once

#include <complex>
#include <functional>

#include <Eigen/Dense>

namespace qrelax {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;

struct HermitianEigen {
    RealVector values;     // ascending
    ComplexMatrix vectors; // columns are orthonormal eigenvectors
};

/// Relative anti-Hermitian part ‖M − M†‖_F / max(‖M‖_F, 1).
double hermiticity_defect(const ComplexMatrix& m);

/// Eigendecomposition M = V diag(λ) V† of a Hermitian matrix, eigenvalues
/// ascending. Throws ContractViolation when M is not Hermitian to 1e-12.
HermitianEigen hermitian_eigendecompose(const ComplexMatrix& m);

/// V diag(f(λ)) V† for a decomposed Hermitian matrix. This is the only route
/// the library uses for matrix logarithms and exponentials.
ComplexMatrix hermitian_function(const HermitianEigen& eig, const std::function<double(double)>& f);
/// Complex-valued variant, e.g. the unitary exp(iK) of a Hermitian K.
ComplexMatrix hermitian_function_complex(const HermitianEigen& eig, const std::function<Complex(double)>& f);

inline ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b) { return a * b - b * a; }
inline ComplexMatrix anticommutator(const ComplexMatrix& a, const ComplexMatrix& b) { return a * b + b * a; }

}  // namespace qrelax
