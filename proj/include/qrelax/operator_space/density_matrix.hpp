#pragma once

#include <cstddef>

#include "qrelax/core/linalg.hpp"

namespace qrelax::opspace {

/// Hermitian, unit-trace density matrix on a truncated number basis.
///
/// Construction checks Hermiticity (1e-10 relative) and the trace (1e-10).
/// Positivity is not enforced; callers monitor min_eigenvalue().
class DensityMatrix {
public:
    explicit DensityMatrix(ComplexMatrix rho);

    /// Skips validation; for intermediate integrator stages only.
    static DensityMatrix unchecked(ComplexMatrix rho);

    [[nodiscard]] const ComplexMatrix& matrix() const { return rho_; }
    [[nodiscard]] std::size_t dimension() const { return static_cast<std::size_t>(rho_.rows()); }
    [[nodiscard]] Complex trace() const { return rho_.trace(); }
    [[nodiscard]] RealVector eigenvalues() const;
    [[nodiscard]] double min_eigenvalue() const;

    static constexpr double kHermitianTolerance = 1e-10;
    static constexpr double kTraceTolerance = 1e-10;

private:
    struct Unchecked {};
    DensityMatrix(ComplexMatrix rho, Unchecked) : rho_(std::move(rho)) {}

    ComplexMatrix rho_;
};

/// |n⟩⟨n| in dimension N.
DensityMatrix number_state(std::size_t n, std::size_t dimension);

/// I / N.
DensityMatrix maximally_mixed(std::size_t dimension);

/// G G† + 1e-6·I normalised, with G complex Gaussian (mt19937 seeded by
/// `seed`) and row n damped by e^{−decay·n}: a full-rank state weighted
/// towards low levels, reproducible for a fixed seed.
DensityMatrix random_density_matrix(std::size_t dimension, unsigned seed, double decay = 0.5);

}  // namespace qrelax::opspace
