#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "qrelax/core/errors.hpp"
#include "qrelax/core/grid.hpp"
#include "qrelax/core/linalg.hpp"
#include "qrelax/core/oscillator.hpp"
#include "qrelax/core/params.hpp"
#include "qrelax/core/roots.hpp"
#include "qrelax/core/stencil.hpp"

using namespace qrelax;

namespace {

// Independent oracle: trapezoid written out longhand.
double trapezoid_oracle(const std::vector<double>& f, double h) {
    double s = 0.0;
    for (std::size_t i = 0; i + 1 < f.size(); ++i) s += 0.5 * h * (f[i] + f[i + 1]);
    return s;
}

}  // namespace

TEST(PhysParams, DerivedQuantitiesInNaturalUnits) {
    PhysParams p;
    EXPECT_DOUBLE_EQ(p.beta(), 1.0);
    EXPECT_DOUBLE_EQ(p.reduced_frequency(), 0.5);
    EXPECT_DOUBLE_EQ(p.einstein_diffusion(), 1.0);
    EXPECT_DOUBLE_EQ(p.thermal_wavelength(), 0.5);
    EXPECT_DOUBLE_EQ(p.quantum_time(), 0.125);
    EXPECT_DOUBLE_EQ(p.second_matsubara_frequency(), 2.0);
    // τ = b / (2 m ω₂²)
    EXPECT_DOUBLE_EQ(p.quantum_time(), p.friction / (2.0 * p.mass * std::pow(p.second_matsubara_frequency(), 2)));
}

TEST(PhysParams, ZeroTemperatureLimits) {
    PhysParams p;
    p.temperature = 0.0;
    EXPECT_THROW((void)p.beta(), DomainError);
    EXPECT_TRUE(std::isinf(p.beta_or_infinity()));
    EXPECT_TRUE(std::isinf(p.thermal_wavelength()));
    EXPECT_DOUBLE_EQ(p.einstein_diffusion(), 0.0);
}

TEST(PhysParams, ValidationListsEveryViolation) {
    PhysParams p;
    p.temperature = -1.0;
    p.mass = 0.0;
    const auto v = p.violations();
    ASSERT_EQ(v.size(), 2u);
    EXPECT_THROW(p.validate(), ArgumentError);
}

TEST(CoordGrid, SpacingAndBounds) {
    CoordGrid g(-8.0, 8.0, 17);
    EXPECT_DOUBLE_EQ(g.spacing(), 1.0);
    EXPECT_DOUBLE_EQ(g[16], 8.0);
    EXPECT_THROW(CoordGrid(1.0, 0.0, 16), ArgumentError);
    EXPECT_THROW(CoordGrid(0.0, 1.0, 7), ArgumentError);
}

TEST(Stencil, TrapezoidExactForLinear) {
    CoordGrid g(-1.3, 2.9, 37);
    std::vector<double> f(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) f[i] = 3.5 - 2.25 * g[i];
    const double exact = 3.5 * (2.9 + 1.3) - 1.125 * (2.9 * 2.9 - 1.3 * 1.3);
    EXPECT_NEAR(stencil::trapezoid(f, g.spacing()), exact, 1e-13);
    EXPECT_NEAR(stencil::trapezoid(f, g.spacing()), trapezoid_oracle(f, g.spacing()), 1e-13);
}

TEST(Stencil, PointwiseDerivativesFourthOrderInterior) {
    // sin(x) on successively refined grids: interior error ratio ~16.
    auto max_error = [](std::size_t n) {
        CoordGrid g(0.0, 2.0, n);
        std::vector<double> f(n);
        for (std::size_t i = 0; i < n; ++i) f[i] = std::sin(g[i]);
        double e1 = 0.0, e2 = 0.0, e3 = 0.0;
        for (std::size_t i = 3; i + 3 < n; ++i) {
            e1 = std::max(e1, std::abs(stencil::first_derivative(f, i, g.spacing()) - std::cos(g[i])));
            e2 = std::max(e2, std::abs(stencil::second_derivative(f, i, g.spacing()) + std::sin(g[i])));
            e3 = std::max(e3, std::abs(stencil::third_derivative(f, i, g.spacing()) + std::cos(g[i])));
        }
        return std::array<double, 3>{e1, e2, e3};
    };
    const auto coarse = max_error(41);
    const auto fine = max_error(81);
    for (int k = 0; k < 3; ++k) EXPECT_GT(coarse[k] / fine[k], 12.0) << "derivative order " << k + 1;
}

TEST(Stencil, InterfaceFluxesReproduceCentralDifferences) {
    CoordGrid g(-1.0, 1.0, 21);
    const double h = g.spacing();
    std::vector<double> f(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) f[i] = std::exp(0.7 * g[i]) * std::cos(2.0 * g[i]);
    for (std::size_t i = 3; i + 4 < g.size(); ++i) {
        const double d1 = (stencil::interface_value(f.data(), 1, f.size(), i) -
                           stencil::interface_value(f.data(), 1, f.size(), i - 1)) / h;
        const double d2 = (stencil::interface_gradient(f.data(), 1, f.size(), i, h) -
                           stencil::interface_gradient(f.data(), 1, f.size(), i - 1, h)) / h;
        const double d3 = (stencil::interface_curvature(f.data(), 1, f.size(), i, h) -
                           stencil::interface_curvature(f.data(), 1, f.size(), i - 1, h)) / h;
        EXPECT_NEAR(d1, stencil::first_derivative(f, i, h), 1e-11);
        EXPECT_NEAR(d2, stencil::second_derivative(f, i, h), 1e-9);
        EXPECT_NEAR(d3, stencil::third_derivative(f, i, h), 1e-7);
    }
}

TEST(Oscillator, GroundStateClosedForm) {
    PhysParams p;
    CoordGrid g(-10.0, 10.0, 201);
    const auto e0 = oscillator_eigenpair(0, p, g);
    EXPECT_DOUBLE_EQ(e0.energy, 0.5);
    EXPECT_NEAR(e0.values[100], std::pow(std::numbers::pi, -0.25), 1e-14);
    EXPECT_NEAR(0.75113, e0.values[100], 1e-5);
}

TEST(Oscillator, OddLevelVanishesAtOrigin) {
    PhysParams p;
    CoordGrid g(-10.0, 10.0, 201);
    const auto e1 = oscillator_eigenpair(1, p, g);
    EXPECT_DOUBLE_EQ(e1.energy, 1.5);
    EXPECT_NEAR(e1.values[100], 0.0, 1e-15);
}

TEST(Oscillator, NormalisedOnGrid) {
    PhysParams p;
    CoordGrid g(-8.0, 8.0, 512);
    const auto e3 = oscillator_eigenpair(3, p, g);
    std::vector<double> sq(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) sq[i] = e3.values[i] * e3.values[i];
    EXPECT_NEAR(trapezoid_oracle(sq, g.spacing()), 1.0, 1e-10);
}

TEST(Oscillator, PairwiseOrthogonal) {
    PhysParams p;
    CoordGrid g(-12.0, 12.0, 801);
    std::vector<std::vector<double>> phi;
    for (std::size_t n = 0; n < 12; ++n) phi.push_back(oscillator_eigenpair(n, p, g).values);
    for (std::size_t m = 0; m < phi.size(); ++m) {
        for (std::size_t n = m + 1; n < phi.size(); ++n) {
            std::vector<double> prod(g.size());
            for (std::size_t i = 0; i < g.size(); ++i) prod[i] = phi[m][i] * phi[n][i];
            EXPECT_LT(std::abs(stencil::trapezoid(prod, g.spacing())), 1e-8) << m << "," << n;
        }
    }
}

TEST(Oscillator, ClippedGridIsDomainError) {
    PhysParams p;
    EXPECT_THROW(oscillator_eigenpair(10, p, CoordGrid(-3.0, 3.0, 101)), DomainError);
}

TEST(PartitionFunction, MatchesClosedForm) {
    PhysParams p;
    EXPECT_NEAR(partition_function_ho(1.0, p, 50), 0.5 / std::sinh(0.5), 1e-12);
    EXPECT_NEAR(partition_function_ho(1.0, p, 50), 0.95951, 1e-5);
    EXPECT_NEAR(partition_function_ho(1.0, p, 1), std::exp(-0.5), 1e-15);
    EXPECT_NEAR(partition_function_ho(50.0, p, 50) / std::exp(-25.0), 1.0, 1e-12);
}

TEST(PartitionFunction, ConvergesMonotonicallyFromBelow) {
    PhysParams p;
    const double exact = partition_function_ho_exact(0.3, p);
    double prev = 0.0;
    for (std::size_t n = 1; n < 200; n += 7) {
        const double z = partition_function_ho(0.3, p, n);
        EXPECT_GE(z, prev);
        EXPECT_LE(z, exact * (1.0 + 1e-14));
        prev = z;
    }
}

TEST(HermitianEigen, IdentityAndDiagonal) {
    const auto id = hermitian_eigendecompose(ComplexMatrix::Identity(5, 5));
    for (int k = 0; k < 5; ++k) EXPECT_NEAR(id.values[k], 1.0, 1e-15);

    ComplexMatrix d = ComplexMatrix::Zero(3, 3);
    d(0, 0) = 3.0;
    d(1, 1) = 1.0;
    d(2, 2) = 2.0;
    const auto eig = hermitian_eigendecompose(d);
    EXPECT_NEAR(eig.values[0], 1.0, 1e-15);
    EXPECT_NEAR(eig.values[1], 2.0, 1e-15);
    EXPECT_NEAR(eig.values[2], 3.0, 1e-15);
    // Permutation of the identity up to phases.
    EXPECT_NEAR(std::abs(eig.vectors(1, 0)), 1.0, 1e-14);
    EXPECT_NEAR(std::abs(eig.vectors(2, 1)), 1.0, 1e-14);
    EXPECT_NEAR(std::abs(eig.vectors(0, 2)), 1.0, 1e-14);
}

TEST(HermitianEigen, RandomReconstruction) {
    std::mt19937 rng(7);
    std::normal_distribution<double> gauss;
    for (int trial = 0; trial < 20; ++trial) {
        ComplexMatrix g(8, 8);
        for (int i = 0; i < 8; ++i)
            for (int j = 0; j < 8; ++j) g(i, j) = Complex(gauss(rng), gauss(rng));
        const ComplexMatrix m = g + g.adjoint();
        const auto eig = hermitian_eigendecompose(m);
        const ComplexMatrix back = eig.vectors * eig.values.asDiagonal() * eig.vectors.adjoint();
        EXPECT_LT((back - m).norm() / m.norm(), 1e-10);
        for (int k = 1; k < 8; ++k) EXPECT_LE(eig.values[k - 1], eig.values[k]);
    }
}

TEST(HermitianEigen, RejectsNonHermitian) {
    ComplexMatrix m = ComplexMatrix::Identity(3, 3);
    m(0, 1) = 0.5;
    EXPECT_THROW(hermitian_eigendecompose(m), ContractViolation);
}

TEST(Roots, BracketedSolve) {
    const double r = find_root_bracketed([](double x) { return x * x * x - 2.0; }, 0.0, 2.0);
    EXPECT_NEAR(r, std::cbrt(2.0), 1e-13);
    EXPECT_THROW(find_root_bracketed([](double x) { return x * x + 1.0; }, -1.0, 1.0), InternalError);
}
