#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include <gtest/gtest.h>

#include "qrelax/coordinate_space/density.hpp"
#include "qrelax/coordinate_space/dispersion.hpp"
#include "qrelax/coordinate_space/equilibrium.hpp"
#include "qrelax/coordinate_space/smoluchowski.hpp"
#include "qrelax/core/errors.hpp"
#include "qrelax/core/oscillator.hpp"

using namespace qrelax;
using namespace qrelax::coord;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

PhysParams natural(double friction = 1.0, double temperature = 1.0) {
    PhysParams p;
    p.friction = friction;
    p.temperature = temperature;
    return p;
}

double max_abs(const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

CoordDensity ground_state_density(const CoordGrid& grid, const PhysParams& p) {
    const Eigenpair g = oscillator_eigenpair(0, p, grid);
    CoordDensity rho(grid, p);
    for (std::size_t i = 0; i < grid.size(); ++i) rho.values[i] = g.values[i] * g.values[i];
    return rho;
}

}  // namespace

TEST(Density, GaussianMoments) {
    const CoordGrid g(-10.0, 10.0, 401);
    const CoordDensity rho = gaussian_density(0.5, 1.7, g, natural());
    EXPECT_NEAR(density_norm(rho), 1.0, 1e-14);
    const auto m = density_moments(rho);
    EXPECT_NEAR(m.mean, 0.5, 1e-10);
    EXPECT_NEAR(m.variance, 1.7, 1e-9);
    EXPECT_NEAR(l1_distance(g, rho.values, rho.values), 0.0, 0.0);
    EXPECT_THROW(gaussian_density(0.0, 0.0, g, natural()), ArgumentError);
}

TEST(Bohm, GaussianClosedForm) {
    const CoordGrid g(-8.0, 8.0, 801);
    const double u = 1.0;
    const CoordDensity rho = gaussian_density(0.0, u, g, natural());
    const auto q = bohm_potential(rho);
    EXPECT_NEAR(q[400], 0.25, 1e-4);
    for (std::size_t i = 100; i < 700; i += 25) {
        const double x = g[i];
        EXPECT_NEAR(q[i], 0.25 / u - x * x / (8.0 * u * u), 1e-4) << "x = " << x;
    }
}

TEST(Bohm, GroundStateQuantumPotentialCancelsWell) {
    const CoordGrid g(-7.0, 7.0, 701);
    const PhysParams p = natural();
    const auto q = bohm_potential(ground_state_density(g, p));
    const Potential u = Potential::harmonic(1.0, 1.0);
    for (std::size_t i = 150; i <= 550; ++i) EXPECT_NEAR(q[i] + u.value(g[i]), 0.5, 1e-6) << "x = " << g[i];
}

TEST(Bohm, UniformDensityHasNoQuantumPotential) {
    const CoordGrid g(-1.0, 1.0, 41);
    const CoordDensity rho(g, natural(), std::vector<double>(41, 0.5));
    EXPECT_LT(max_abs(bohm_potential(rho)), 1e-10);
}

TEST(Bohm, MaskedCellsCarryNearestValue) {
    const CoordGrid g(-10.0, 10.0, 201);
    const CoordDensity rho = gaussian_density(0.0, 0.5, g, natural());
    const auto q = bohm_potential(rho);
    // exp(−x²) < 1e-12 beyond |x| ≈ 5.26: masked cells repeat the edge value.
    EXPECT_EQ(q.front(), q[40]);
    EXPECT_EQ(q.back(), q[160]);
    EXPECT_TRUE(std::all_of(q.begin(), q.end(), [](double v) { return std::isfinite(v); }));
}

TEST(Bohm, DegenerateDensityRejected) {
    const CoordGrid g(-1.0, 1.0, 21);
    std::vector<double> v(21, 0.0);
    v[10] = 1.0;
    v[11] = 1.0;
    EXPECT_THROW(bohm_potential(CoordDensity(g, natural(), v)), DegenerateStateError);
    EXPECT_THROW(bohm_potential(CoordDensity(g, natural(), std::vector<double>(21, 0.0))), DegenerateStateError);
}

TEST(SmoluchowskiBohm, GroundStateIsStationaryAtZeroTemperature) {
    const CoordGrid g(-7.0, 7.0, 701);
    const PhysParams p = natural(1.0, 0.0);
    const CoordDensity rho = ground_state_density(g, p);
    const auto r = rhs_smoluchowski_bohm(rho, Potential::harmonic(1.0, 1.0));
    EXPECT_LT(max_abs(r), 1e-6 * max_abs(rho.values));
}

TEST(SmoluchowskiBohm, ClassicalEquilibriumIsStationary) {
    PhysParams p = natural(0.7, 0.8);
    p.hbar = 0.0;
    const Potential u = Potential::anharmonic(1.0, 1.0, 0.5);
    double previous = 0.0;
    for (std::size_t n : {401u, 801u, 1601u}) {
        const CoordGrid g(-8.0, 8.0, n);
        CoordDensity rho(g, p);
        for (std::size_t i = 0; i < g.size(); ++i) rho.values[i] = std::exp(-u.value(g[i]) / p.thermal_energy());
        normalize(rho);
        const double residual = max_abs(rhs_smoluchowski_bohm(rho, u)) / max_abs(rho.values);
        if (previous > 0.0) {
            EXPECT_GT(previous / residual, 12.0) << "n = " << n;
        }
        previous = residual;
    }
    EXPECT_LT(previous, 1e-6);
}

TEST(SmoluchowskiBohm, FluxFormConservesNorm) {
    const CoordGrid g(-6.0, 6.0, 301);
    const PhysParams p = natural(0.5, 0.3);
    CoordDensity rho = gaussian_density(0.7, 0.4, g, p);
    for (std::size_t i = 0; i < g.size(); ++i) rho.values[i] *= 1.0 + 0.3 * std::sin(2.0 * g[i]);
    const auto r = rhs_smoluchowski_bohm(rho, Potential::anharmonic(1.0, 1.0, 0.2));
    double sum = 0.0;
    for (double v : r) sum += v;
    EXPECT_LT(std::abs(sum * g.spacing()), 1e-10 * max_abs(r));
}

TEST(SmoluchowskiBohm, ZeroTemperatureRelaxationFollowsSquareRootLaw) {
    const PhysParams p = natural(10.0, 0.0);
    const CoordGrid g(-5.0, 5.0, 1025);
    // Start on the law itself: σ² = 0.1 is reached at t0 = −(b/4) ln(1 − (2σ²)²).
    const double var0 = 0.1;
    const double t0 = -2.5 * std::log1p(-4.0 * var0 * var0);
    const CoordDensity rho0 = gaussian_density(0.0, var0, g, p);
    const auto traj = evolve_smoluchowski_bohm(rho0, Potential::harmonic(1.0, 1.0), 20.0, 0.01, 50);
    double last_energy = kInf;
    for (const auto& s : traj.samples) {
        const double law = dispersion_t0_nonlinear(s.t + t0, p);
        EXPECT_NEAR(s.var_x / law, 1.0, 1e-2) << "t = " << s.t;
        EXPECT_NEAR(s.norm, 1.0, 1e-10);
        EXPECT_LE(s.free_energy, last_energy + 1e-10) << "t = " << s.t;
        last_energy = s.free_energy;
    }
}

TEST(SmoluchowskiBohm, Guards) {
    const CoordGrid g(-5.0, 5.0, 101);
    const CoordDensity rho = gaussian_density(0.0, 0.5, g, natural(0.0));
    EXPECT_THROW(rhs_smoluchowski_bohm(rho, Potential::harmonic(1.0, 1.0)), ArgumentError);
    const CoordDensity ok = gaussian_density(0.0, 0.5, g, natural());
    EXPECT_THROW(evolve_smoluchowski_bohm(ok, Potential::harmonic(1.0, 1.0), 1.0, 0.0), ArgumentError);
}

TEST(DispersionT0, ClosedForms) {
    const PhysParams p = natural(10.0, 0.0);
    EXPECT_NEAR(dispersion_t0_nonlinear(5.0, p), 0.46494, 1e-5);
    EXPECT_NEAR(dispersion_t0_classical(5.0, p), 0.31606, 1e-5);
    EXPECT_EQ(dispersion_t0_nonlinear(0.0, p), 0.0);
    EXPECT_EQ(dispersion_t0_classical(0.0, p), 0.0);
    EXPECT_NEAR(dispersion_t0_nonlinear(1e4, p), 0.5, 1e-12);
    EXPECT_NEAR(dispersion_t0_classical(1e4, p), 0.5, 1e-12);
    for (double t = 0.0; t < 60.0; t += 0.37) EXPECT_GE(dispersion_t0_nonlinear(t, p), dispersion_t0_classical(t, p));
}

TEST(Bloch, ThermalDensityMatchesEigenSum) {
    const CoordGrid g(-10.0, 10.0, 401);
    const PhysParams p = natural();
    const Potential u = Potential::harmonic(1.0, 1.0);
    const double db = 0.9 * bloch_stability_limit(g, p, u);
    for (double beta : {0.5, 1.0, 2.0}) {
        const CoordDensity bloch = bloch_equilibrium_density(beta, u, db, g, p);
        const GibbsDensity gibbs = gibbs_coordinate_density(beta, p, g, 20);
        EXPECT_LT(l1_distance(g, bloch.values, gibbs.density.values), 1e-4) << "beta = " << beta;
    }
    const CoordDensity rho = bloch_equilibrium_density(1.0, u, db, g, p);
    EXPECT_NEAR(rho.values[200], 1.0 / std::sqrt(2.0 * std::numbers::pi * 0.5 / std::tanh(0.5)), 1e-5);
    EXPECT_NEAR(rho.values[200], 0.38343, 1e-3);
}

TEST(Bloch, PartitionFunctionMatchesClosedForm) {
    const CoordGrid g(-10.0, 10.0, 321);
    const PhysParams p = natural();
    const Potential u = Potential::harmonic(1.0, 1.0);
    const double db = 0.9 * bloch_stability_limit(g, p, u);
    const double z = bloch_partition_function(1.0, u, db, g, p);
    EXPECT_NEAR(z / partition_function_ho_exact(1.0, p), 1.0, 1e-4);
    EXPECT_NEAR(partition_function_ho_exact(1.0, p), 0.95951, 1e-5);
}

TEST(Bloch, HighTemperatureIsNearlyUniform) {
    const CoordGrid g(-2.0, 2.0, 81);
    const PhysParams p = natural();
    const Potential u = Potential::harmonic(1.0, 1.0);
    const CoordDensity rho = bloch_equilibrium_density(1e-3, u, 1e-4, g, p);
    const double mean = 1.0 / 4.0;
    for (double v : rho.values) EXPECT_NEAR(v / mean, 1.0, 5e-3);
}

TEST(Bloch, UnstableStepRejected) {
    const CoordGrid g(-5.0, 5.0, 201);
    const PhysParams p = natural();
    const Potential u = Potential::harmonic(1.0, 1.0);
    const double limit = bloch_stability_limit(g, p, u);
    EXPECT_THROW(bloch_propagate(std::vector<double>(201, 1.0), 1.0, u, 1.5 * limit, g, p), ConfigurationError);
    EXPECT_THROW(bloch_propagate(std::vector<double>(200, 1.0), 1.0, u, limit, g, p), ArgumentError);
}

TEST(Gibbs, GroundStateAndSecondMoment) {
    const CoordGrid g(-14.0, 14.0, 1401);
    const PhysParams p = natural();
    const GibbsDensity cold = gibbs_coordinate_density(kInf, p, g, 20);
    EXPECT_NEAR(cold.density.values[700], 1.0 / std::sqrt(std::numbers::pi), 1e-10);
    EXPECT_FALSE(cold.accuracy_warning);
    const GibbsDensity warm = gibbs_coordinate_density(1.0, p, g, 60);
    EXPECT_NEAR(density_moments(warm.density).variance, 0.5 / std::tanh(0.5), 1e-6);
    EXPECT_FALSE(warm.accuracy_warning);
    EXPECT_TRUE(gibbs_coordinate_density(0.5, p, g, 20).accuracy_warning);
}

TEST(Gibbs, BlochCsv) {
    const CoordGrid g(-10.0, 10.0, 71);
    const PhysParams p = natural();
    const auto rho = gibbs_coordinate_density(1.0, p, g, 20).density;
    std::ostringstream os;
    write_bloch_csv(os, rho, Potential::harmonic(1.0, 1.0));
    const std::string text = os.str();
    EXPECT_EQ(text.substr(0, text.find('\n')), "x,rho_eq,Q,U");
    EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 72);
}

TEST(EinsteinLaw, ClosedFormPoints) {
    const PhysParams p = natural();
    const double lambda2 = std::pow(p.thermal_wavelength(), 2);
    const double d = p.einstein_diffusion();
    EXPECT_NEAR(einstein_law_time(lambda2, p), lambda2 * (1.0 - std::log(2.0)) / (2.0 * d), 1e-15);
    const double big = 1e6 * lambda2;
    EXPECT_NEAR(einstein_law_time(big, p) / (big / (2.0 * d)), 1.0, 1e-4);
    const double tau = p.quantum_time();
    const double t = 1e-6 * tau;
    EXPECT_NEAR(einstein_law_dispersion(t, p) / (p.hbar * std::sqrt(t / (p.mass * p.friction))), 1.0, 1e-2);
}

TEST(EinsteinLaw, RoundTrip) {
    for (double temperature : {1.0, 0.05, 0.0}) {
        const PhysParams p = natural(1.3, temperature);
        const double lambda2 = temperature > 0.0 ? std::pow(p.thermal_wavelength(), 2) : 1.0;
        for (double r = 1e-6; r <= 1e6; r *= 3.7) {
            const double var = r * lambda2;
            const double t = einstein_law_time(var, p);
            EXPECT_NEAR(einstein_law_dispersion(t, p) / var, 1.0, 1e-10) << "ratio " << r << " T " << temperature;
        }
    }
    EXPECT_EQ(einstein_law_dispersion(0.0, natural()), 0.0);
}

TEST(FreeDispersion, ClassicalEinsteinIsLinear) {
    const PhysParams p = natural(2.0, 0.6);
    const auto traj = free_dispersion_evolve(0.3, 5.0, DispersionLaw::ClassicalEinstein, 0.05, p);
    for (const auto& s : traj) EXPECT_NEAR(s.var_x, 0.3 + 2.0 * p.einstein_diffusion() * s.t, 1e-12);
    EXPECT_DOUBLE_EQ(traj.back().t, 5.0);
}

TEST(FreeDispersion, QuantumEinsteinFollowsImplicitLaw) {
    const PhysParams p = natural();
    const double lambda2 = std::pow(p.thermal_wavelength(), 2);
    const double d = p.einstein_diffusion();
    const double var0 = 1e-6 * lambda2;
    const double offset = einstein_law_time(var0, p);
    const double t_end = 1e4 * p.quantum_time();
    const auto traj = free_dispersion_evolve(var0, t_end, DispersionLaw::QuantumEinstein, 1.0, p);
    double max_c = 0.0;
    for (const auto& s : traj) {
        const double implicit = einstein_law_dispersion(s.t + offset, p);
        EXPECT_NEAR(s.var_x / implicit, 1.0, 1e-6) << "t = " << s.t;
        const double gain = s.var_x - var0;
        EXPECT_GE(gain, 2.0 * d * s.t * (1.0 - 1e-12));
        if (s.t > 0.0) max_c = std::max(max_c, (gain - 2.0 * d * s.t) / (2.0 * std::sqrt(lambda2 * d * s.t)));
    }
    EXPECT_LE(max_c, 2.1);
}

TEST(FreeDispersion, ZeroTemperatureBathGrowsLogarithmically) {
    const PhysParams p = natural(1.0, 0.0);
    const double t0 = default_bath_start(p);
    const auto traj = free_dispersion_evolve(1e4, t0 * 1e6, DispersionLaw::QuantumBath, 1.0, p, t0);
    // Slope of σ² against ln t over the last decade.
    const auto at = [&](double t) {
        const auto it = std::lower_bound(traj.begin(), traj.end(), t,
                                         [](const DispersionSample& s, double v) { return s.t < v; });
        return it->var_x;
    };
    const double t1 = t0 * 1e5;
    const double t2 = traj.back().t;
    const double slope = (traj.back().var_x - at(t1)) / std::log(t2 / t1);
    EXPECT_NEAR(slope / (2.0 * p.hbar / p.friction), 1.0, 0.05);
    for (std::size_t k = 1; k < traj.size(); ++k) EXPECT_GE(traj[k].var_x, traj[k - 1].var_x);
    EXPECT_THROW(free_dispersion_evolve(1.0, 1.0, DispersionLaw::QuantumBath, 0.1, p), ArgumentError);
}

TEST(FreeDispersion, LawTags) {
    for (auto law : {DispersionLaw::ClassicalEinstein, DispersionLaw::QuantumEinstein, DispersionLaw::QuantumBath}) {
        EXPECT_EQ(parse_law(law_tag(law)), law);
    }
    EXPECT_THROW(parse_law("EINSTEIN"), ArgumentError);
}

TEST(Nelson, Condition) {
    const auto warm = nelson_condition(natural(1.0, 1.0));
    EXPECT_DOUBLE_EQ(warm.nelson_D, 0.5);
    EXPECT_DOUBLE_EQ(warm.einstein_D, 1.0);
    EXPECT_FALSE(warm.quantum_visible);
    const auto cold = nelson_condition(natural(10.0, 0.1));
    EXPECT_NEAR(cold.einstein_D, 0.01, 1e-15);
    EXPECT_TRUE(cold.quantum_visible);
    EXPECT_TRUE(nelson_condition(natural(1.0, 0.0)).quantum_visible);
}
