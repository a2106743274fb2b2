#include <cmath>
#include <limits>
#include <sstream>

#include <gtest/gtest.h>

#include "qrelax/core/errors.hpp"
#include "qrelax/moments/closure.hpp"
#include "qrelax/moments/coefficients.hpp"

using namespace qrelax;
using namespace qrelax::moments;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

PhysParams natural(double friction = 1.0) {
    PhysParams p;
    p.friction = friction;
    return p;
}

// β giving reduced frequency s in natural units.
double beta_for(double s) { return 2.0 * s; }

std::vector<double> log_spaced(double lo, double hi, int n) {
    std::vector<double> out;
    for (int k = 0; k < n; ++k) out.push_back(lo * std::pow(hi / lo, static_cast<double>(k) / (n - 1)));
    return out;
}

MomentState squeezed() { return {0.3, -0.2, 0.2, 3.0, 0.1}; }

}  // namespace

TEST(Coefficients, ClosedFormValues) {
    const PhysParams p = natural();
    EXPECT_NEAR(friction_B(1.0, p), std::sinh(0.5) / 0.5, 1e-15);
    EXPECT_NEAR(friction_B(1.0, p), 1.04219, 1e-5);
    EXPECT_NEAR(diffusion_Dp(1.0, p), std::cosh(0.5), 1e-15);
    EXPECT_NEAR(diffusion_Dp(1.0, p), 1.12763, 1e-5);
    EXPECT_NEAR(mean_energy_exact(1.0, p), 1.08198, 1e-5);
    EXPECT_NEAR(mean_energy_mh(1.0, p), 0.5 * (std::sqrt(2.0) + 1.0), 1e-15);
    EXPECT_NEAR(mean_energy_mh(1.0, p), 1.20711, 1e-5);
    EXPECT_GT(mean_energy_mh(1.0, p), mean_energy_exact(1.0, p));
}

TEST(Coefficients, ClassicalLimit) {
    const PhysParams p = natural(0.7);
    const double beta = 1e-7;
    EXPECT_NEAR(friction_B(beta, p) / 0.7, 1.0, 1e-12);
    EXPECT_NEAR(diffusion_Dp(beta, p) / (0.7 / beta), 1.0, 1e-12);
    EXPECT_NEAR(mean_energy_exact(beta, p) * beta, 1.0, 1e-12);
    EXPECT_NEAR(mean_energy_mh(beta, p) * beta, 1.0, 1e-12);
    const auto eff = relaxation_coefficients(RelaxationModel::Effective, beta, p);
    EXPECT_NEAR(eff.diffusion / (0.7 / beta), 1.0, 1e-6);
}

TEST(Coefficients, SeriesBranchIsContinuous) {
    const PhysParams p = natural();
    const double below = beta_for(0.99999e-4);
    const double above = beta_for(1.00001e-4);
    EXPECT_NEAR(friction_B(below, p), friction_B(above, p), 1e-12);
    EXPECT_NEAR(diffusion_Dp(below, p) * below, diffusion_Dp(above, p) * above, 1e-12);
    EXPECT_NEAR(mean_energy_exact(below, p) * below, mean_energy_exact(above, p) * above, 1e-12);
}

TEST(Coefficients, ZeroTemperatureLimits) {
    const PhysParams p = natural();
    EXPECT_TRUE(std::isinf(friction_B(kInf, p)));
    EXPECT_DOUBLE_EQ(mean_energy_exact(kInf, p), 0.5);
    EXPECT_DOUBLE_EQ(mean_energy_mh(kInf, p), 0.5);
    double previous = 0.0;
    for (double beta : log_spaced(1e-3, 100.0, 40)) {
        const double b = friction_B(beta, p);
        EXPECT_GT(b, previous);
        previous = b;
    }
}

TEST(Coefficients, FreeParticleReducesToClassical) {
    PhysParams p = natural(0.4);
    p.omega0 = 0.0;
    for (double beta : {0.1, 1.0, 10.0}) {
        EXPECT_DOUBLE_EQ(friction_B(beta, p), 0.4);
        EXPECT_DOUBLE_EQ(diffusion_Dp(beta, p), 0.4 / beta);
    }
}

TEST(Coefficients, FluctuationDissipationTheorem) {
    const PhysParams p = natural();
    for (double s : log_spaced(1e-3, 10.0, 50)) {
        const double beta = beta_for(s);
        const double lhs = diffusion_Dp(beta, p);
        const double rhs = friction_B(beta, p) * 0.5 / std::tanh(s);
        EXPECT_NEAR(lhs / rhs, 1.0, 1e-12) << "s = " << s;
        // Adiabatic friction exceeds the isothermal one.
        EXPECT_GE(beta * lhs, friction_B(beta, p));
    }
}

TEST(Coefficients, GibbsHelmholtz) {
    const PhysParams p = natural();
    for (double beta : {0.1, 1.0, 5.0}) EXPECT_LT(check_gibbs_helmholtz(beta, p, 1e-4), 1e-6) << beta;
    const double coarse = check_gibbs_helmholtz(1.0, p, 0.04);
    const double fine = check_gibbs_helmholtz(1.0, p, 0.02);
    EXPECT_NEAR(coarse / fine, 4.0, 0.2);
}

TEST(Coefficients, MaxwellHeisenbergEnergyBoundsAndLimits) {
    const PhysParams p = natural();
    for (double s : log_spaced(1e-3, 10.0, 50)) {
        EXPECT_GE(mean_energy_mh(beta_for(s), p), mean_energy_exact(beta_for(s), p));
    }
    EXPECT_NEAR(mean_energy_mh(1e-4, p) / mean_energy_exact(1e-4, p), 1.0, 1e-4);
}

TEST(Coefficients, ModelTags) {
    for (auto m : {RelaxationModel::Classical, RelaxationModel::Effective, RelaxationModel::Quantum,
                   RelaxationModel::MaxwellHeisenberg}) {
        EXPECT_EQ(parse_model(model_tag(m)), m);
    }
    EXPECT_FALSE(parse_model("QUANTUM_11"));
    EXPECT_THROW(relaxation_coefficients(RelaxationModel::MaxwellHeisenberg, 1.0, natural()), ArgumentError);
}

TEST(Coefficients, TableCsv) {
    std::ostringstream os;
    write_coefficient_table(os, natural(), 0.1, 10.0, 3);
    const std::string text = os.str();
    EXPECT_EQ(text.substr(0, text.find('\n')), "beta,B,D_p,eps_exact,eps_mh");
    EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 4);
}

TEST(Closure, QuantumFixedPoint) {
    const PhysParams p = natural(0.5);
    const MomentState eq = equilibrium_moments(RelaxationModel::Quantum, 1.0, p);
    EXPECT_NEAR(eq.var_p, 0.5 / std::tanh(0.5), 1e-14);
    const MomentState d = rhs_moment_closure(eq, RelaxationModel::Quantum, 1.0, p);
    for (double v : {d.mean_x, d.mean_p, d.var_x, d.var_p, d.cov_xp}) EXPECT_NEAR(v, 0.0, 1e-12);
}

TEST(Closure, MaxwellHeisenbergFixedPoint) {
    const PhysParams p = natural(0.5);
    const double u = mh_equilibrium_variance(1.0, p);
    EXPECT_NEAR(u, 0.5 * (1.0 + std::sqrt(2.0)), 1e-15);
    EXPECT_NEAR(u, 1.20711, 1e-5);
    const MomentState eq = equilibrium_moments(RelaxationModel::MaxwellHeisenberg, 1.0, p);
    const MomentState d = rhs_moment_closure(eq, RelaxationModel::MaxwellHeisenberg, 1.0, p);
    for (double v : {d.mean_x, d.mean_p, d.var_x, d.var_p, d.cov_xp}) EXPECT_NEAR(v, 0.0, 1e-12);
    // Maxwell-Heisenberg relation σ_p² = m k_BT + ħ²/(4σ_x²) at the fixed point.
    EXPECT_NEAR(eq.var_p, 1.0 + 1.0 / (4.0 * eq.var_x), 1e-14);
    EXPECT_NEAR(gaussian_energy(eq, p), mean_energy_mh(1.0, p), 1e-14);
}

TEST(Closure, FrictionlessFlowConservesDeterminant) {
    const PhysParams p = natural(0.0);
    const MomentState s0 = squeezed();
    const double period = 2.0 * std::acos(-1.0);
    for (auto model : {RelaxationModel::Classical, RelaxationModel::Effective, RelaxationModel::Quantum,
                       RelaxationModel::MaxwellHeisenberg}) {
        const auto traj = evolve_moments(s0, model, 1.0, p, 10.0 * period, 0.002, 100);
        for (const auto& sample : traj.samples) {
            EXPECT_NEAR(sample.state.determinant(), s0.determinant(), 1e-10) << model_tag(model);
        }
        EXPECT_NEAR(traj.final_state.mean_x, s0.mean_x, 1e-8);
    }
}

TEST(Closure, QuantumRelaxesToCothDispersion) {
    const PhysParams p = natural(0.5);
    const auto traj = evolve_moments(squeezed(), RelaxationModel::Quantum, 1.0, p, 80.0, 0.01);
    EXPECT_NEAR(traj.final_state.var_p, 0.5 / std::tanh(0.5), 1e-6);
}

TEST(Closure, EffectiveAndQuantumShareEndpointNotTransient) {
    const PhysParams p = natural(0.5);
    const auto q = evolve_moments(squeezed(), RelaxationModel::Quantum, 1.0, p, 80.0, 0.01, 1);
    const auto e = evolve_moments(squeezed(), RelaxationModel::Effective, 1.0, p, 80.0, 0.01, 1);
    EXPECT_NEAR(q.final_state.var_p, e.final_state.var_p, 1e-6);
    double gap = 0.0;
    for (std::size_t k = 0; k < q.samples.size(); ++k) {
        gap = std::max(gap, std::abs(q.samples[k].state.var_p - e.samples[k].state.var_p) / q.samples[k].state.var_p);
    }
    EXPECT_GT(gap, 1e-2);
}

TEST(Closure, ZeroDurationAndGuards) {
    const PhysParams p = natural();
    const auto traj = evolve_moments(squeezed(), RelaxationModel::Quantum, 1.0, p, 0.0, 0.01);
    EXPECT_EQ(traj.samples.size(), 1u);
    EXPECT_DOUBLE_EQ(traj.final_state.var_p, squeezed().var_p);
    EXPECT_THROW(evolve_moments(squeezed(), RelaxationModel::Quantum, 1.0, p, 1.0, 0.2), ArgumentError);
    EXPECT_THROW(evolve_moments({0, 0, 1.0, 1.0, 1.0}, RelaxationModel::Quantum, 1.0, p, 1.0, 0.01),
                 ArgumentError);
}
