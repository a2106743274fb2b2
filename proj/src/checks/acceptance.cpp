#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "qrelax/checks/checks.hpp"
#include "qrelax/core/errors.hpp"
#include "qrelax/coordinate_space/density.hpp"
#include "qrelax/coordinate_space/dispersion.hpp"
#include "qrelax/coordinate_space/equilibrium.hpp"
#include "qrelax/coordinate_space/smoluchowski.hpp"
#include "qrelax/io/csv.hpp"
#include "qrelax/moments/closure.hpp"
#include "qrelax/moments/coefficients.hpp"
#include "qrelax/operator_space/evolve.hpp"
#include "qrelax/operator_space/master_equation.hpp"
#include "qrelax/operator_space/operators.hpp"
#include "qrelax/phase_space/evolve.hpp"

namespace qrelax::checks {

namespace {

using Checks = std::vector<CheckResult>;

PhysParams natural(double friction, double temperature = 1.0) {
    PhysParams p;
    p.friction = friction;
    p.temperature = temperature;
    return p;
}

std::vector<double> log_spaced(double lo, double hi, std::size_t n) {
    std::vector<double> out(n);
    for (std::size_t k = 0; k < n; ++k) {
        out[k] = lo * std::pow(hi / lo, static_cast<double>(k) / static_cast<double>(n - 1));
    }
    return out;
}

std::string at(const char* what, double value) { return std::string(what) + " " + io::format_number(value); }

// Kernel residuals are measured on the n, m < 20 block relative to the
// friction-term scale there, away from the truncation edge.
constexpr std::size_t kBlock = 20;

double relative_block(const ComplexMatrix& r, const opspace::DensityMatrix& rho, const opspace::OperatorSet& ops) {
    return opspace::block_norm(r, kBlock) / opspace::block_norm(opspace::friction_term(rho, ops), kBlock);
}

void gibbs_stationarity(Checks& out) {
    using namespace opspace;
    const auto ops = build_oscillator_operators(40, natural(0.2));
    const auto rho = gibbs_state(1.0, ops);
    out.push_back(expect_below("NL7_gibbs_residual", relative_block(rhs_nonlinear(rho, ops), rho, ops), 1e-6,
                               "N=40, beta=1, b=0.2, block n,m<20"));
    out.push_back(expect_below("LIN8_gibbs_residual", relative_block(rhs_linearized(rho, ops, 1.0), rho, ops), 1e-8,
                               "N=40, beta=1, b=0.2, block n,m<20"));
}

void caldeira_leggett_inconsistency(Checks& out) {
    using namespace opspace;
    {
        const auto ops = build_oscillator_operators(40, natural(0.2, 0.5));
        const auto rho = gibbs_state(2.0, ops);
        out.push_back(expect_above("CL2_gibbs_residual", relative_block(rhs_caldeira_leggett(rho, ops), rho, ops),
                                   1e-3, "N=40, beta=2, b=0.2, block n,m<20"));
    }
    // Both kernels relax the same displaced thermal state at β = 2.
    const auto ops = build_oscillator_operators(24, natural(0.2, 0.5));
    const auto rho0 = displaced_thermal_state(2.0, Complex(1.0, 0.0), ops);
    EvolveOptions options;
    options.stride = 2000;
    options.log_floor = 1e-30;
    const double t_end = 60.0;
    const double dt = 0.005;
    const auto cl = evolve(rho0, ops, Kernel::CaldeiraLeggett, t_end, dt, options);
    const auto nl = evolve(rho0, ops, Kernel::Nonlinear, t_end, dt, options);
    const double d_cl = cl.samples.back().distance_to_gibbs;
    const double d_nl = nl.samples.back().distance_to_gibbs;
    out.push_back(expect_above("CL2_over_NL7_terminal_distance", d_cl / d_nl, 5.0,
                               "trace distance to Gibbs at t=60: CL2 " + io::format_number(d_cl) + ", NL7 " +
                                   io::format_number(d_nl)));
}

void high_temperature_reduction(Checks& out, unsigned seed) {
    using namespace opspace;
    const auto rho = random_density_matrix(16, seed, 0.6);
    auto gap = [&](double beta) {
        const auto ops = build_oscillator_operators(16, natural(0.2, 1.0 / beta));
        const ComplexMatrix cl = rhs_caldeira_leggett(rho, ops);
        const ComplexMatrix lin = rhs_linearized(rho, ops, beta);
        return (lin - cl).norm() / cl.norm();
    };
    out.push_back(expect_within("LIN8_CL2_gap_ratio", gap(0.1) / gap(0.05), 4.0, 0.8,
                                "gap(beta=0.1)/gap(beta=0.05), N=16, seed " + std::to_string(seed)));
}

void fluctuation_dissipation(Checks& out) {
    const PhysParams p = natural(1.0);
    double fdt = 0.0;
    double gh = 0.0;
    for (double s : log_spaced(1e-3, 10.0, 50)) {
        const double beta = 2.0 * s;
        const double expected = moments::friction_B(beta, p) * 0.5 / std::tanh(s);
        fdt = std::max(fdt, std::abs(moments::diffusion_Dp(beta, p) / expected - 1.0));
        gh = std::max(gh, moments::check_gibbs_helmholtz(beta, p, 1e-4 * beta));
    }
    out.push_back(expect_below("fluctuation_dissipation", fdt, 1e-12,
                               "max |D_p / (B (hbar w0/2) coth s) - 1|, 50 s in [1e-3, 10]"));
    out.push_back(expect_below("gibbs_helmholtz", gh, 1e-6,
                               "max relative |d(beta B)/d beta - beta D_p|, central difference h = 1e-4 beta"));
}

void equilibrium_dispersions(Checks& out) {
    const PhysParams p = natural(1.0);
    const double exact = 0.5 / std::tanh(0.5);
    const moments::MomentState start{0.5, 0.0, 1.3, 1.3, 0.0};
    const auto ode = moments::evolve_moments(start, moments::RelaxationModel::Quantum, 1.0, p, 40.0, 0.01, 1000);
    out.push_back(expect_within("QUANTUM_10_ode_var_p", ode.final_state.var_p, exact, 1e-6, "beta=1, t=40"));

    const PhaseGrid g{CoordGrid(-8.0, 8.0, 257), CoordGrid(-8.0, 8.0, 257)};
    const auto w0 = phase::gaussian_wigner(start, g, p);
    const auto dyn = phase::PhaseDynamics::harmonic(moments::RelaxationModel::Quantum, 1.0);
    const auto grid = phase::evolve_wigner(w0, dyn, 10.0, 0.9 * phase::cfl_limit(dyn, w0), 100000);
    out.push_back(expect_below("QUANTUM_10_grid_var_p", std::abs(grid.samples.back().moments.var_p / exact - 1.0),
                               1e-3, "relative error, 257x257 on [-8,8]^2, t=10"));
}

void maxwell_heisenberg(Checks& out) {
    const PhysParams p = natural(1.0);
    const moments::MomentState start{0.5, 0.0, 1.3, 1.3, 0.0};
    const auto ode = moments::evolve_moments(start, moments::RelaxationModel::MaxwellHeisenberg, 1.0, p, 40.0, 0.01,
                                             1000);
    out.push_back(expect_within("MH_ode_energy", moments::gaussian_energy(ode.final_state, p),
                                0.5 * (std::sqrt(2.0) + 1.0), 1e-6, "beta=1, t=40"));

    double worst = 0.0;
    for (double s : log_spaced(1e-3, 10.0, 50)) {
        const double beta = 2.0 * s;
        worst = std::min(worst, moments::mean_energy_mh(beta, p) - moments::mean_energy_exact(beta, p));
    }
    out.push_back(expect_above("MH_energy_upper_bound", worst, -1e-15,
                               "min (eps_MH - eps_exact) over 50 s = beta hbar w0 / 2 in [1e-3, 10]"));
    for (double s : {1e-3, 10.0}) {
        const double ratio = moments::mean_energy_mh(2.0 * s, p) / moments::mean_energy_exact(2.0 * s, p);
        out.push_back(expect_below("MH_endpoint_agreement", std::abs(ratio - 1.0), 1e-4,
                                   at("|eps_MH/eps_exact - 1| at s =", s)));
    }
}

void smoluchowski_zero_temperature(Checks& out) {
    const PhysParams p = natural(10.0, 0.0);
    const CoordGrid g(-6.0, 6.0, 2049);
    // Start on the law itself: σ² = σ0² is reached at t0 = −(b/4) ln(1 − (2σ0²)²).
    const double var0 = 0.05;
    const double t0 = -2.5 * std::log1p(-4.0 * var0 * var0);
    const auto rho0 = coord::gaussian_density(0.0, var0, g, p);
    const auto traj = coord::evolve_smoluchowski_bohm(rho0, Potential::harmonic(1.0, 1.0), 20.0, 0.01, 100);
    double law_gap = 0.0;
    double margin = std::numeric_limits<double>::infinity();
    std::size_t sampled = 0;
    for (const auto& s : traj.samples) {
        if (s.t <= 0.0) continue;
        ++sampled;
        law_gap = std::max(law_gap, std::abs(s.var_x / coord::dispersion_t0_nonlinear(s.t + t0, p) - 1.0));
        margin = std::min(margin, s.var_x / coord::dispersion_t0_classical(s.t + t0, p) - 1.0);
    }
    out.push_back(expect_below("square_root_law", law_gap, 1e-2,
                               std::to_string(sampled) + " samples to t=20, b=10, 2049 points, t0=" +
                                   io::format_number(t0)));
    out.push_back(expect_above("exceeds_classical_like", margin, 0.0, "min var_x / classical-like - 1"));
    out.push_back(expect_above("sample_count", static_cast<double>(sampled), 19.5, "sampled times"));
}

void bloch_equilibrium(Checks& out) {
    const CoordGrid g(-10.0, 10.0, 401);
    const PhysParams p = natural(1.0);
    const Potential u = Potential::harmonic(1.0, 1.0);
    const double db = 0.9 * coord::bloch_stability_limit(g, p, u);
    for (double beta : {0.5, 1.0, 2.0}) {
        const auto bloch = coord::bloch_equilibrium_density(beta, u, db, g, p);
        const auto gibbs = coord::gibbs_coordinate_density(beta, p, g, 20);
        out.push_back(expect_below("bloch_vs_eigen_sum_L1", coord::l1_distance(g, bloch.values, gibbs.density.values),
                                   1e-4, at("beta =", beta)));
    }
    const double z = coord::bloch_partition_function(1.0, u, db, g, p);
    out.push_back(expect_below("partition_function", std::abs(z * 2.0 * std::sinh(0.5) - 1.0), 1e-4,
                               "relative to 1/(2 sinh 0.5) = 0.95951"));
}

void quantum_einstein(Checks& out) {
    const PhysParams p = natural(1.0);
    const double tau = p.quantum_time();
    const double lambda2 = std::pow(p.thermal_wavelength(), 2);
    const double var0 = 1e-6 * lambda2;
    const double offset = coord::einstein_law_time(var0, p);
    const double t_end = 1e5 * tau;
    const auto traj = coord::free_dispersion_evolve(var0, t_end, coord::DispersionLaw::QuantumEinstein, 1.0, p);
    double implicit_gap = 0.0;
    double classical_gap = 0.0;
    for (const auto& s : traj) {
        implicit_gap = std::max(implicit_gap, std::abs(s.var_x / coord::einstein_law_dispersion(s.t + offset, p) - 1.0));
        if (s.t >= 1e4 * tau) {
            const double t = s.t + offset;
            classical_gap = std::max(classical_gap, std::abs(s.var_x / (2.0 * p.einstein_diffusion() * t) - 1.0));
        }
    }
    out.push_back(expect_below("ode_vs_implicit_law", implicit_gap, 1e-6,
                               std::to_string(traj.size()) + " ODE samples to 1e5 tau"));

    double short_gap = 0.0;
    for (double r : log_spaced(1e-10, 1e-6, 9)) {
        const double t = r * tau;
        short_gap = std::max(short_gap, std::abs(coord::einstein_law_dispersion(t, p) /
                                                     (p.hbar * std::sqrt(t / (p.mass * p.friction))) -
                                                 1.0));
    }
    out.push_back(expect_below("short_time_asymptote", short_gap, 1e-2, "t in [1e-10, 1e-6] tau"));
    out.push_back(expect_below("classical_asymptote", classical_gap, 1e-4,
                               "max |var/(2Dt) - 1| over ODE samples with t >= 1e4 tau"));
}

void quantum_bath(Checks& out) {
    const PhysParams p = natural(1.0, 0.0);
    const double t0 = coord::default_bath_start(p);
    const auto traj =
        coord::free_dispersion_evolve(1e4, t0 * 1e6, coord::DispersionLaw::QuantumBath, 1.0, p, t0);
    const double t1 = t0 * 1e5;
    const auto it = std::lower_bound(traj.begin(), traj.end(), t1,
                                     [](const coord::DispersionSample& s, double v) { return s.t < v; });
    const double slope = (traj.back().var_x - it->var_x) / std::log(traj.back().t / it->t);
    out.push_back(expect_within("log_slope_over_final_decade", slope / (2.0 * p.hbar / p.friction), 1.0, 0.05,
                                "slope / (2 hbar / b), T=0, t0 = 1e-3 m/b, 6 decades"));
}

}  // namespace

CriterionReport run_criterion(int number, unsigned seed) {
    switch (number) {
        case 1: return timed(1, "Gibbs stationarity of NL7 and LIN8", 1.0, gibbs_stationarity);
        case 2: return timed(2, "Caldeira-Leggett thermodynamic inconsistency", 30.0, caldeira_leggett_inconsistency);
        case 3:
            return timed(3, "high-temperature reduction LIN8 -> CL2", 1.0,
                         [seed](Checks& out) { high_temperature_reduction(out, seed); });
        case 4: return timed(4, "fluctuation-dissipation and Gibbs-Helmholtz", 0.1, fluctuation_dissipation);
        case 5: return timed(5, "QUANTUM_10 equilibrium dispersion", 120.0, equilibrium_dispersions);
        case 6: return timed(6, "Maxwell-Heisenberg closure", 1.0, maxwell_heisenberg);
        case 7: return timed(7, "T=0 Smoluchowski-Bohm relaxation", 120.0, smoluchowski_zero_temperature);
        case 8: return timed(8, "Bloch/Gibbs equilibrium", 10.0, bloch_equilibrium);
        case 9: return timed(9, "quantum Einstein law", 1.0, quantum_einstein);
        case 10: return timed(10, "quantum-bath logarithmic growth", 1.0, quantum_bath);
        case 11:
            return timed(11, "structural invariant suite", 300.0, [](Checks& out) {
                auto all = invariant_checks();
                out.insert(out.end(), all.begin(), all.end());
            });
        default: throw ArgumentError("criterion number must be in 1.." + std::to_string(kCriterionCount));
    }
}

}  // namespace qrelax::checks
