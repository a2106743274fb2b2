#include <algorithm>
#include <cmath>
#include <string>

#include "qrelax/checks/checks.hpp"
#include "qrelax/coordinate_space/density.hpp"
#include "qrelax/coordinate_space/smoluchowski.hpp"
#include "qrelax/moments/closure.hpp"
#include "qrelax/operator_space/master_equation.hpp"
#include "qrelax/operator_space/operators.hpp"
#include "qrelax/phase_space/kernel.hpp"
#include "qrelax/phase_space/rhs.hpp"

namespace qrelax::checks {

namespace {

using moments::RelaxationModel;

constexpr RelaxationModel kModels[] = {RelaxationModel::Classical, RelaxationModel::Effective,
                                       RelaxationModel::Quantum, RelaxationModel::MaxwellHeisenberg};

PhysParams natural(double friction, double temperature = 1.0) {
    PhysParams p;
    p.friction = friction;
    p.temperature = temperature;
    return p;
}

PhaseGrid square_grid(double half_width, std::size_t n) {
    return {CoordGrid(-half_width, half_width, n), CoordGrid(-half_width, half_width, n)};
}

double max_abs(const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

double interior_max(const PhaseGrid& g, const std::vector<double>& v, std::size_t margin) {
    double m = 0.0;
    for (std::size_t i = margin; i + margin < g.x.size(); ++i) {
        for (std::size_t j = margin; j + margin < g.p.size(); ++j) m = std::max(m, std::abs(v[g.index(i, j)]));
    }
    return m;
}

phase::WignerField gibbs_density(const PhaseGrid& grid, const PhysParams& params, const Potential& u) {
    phase::WignerField f(grid, params);
    f.classical = true;
    const double beta = 1.0 / params.thermal_energy();
    for (std::size_t i = 0; i < grid.x.size(); ++i) {
        for (std::size_t j = 0; j < grid.p.size(); ++j) {
            const double p = grid.p[j];
            f.at(i, j) = std::exp(-beta * (p * p / (2.0 * params.mass) + u.value(grid.x[i])));
        }
    }
    const double norm = phase::field_norm(f);
    for (double& v : f.values) v /= norm;
    return f;
}

// Smooth, strictly positive, far-from-equilibrium density.
phase::WignerField wavy_density(const PhaseGrid& grid, const PhysParams& params) {
    phase::WignerField f(grid, params);
    f.classical = true;
    for (std::size_t i = 0; i < grid.x.size(); ++i) {
        const double x = grid.x[i];
        for (std::size_t j = 0; j < grid.p.size(); ++j) {
            const double p = grid.p[j];
            f.at(i, j) = std::exp(-0.4 * (x - 0.3) * (x - 0.3) - 0.6 * p * p) *
                         (1.0 + 0.3 * std::sin(1.3 * x) * std::cos(0.9 * p + 0.2));
        }
    }
    return f;
}

void operator_kernels(std::vector<CheckResult>& out) {
    using namespace opspace;
    const auto ops = build_oscillator_operators(20, natural(0.3));
    const MasterEquation kernels[] = {MasterEquation(ops, Kernel::CaldeiraLeggett, 1.0),
                                      MasterEquation(ops, Kernel::Nonlinear, 1.0),
                                      MasterEquation(ops, Kernel::Linearized, 1.0)};
    for (const auto& eq : kernels) {
        double trace = 0.0;
        double hermitian = 0.0;
        for (unsigned seed = 1; seed <= 5; ++seed) {
            const ComplexMatrix r = eq.rhs(random_density_matrix(20, seed).matrix());
            trace = std::max(trace, std::abs(r.trace()));
            hermitian = std::max(hermitian, (r - r.adjoint()).norm());
        }
        const std::string tag(kernel_name(eq.kernel()));
        out.push_back(expect_below("traceless_" + tag, trace, 1e-12, "max |tr RHS|, 5 random states, N=20"));
        out.push_back(expect_below("hermitian_" + tag, hermitian, 1e-10, "max ||RHS - RHS^+||_F"));
    }

    // b = 0: every kernel is the von Neumann equation.
    const auto free_ops = build_oscillator_operators(20, natural(0.0));
    const ComplexMatrix rho = random_density_matrix(20, 7).matrix();
    const ComplexMatrix unitary =
        Complex(0.0, -1.0 / free_ops.params.hbar) * commutator(free_ops.hamiltonian, rho);
    for (Kernel k : {Kernel::CaldeiraLeggett, Kernel::Nonlinear, Kernel::Linearized}) {
        const MasterEquation eq(free_ops, k, 1.0);
        out.push_back(expect_below("unitary_reduction_" + std::string(kernel_name(k)),
                                   (eq.rhs(rho) - unitary).norm() / unitary.norm(), 1e-12,
                                   "b=0 relative distance to -i[H,rho]/hbar"));
    }
}

void phase_space_conservation(std::vector<CheckResult>& out) {
    using namespace phase;
    const PhaseGrid g{CoordGrid(-6.0, 5.0, 73), CoordGrid(-7.0, 7.5, 91)};
    const PhysParams p = natural(0.6);
    const WignerField w = wavy_density(g, p);
    auto record = [&](const std::string& name, const WignerField& r) {
        out.push_back(expect_below("norm_conservation_" + name, std::abs(integrate(g, r.values)) / max_abs(r.values),
                                   1e-10, "|sum RHS dx dp| / max|RHS|"));
    };
    const Potential quartic = Potential::anharmonic(1.0, 1.0, 0.3);
    record("klein_kramers", rhs_klein_kramers(w, quartic));
    for (auto model : kModels) {
        record(std::string(moments::model_tag(model)), rhs_wigner_ho(w, model, 1.0, 0.8));
    }
    record("semiclassical", rhs_semiclassical(w, quartic, 1.0, field_moments(w)));

    // The parallel kernel against the serial reference on a generic term set.
    FokkerPlanckTerms terms = semiclassical_terms(g, p, quartic, 1.0, field_moments(w));
    std::vector<double> fast(g.size()), slow(g.size());
    apply_fokker_planck(g, terms, w.values, fast);
    apply_fokker_planck_reference(g, terms, w.values, slow);
    double gap = 0.0;
    for (std::size_t k = 0; k < fast.size(); ++k) gap = std::max(gap, std::abs(fast[k] - slow[k]));
    out.push_back(expect_below("parallel_matches_reference", gap / max_abs(slow), 1e-12,
                               "max |parallel - serial| / max|serial|"));
}

void coordinate_conservation(std::vector<CheckResult>& out) {
    using namespace coord;
    const CoordGrid g(-6.0, 6.0, 301);
    const PhysParams p = natural(0.5, 0.3);
    CoordDensity rho = gaussian_density(0.7, 0.4, g, p);
    for (std::size_t i = 0; i < g.size(); ++i) rho.values[i] *= 1.0 + 0.3 * std::sin(2.0 * g[i]);
    const auto r = rhs_smoluchowski_bohm(rho, Potential::anharmonic(1.0, 1.0, 0.2));
    double sum = 0.0;
    for (double v : r) sum += v;
    out.push_back(expect_below("norm_conservation_smoluchowski_bohm", std::abs(sum * g.spacing()) / max_abs(r), 1e-10,
                               "|sum RHS dx| / max|RHS|"));
}

void frictionless_reductions(std::vector<CheckResult>& out) {
    using namespace phase;
    const PhaseGrid g = square_grid(6.0, 61);
    const PhysParams p = natural(0.0);
    const WignerField w = gaussian_wigner({1.0, 0.5, 0.6, 0.9, 0.1}, g, p);
    FokkerPlanckTerms liouville;
    liouville.force = klein_kramers_terms(g, p, Potential::harmonic(1.0, 1.0), 1.0).force;
    const WignerField expected = apply(w, liouville);
    const double scale = max_abs(expected.values);
    auto gap = [&](const WignerField& r) {
        double m = 0.0;
        for (std::size_t k = 0; k < r.values.size(); ++k) m = std::max(m, std::abs(r.values[k] - expected.values[k]));
        return m / scale;
    };
    out.push_back(expect_below("liouville_reduction_klein_kramers", gap(rhs_klein_kramers(w, Potential::harmonic(1.0, 1.0))),
                               1e-14, "b=0 relative distance to Liouville flow"));
    for (auto model : kModels) {
        out.push_back(expect_below("liouville_reduction_" + std::string(moments::model_tag(model)),
                                   gap(rhs_wigner_ho(w, model, 1.0, 0.6)), 1e-14,
                                   "b=0 relative distance to Liouville flow"));
    }

    // b = 0 moment flow is symplectic: the covariance determinant is constant.
    const moments::MomentState s{0.4, -0.3, 0.7, 1.6, 0.2};
    for (auto model : kModels) {
        const auto d = moments::rhs_moment_closure(s, model, 1.0, p);
        const double rate = d.var_x * s.var_p + s.var_x * d.var_p - 2.0 * s.cov_xp * d.cov_xp;
        out.push_back(expect_below("determinant_conserved_" + std::string(moments::model_tag(model)),
                                   std::abs(rate), 1e-12, "b=0 |d det(Sigma)/dt|"));
    }
}

void onsager_identity(std::vector<CheckResult>& out) {
    using namespace phase;
    // p-derivatives only: a coarse x-axis and a fine p-axis isolate the identity.
    const PhaseGrid g{CoordGrid(-6.0, 6.0, 9), CoordGrid(-8.0, 8.0, 1601)};
    const PhysParams p = natural(0.7);
    const WignerField f = gaussian_wigner({0.0, 0.3, 1.0, 1.2, 0.2}, g, p);
    const WignerField r = check_onsager_form(f, Potential::quartic(1.0));
    const double scale = p.friction * p.thermal_energy() * max_abs(f.values) / 1.2;
    out.push_back(expect_below("onsager_identity_gaussian", interior_max(g, r.values, 0) / scale, 1e-8,
                               "|entropy form - Fokker-Planck form| / (b kT max f / var_p)"));

    double previous = 0.0;
    for (std::size_t n : {65u, 129u}) {
        const PhaseGrid fine = square_grid(8.0, n);
        const WignerField wavy = wavy_density(fine, p);
        const double residual = max_abs(check_onsager_form(wavy, Potential::harmonic(1.0, 1.0)).values);
        if (previous > 0.0) {
            out.push_back(expect_above("onsager_identity_order", std::log2(previous / residual), 3.5,
                                       "log2 residual ratio under grid halving"));
        }
        previous = residual;
    }
}

void convergence_orders(std::vector<CheckResult>& out) {
    auto order = [](double coarse, double fine) { return std::log2(coarse / fine); };
    {
        const PhysParams p = natural(0.8);
        const Potential u = Potential::anharmonic(1.0, 1.0, 0.3);
        auto residual = [&](std::size_t n) {
            const auto f = gibbs_density(square_grid(8.0, n), p, u);
            return max_abs(phase::rhs_klein_kramers(f, u).values) / max_abs(f.values);
        };
        out.push_back(expect_above("convergence_order_klein_kramers_gibbs", order(residual(97), residual(193)), 3.5,
                                   "log2 stationarity-residual ratio, 97^2 -> 193^2"));
    }
    {
        const PhysParams p = natural(0.5);
        auto residual = [&](std::size_t n) {
            const auto w = phase::equilibrium_wigner_ho(1.0, p, square_grid(8.0, n));
            return max_abs(phase::rhs_wigner_ho(w, RelaxationModel::Quantum, 1.0).values) / max_abs(w.values);
        };
        out.push_back(expect_above("convergence_order_quantum_wigner", order(residual(97), residual(193)), 3.5,
                                   "log2 stationarity-residual ratio, 97^2 -> 193^2"));
    }
    {
        PhysParams p = natural(0.7, 0.8);
        p.hbar = 0.0;
        const Potential u = Potential::anharmonic(1.0, 1.0, 0.5);
        auto residual = [&](std::size_t n) {
            coord::CoordDensity rho(CoordGrid(-8.0, 8.0, n), p);
            for (std::size_t i = 0; i < n; ++i) rho.values[i] = std::exp(-u.value(rho.grid[i]) / p.thermal_energy());
            coord::normalize(rho);
            return max_abs(coord::rhs_smoluchowski_bohm(rho, u)) / max_abs(rho.values);
        };
        out.push_back(expect_above("convergence_order_smoluchowski_classical", order(residual(401), residual(801)), 3.5,
                                   "log2 stationarity-residual ratio, 401 -> 801 points"));
    }
    {
        const PhysParams p = natural(1.0, 0.0);
        auto residual = [&](std::size_t n) {
            const CoordGrid g(-7.0, 7.0, n);
            coord::CoordDensity rho = coord::gaussian_density(0.0, p.zero_point_variance(), g, p);
            const auto r = coord::rhs_smoluchowski_bohm(rho, Potential::harmonic(1.0, 1.0));
            return max_abs(r) / max_abs(rho.values);
        };
        out.push_back(expect_above("convergence_order_smoluchowski_ground_state", order(residual(201), residual(401)),
                                   3.5, "log2 stationarity-residual ratio, 201 -> 401 points"));
    }
}

}  // namespace

std::vector<CheckResult> invariant_checks() {
    std::vector<CheckResult> out;
    operator_kernels(out);
    phase_space_conservation(out);
    coordinate_conservation(out);
    frictionless_reductions(out);
    onsager_identity(out);
    convergence_orders(out);
    return out;
}

}  // namespace qrelax::checks
