#include "qrelax/coordinate_space/equilibrium.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <sstream>

#include "qrelax/coordinate_space/smoluchowski.hpp"
#include "qrelax/core/errors.hpp"
#include "qrelax/core/oscillator.hpp"
#include "qrelax/core/stencil.hpp"
#include "qrelax/io/csv.hpp"

namespace qrelax::coord {

namespace {

constexpr double kRk4RealBound = 2.785;
constexpr double kTailWarning = 1e-8;

std::vector<double> sample_potential(const CoordGrid& grid, const Potential& potential) {
    std::vector<double> u(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) u[i] = potential.value(grid[i]);
    return u;
}

// out = −(1/2) Ĥ ψ.
void bloch_rhs(const std::vector<double>& psi, const std::vector<double>& u, double kinetic, double h,
               std::vector<double>& out) {
    const std::size_t n = psi.size();
    for (std::size_t i = 0; i < n; ++i) {
        double hpsi = u[i] * psi[i];
        if (i > 0 && i + 1 < n) hpsi -= kinetic * stencil::second_derivative(psi, i, h);
        out[i] = -0.5 * hpsi;
    }
}

struct BlochStepper {
    std::vector<double> u;
    double kinetic;
    double h;
    std::size_t steps;
    double db;
    std::vector<double> k1, k2, k3, k4, stage;

    BlochStepper(const CoordGrid& grid, const PhysParams& params, const Potential& potential, double beta_end,
                 double dbeta)
        : u(sample_potential(grid, potential)),
          kinetic(params.hbar * params.hbar / (2.0 * params.mass)),
          h(grid.spacing()),
          steps(static_cast<std::size_t>(std::ceil(beta_end / dbeta - 1e-9))),
          db(steps ? beta_end / static_cast<double>(steps) : 0.0),
          k1(grid.size()),
          k2(grid.size()),
          k3(grid.size()),
          k4(grid.size()),
          stage(grid.size()) {}

    void run(std::vector<double>& psi) {
        const std::size_t n = psi.size();
        for (std::size_t s = 0; s < steps; ++s) {
            bloch_rhs(psi, u, kinetic, h, k1);
            for (std::size_t i = 0; i < n; ++i) stage[i] = psi[i] + 0.5 * db * k1[i];
            bloch_rhs(stage, u, kinetic, h, k2);
            for (std::size_t i = 0; i < n; ++i) stage[i] = psi[i] + 0.5 * db * k2[i];
            bloch_rhs(stage, u, kinetic, h, k3);
            for (std::size_t i = 0; i < n; ++i) stage[i] = psi[i] + db * k3[i];
            bloch_rhs(stage, u, kinetic, h, k4);
            for (std::size_t i = 0; i < n; ++i) psi[i] += db / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        }
    }
};

void check_bloch_inputs(double beta_end, double dbeta, const CoordGrid& grid, const PhysParams& params,
                        const Potential& potential) {
    if (!(beta_end >= 0.0) || std::isinf(beta_end)) throw ArgumentError("beta_end must be finite and non-negative");
    if (!(dbeta > 0.0)) throw ArgumentError("dbeta must be positive");
    const double limit = bloch_stability_limit(grid, params, potential);
    if (!(dbeta <= limit)) {
        std::ostringstream os;
        os << "dbeta = " << dbeta << " exceeds the Bloch RK4 stability bound " << limit;
        throw ConfigurationError(os.str());
    }
}

}  // namespace

double bloch_stability_limit(const CoordGrid& grid, const PhysParams& params, const Potential& potential) {
    double u_max = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) u_max = std::max(u_max, std::abs(potential.value(grid[i])));
    const double h = grid.spacing();
    const double radius = params.hbar * params.hbar / (2.0 * params.mass) * (16.0 / 3.0) / (h * h) + u_max;
    return kRk4RealBound / (0.5 * radius);
}

std::vector<double> bloch_propagate(const std::vector<double>& psi0, double beta_end, const Potential& potential,
                                    double dbeta, const CoordGrid& grid, const PhysParams& params) {
    if (psi0.size() != grid.size()) throw ArgumentError("psi0 does not match grid");
    check_bloch_inputs(beta_end, dbeta, grid, params, potential);
    BlochStepper stepper(grid, params, potential, beta_end, dbeta);
    std::vector<double> psi = psi0;
    stepper.run(psi);
    return psi;
}

CoordDensity bloch_equilibrium_density(double beta, const Potential& potential, double dbeta, const CoordGrid& grid,
                                       const PhysParams& params) {
    const std::vector<double> psi = bloch_propagate(std::vector<double>(grid.size(), 1.0), beta, potential, dbeta,
                                                    grid, params);
    CoordDensity rho(grid, params);
    for (std::size_t i = 0; i < psi.size(); ++i) rho.values[i] = psi[i] * psi[i];
    normalize(rho);
    return rho;
}

double bloch_partition_function(double beta, const Potential& potential, double dbeta, const CoordGrid& grid,
                                const PhysParams& params) {
    check_bloch_inputs(beta, dbeta, grid, params, potential);
    const auto n = static_cast<std::ptrdiff_t>(grid.size());
    double trace = 0.0;
#pragma omp parallel reduction(+ : trace)
    {
        BlochStepper stepper(grid, params, potential, beta, dbeta);
        std::vector<double> column(grid.size());
#pragma omp for schedule(dynamic, 8)
        for (std::ptrdiff_t j = 0; j < n; ++j) {
            std::fill(column.begin(), column.end(), 0.0);
            column[static_cast<std::size_t>(j)] = 1.0;
            stepper.run(column);
            for (double v : column) trace += v * v;
        }
    }
    return trace;
}

GibbsDensity gibbs_coordinate_density(double beta, const PhysParams& params, const CoordGrid& grid,
                                      std::size_t n_modes) {
    if (!(beta > 0.0)) throw ArgumentError("beta must be positive");
    if (n_modes < 1) throw ArgumentError("need at least one mode");
    if (!(params.omega0 > 0.0)) throw ArgumentError("Gibbs coordinate density needs omega0 > 0");
    const double quantum = params.hbar * params.omega0;
    CoordDensity rho(grid, params);
    const std::size_t used = std::isinf(beta) ? 1 : n_modes;
    for (std::size_t n = 0; n < used; ++n) {
        // Weights relative to the ground level keep large β finite.
        const double w = n == 0 ? 1.0 : std::exp(-beta * quantum * static_cast<double>(n));
        const Eigenpair level = oscillator_eigenpair(n, params, grid);
        for (std::size_t i = 0; i < grid.size(); ++i) rho.values[i] += w * level.values[i] * level.values[i];
    }
    normalize(rho);  // also divides out the truncated Z
    // Σ_{n ≥ N} e^{−nβħω0} / Σ_{n ≥ 0} e^{−nβħω0} = e^{−Nβħω0}.
    const double tail = std::isinf(beta) ? 0.0 : std::exp(-beta * quantum * static_cast<double>(n_modes));
    return {std::move(rho), tail, tail > kTailWarning};
}

void write_bloch_csv(std::ostream& out, const CoordDensity& rho_eq, const Potential& potential) {
    const std::vector<double> q = bohm_potential(rho_eq);
    io::CsvWriter csv(out, {"x", "rho_eq", "Q", "U"});
    for (std::size_t i = 0; i < rho_eq.grid.size(); ++i) {
        const double x = rho_eq.grid[i];
        csv.row({x, rho_eq.values[i], q[i], potential.value(x)});
    }
}

}  // namespace qrelax::coord
