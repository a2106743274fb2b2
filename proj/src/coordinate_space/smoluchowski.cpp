#include "qrelax/coordinate_space/smoluchowski.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <ostream>
#include <sstream>

#include <Eigen/Sparse>
#include <Eigen/SparseLU>

#include "qrelax/core/errors.hpp"
#include "qrelax/core/stencil.hpp"
#include "qrelax/io/csv.hpp"

namespace qrelax::coord {

namespace {

// RHS node i reads ρ at i−4 .. i+4: the stress ρ∂_x² ln ρ is a five-point
// stencil and its interface gradient spans four nodes on each of the two
// interfaces of the cell.
constexpr std::size_t kHalfBand = 4;
constexpr std::size_t kColors = 2 * kHalfBand + 1;
constexpr double kNormDrift = 1e-3;
constexpr std::size_t kWallCells = 6;
constexpr double kNewtonTol = 1e-9;
constexpr int kNewtonIterations = 30;

using SparseMatrix = Eigen::SparseMatrix<double>;

double max_value(const std::vector<double>& v) { return *std::max_element(v.begin(), v.end()); }

void require_friction(const PhysParams& params) {
    if (!(params.friction > 0.0)) throw ArgumentError("Smoluchowski-Bohm dynamics need friction b > 0");
}

std::vector<double> sample(const CoordGrid& grid, const std::function<double(double)>& f) {
    std::vector<double> out(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) out[i] = f(grid[i]);
    return out;
}

// The Bohm force enters through the quantum stress identity
//   ρ ∂_x Q = −(ħ²/4m) ∂_x(ρ ∂_x² ln ρ),
// which avoids dividing by √ρ in the tails. Every flux component is then a
// linear interface stencil of nodal data, so the divergence stays fourth
// order. ρ and ln ρ are passed separately so that the stepper, which carries
// ln ρ, never takes a logarithm.
std::vector<double> rhs_values(const CoordGrid& grid, const PhysParams& params, const std::vector<double>& force,
                               const std::vector<double>& rho, const std::vector<double>& log_rho) {
    const std::size_t n = grid.size();
    const double h = grid.spacing();
    const double b = params.friction;
    const double d = params.thermal_energy() / b;
    const double quantum = params.hbar * params.hbar / (4.0 * params.mass * b);

    std::vector<double> drift(n);
    for (std::size_t i = 0; i < n; ++i) drift[i] = rho[i] * force[i] / b;
    std::vector<double> stress = stencil::second_derivative(log_rho, h);
    for (std::size_t i = 0; i < n; ++i) stress[i] *= rho[i];

    std::vector<double> flux(n - 1, 0.0);
    for (std::size_t k = 1; k + 2 < n; ++k) {
        flux[k] = stencil::interface_value(drift.data(), 1, n, k) + d * stencil::interface_gradient(rho.data(), 1, n, k, h);
        if (quantum > 0.0) flux[k] -= quantum * stencil::interface_gradient(stress.data(), 1, n, k, h);
    }
    std::vector<double> out(n, 0.0);
    for (std::size_t i = 1; i + 1 < n; ++i) out[i] = (flux[i] - flux[i - 1]) / h;
    return out;
}

// One implicit step solves base + c R(ρ) − ρ = 0. The unknown is L = ln ρ and
// every row is divided by ρ_i, so Newton works with relative corrections:
// positivity is automatic and tails many decades below the peak stay as
// smooth as the core. Relative accuracy is not meaningful next to the walls,
// where one-sided stencils and the closed boundary act on vanishing density,
// so on the outermost kWallCells cells ln ρ is extrapolated from inside by a
// vanishing third difference (exact for Gaussian tails). Holding it fixed
// instead leaves a kink that the third derivative in the stress turns into
// spurious flux.
struct ImplicitStep {
    const CoordGrid& grid;
    const PhysParams& params;
    const std::vector<double>& force;
    const std::vector<double>& base;
    double c;

    std::vector<double> residual(const std::vector<double>& log_rho) const {
        const std::size_t n = log_rho.size();
        std::vector<double> rho(n);
        for (std::size_t i = 0; i < n; ++i) rho[i] = std::exp(log_rho[i]);
        const std::vector<double> r = rhs_values(grid, params, force, rho, log_rho);
        std::vector<double> out(n);
        for (std::size_t i = 0; i < n; ++i) {
            if (i < kWallCells) {
                out[i] = log_rho[i] - 3.0 * log_rho[i + 1] + 3.0 * log_rho[i + 2] - log_rho[i + 3];
            } else if (i + kWallCells >= n) {
                out[i] = log_rho[i] - 3.0 * log_rho[i - 1] + 3.0 * log_rho[i - 2] - log_rho[i - 3];
            } else {
                out[i] = (base[i] + c * r[i]) / rho[i] - 1.0;
            }
        }
        return out;
    }

    SparseMatrix jacobian(const std::vector<double>& log_rho, const std::vector<double>& g0) const {
        constexpr double kShift = 1e-7;
        const std::size_t n = log_rho.size();
        std::vector<Eigen::Triplet<double>> entries;
        entries.reserve(n * kColors);
        for (std::size_t colour = 0; colour < kColors; ++colour) {
            std::vector<double> shifted = log_rho;
            for (std::size_t j = colour; j < n; j += kColors) shifted[j] += kShift;
            const std::vector<double> g1 = residual(shifted);
            for (std::size_t j = colour; j < n; j += kColors) {
                const std::size_t lo = j >= kHalfBand ? j - kHalfBand : 0;
                const std::size_t hi = std::min(n - 1, j + kHalfBand);
                for (std::size_t i = lo; i <= hi; ++i) {
                    entries.emplace_back(static_cast<int>(i), static_cast<int>(j), (g1[i] - g0[i]) / kShift);
                }
            }
        }
        SparseMatrix m(static_cast<int>(n), static_cast<int>(n));
        m.setFromTriplets(entries.begin(), entries.end());
        m.makeCompressed();
        return m;
    }
};

}  // namespace

std::vector<double> bohm_potential(const CoordDensity& rho) {
    const std::vector<double>& v = rho.values;
    const std::size_t n = v.size();
    const double peak = max_value(v);
    if (!(peak > 0.0)) throw DegenerateStateError("Bohm potential of a density with no positive cells");
    const double floor = kBohmFloor * peak;

    std::vector<double> root(n);
    std::vector<bool> live(n);
    std::size_t count = 0;
    for (std::size_t i = 0; i < n; ++i) {
        root[i] = std::sqrt(std::max(v[i], 0.0));
        live[i] = v[i] >= floor;
        count += live[i] ? 1 : 0;
    }
    if (count < 5) {
        std::ostringstream os;
        os << "only " << count << " cells above the Bohm density floor";
        throw DegenerateStateError(os.str());
    }

    const double c = -rho.params.hbar * rho.params.hbar / (2.0 * rho.params.mass);
    const double h = rho.grid.spacing();
    std::vector<double> q(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        if (live[i]) q[i] = c * stencil::second_derivative(root, i, h) / root[i];
    }

    // Nearest-value extension into masked cells; ties go left.
    std::vector<std::ptrdiff_t> left(n, -1), right(n, -1);
    std::ptrdiff_t last = -1;
    for (std::size_t i = 0; i < n; ++i) {
        if (live[i]) last = static_cast<std::ptrdiff_t>(i);
        left[i] = last;
    }
    last = -1;
    for (std::size_t i = n; i-- > 0;) {
        if (live[i]) last = static_cast<std::ptrdiff_t>(i);
        right[i] = last;
    }
    const std::vector<double> live_q = q;
    for (std::size_t i = 0; i < n; ++i) {
        if (live[i]) continue;
        const auto ii = static_cast<std::ptrdiff_t>(i);
        const std::ptrdiff_t l = left[i];
        const std::ptrdiff_t r = right[i];
        const std::ptrdiff_t pick = r < 0 || (l >= 0 && ii - l <= r - ii) ? l : r;
        q[i] = live_q[static_cast<std::size_t>(pick)];
    }
    return q;
}

std::vector<double> rhs_smoluchowski_bohm(const CoordDensity& rho, const Potential& potential) {
    require_friction(rho.params);
    const double floor = kBohmFloor * max_value(rho.values);
    std::vector<double> positive(rho.values.size()), log_rho(rho.values.size());
    for (std::size_t i = 0; i < rho.values.size(); ++i) {
        positive[i] = std::max(rho.values[i], 0.0);
        log_rho[i] = std::log(std::max(rho.values[i], floor));
    }
    return rhs_values(rho.grid, rho.params, sample(rho.grid, potential.d1), positive, log_rho);
}

double smoluchowski_free_energy(const CoordDensity& rho, const Potential& potential) {
    const std::vector<double> q = bohm_potential(rho);
    const double kt = rho.params.thermal_energy();
    std::vector<double> integrand(rho.values.size());
    for (std::size_t i = 0; i < integrand.size(); ++i) {
        const double r = rho.values[i];
        integrand[i] = r * (potential.value(rho.grid[i]) + q[i]);
        if (kt > 0.0 && r > 0.0) integrand[i] += kt * r * std::log(r);
    }
    return stencil::trapezoid(integrand, rho.grid.spacing());
}

CoordTrajectory evolve_smoluchowski_bohm(const CoordDensity& rho0, const Potential& potential, double t_end,
                                         double dt, std::size_t stride) {
    require_friction(rho0.params);
    if (!(dt > 0.0)) throw ArgumentError("time step must be positive");
    if (!(t_end >= 0.0)) throw ArgumentError("t_end must be non-negative");
    const CoordGrid& grid = rho0.grid;
    const PhysParams& params = rho0.params;
    const std::vector<double> force = sample(grid, potential.d1);
    const std::size_t n = grid.size();
    const double norm0 = density_norm(rho0);
    const double peak0 = max_value(rho0.values);
    if (!(peak0 > 0.0)) throw ArgumentError("initial density must be positive somewhere");

    auto diagnose = [&](double t, const CoordDensity& rho) {
        const CoordMoments m = density_moments(rho);
        return CoordSample{t, m.mean, m.variance, density_norm(rho), smoluchowski_free_energy(rho, potential)};
    };

    const auto steps = static_cast<std::size_t>(std::ceil(t_end / dt - 1e-9));
    const double h = steps ? t_end / static_cast<double>(steps) : 0.0;
    stride = std::max<std::size_t>(stride, 1);

    CoordTrajectory out{{diagnose(0.0, rho0)}, rho0};
    std::vector<double> log_rho(n), current(n);
    for (std::size_t i = 0; i < n; ++i) {
        log_rho[i] = std::log(std::max(rho0.values[i], 1e-280 * peak0));
        current[i] = std::exp(log_rho[i]);
    }
    std::vector<double> previous = current;
    Eigen::SparseLU<SparseMatrix> solver;
    bool analysed = false;
    Eigen::VectorXd rhs(static_cast<Eigen::Index>(n));

    for (std::size_t step = 1; step <= steps; ++step) {
        // BDF2: ρ − (4/3)ρⁿ + (1/3)ρⁿ⁻¹ − (2/3)h R(ρ) = 0; backward Euler first.
        const bool first = step == 1;
        std::vector<double> base(n);
        for (std::size_t i = 0; i < n; ++i) base[i] = first ? current[i] : (4.0 * current[i] - previous[i]) / 3.0;
        const ImplicitStep problem{grid, params, force, base, first ? h : 2.0 * h / 3.0};
        const double floor = kBohmFloor * max_value(current);

        // Newton with the Jacobian reused while the corrections contract fast.
        std::vector<double> guess = log_rho;
        bool converged = false;
        bool fresh = false;
        double last = std::numeric_limits<double>::infinity();
        for (int it = 0; it < kNewtonIterations && !converged; ++it) {
            const std::vector<double> g = problem.residual(guess);
            if (!fresh) {
                const SparseMatrix jac = problem.jacobian(guess, g);
                if (!analysed) {
                    solver.analyzePattern(jac);
                    analysed = true;
                }
                solver.factorize(jac);
                if (solver.info() != Eigen::Success) {
                    throw InstabilityError("Smoluchowski-Bohm Newton matrix is singular");
                }
                fresh = true;
            }
            for (std::size_t i = 0; i < n; ++i) rhs[static_cast<Eigen::Index>(i)] = -g[i];
            const Eigen::VectorXd delta = solver.solve(rhs);
            double largest = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                guess[i] += delta[static_cast<Eigen::Index>(i)];
                // Relative accuracy is asked for only above the Bohm floor;
                // below it the test is on the absolute change. Extrapolated
                // wall cells only echo the interior and are not tested.
                if (i >= kWallCells && i + kWallCells < n) {
                    const double weight = std::min(1.0, current[i] / floor);
                    largest = std::max(largest, weight * std::abs(delta[static_cast<Eigen::Index>(i)]));
                }
            }
            if (!std::isfinite(largest)) break;
            // A correction that no longer contracts near the tolerance is the
            // round-off floor of the stiff residual, not a failure.
            converged = largest <= kNewtonTol || (largest <= 10.0 * kNewtonTol && largest > 0.5 * last);
            if (largest > 0.25 * last) fresh = false;
            last = largest;
        }
        const double t = h * static_cast<double>(step);
        if (!converged) {
            std::ostringstream os;
            os << "Smoluchowski-Bohm Newton iteration failed at step " << step << " (t = " << t << ")";
            throw InstabilityError(os.str());
        }
        log_rho = std::move(guess);
        previous = std::move(current);
        current.assign(n, 0.0);
        for (std::size_t i = 0; i < n; ++i) current[i] = std::exp(log_rho[i]);

        CoordDensity now(grid, params, current);
        const double drift = std::abs(density_norm(now) - norm0) / std::abs(norm0);
        if (!(drift <= kNormDrift)) {
            std::ostringstream os;
            os << "Smoluchowski-Bohm evolution unstable at step " << step << " (t = " << t << "): norm drift "
               << drift;
            throw InstabilityError(os.str());
        }
        if (step % stride == 0 || step == steps) out.samples.push_back(diagnose(t, now));
        if (step == steps) out.final_density = std::move(now);
    }
    return out;
}

double dispersion_t0_nonlinear(double t, const PhysParams& params) {
    if (!(t >= 0.0)) throw ArgumentError("t must be non-negative");
    if (!(params.omega0 > 0.0)) throw ArgumentError("dispersion law needs omega0 > 0");
    require_friction(params);
    const double rate = 4.0 * params.mass * params.omega0 * params.omega0 / params.friction;
    return params.zero_point_variance() * std::sqrt(-std::expm1(-rate * t));
}

double dispersion_t0_classical(double t, const PhysParams& params) {
    if (!(t >= 0.0)) throw ArgumentError("t must be non-negative");
    if (!(params.omega0 > 0.0)) throw ArgumentError("dispersion law needs omega0 > 0");
    require_friction(params);
    const double rate = 2.0 * params.mass * params.omega0 * params.omega0 / params.friction;
    return params.zero_point_variance() * -std::expm1(-rate * t);
}

void write_coord_csv(std::ostream& out, const CoordTrajectory& trajectory) {
    io::CsvWriter csv(out, {"t", "mean_x", "var_x", "norm", "free_energy"});
    for (const auto& s : trajectory.samples) csv.row({s.t, s.mean_x, s.var_x, s.norm, s.free_energy});
}

}  // namespace qrelax::coord
