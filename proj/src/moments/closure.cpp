#include "qrelax/moments/closure.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <sstream>

#include "qrelax/core/errors.hpp"
#include "qrelax/io/csv.hpp"

namespace qrelax::moments {

namespace {

MomentState axpy(const MomentState& a, double h, const MomentState& d) {
    return {a.mean_x + h * d.mean_x, a.mean_p + h * d.mean_p, a.var_x + h * d.var_x, a.var_p + h * d.var_p,
            a.cov_xp + h * d.cov_xp};
}

}  // namespace

double gaussian_energy(const MomentState& s, const PhysParams& params) {
    const double m = params.mass;
    const double w2 = params.omega0 * params.omega0;
    return (s.var_p + s.mean_p * s.mean_p) / (2.0 * m) + 0.5 * m * w2 * (s.var_x + s.mean_x * s.mean_x);
}

MomentState rhs_moment_closure(const MomentState& s, RelaxationModel model, double beta, const PhysParams& params) {
    const double m = params.mass;
    const double k = m * params.omega0 * params.omega0;  // mω0²
    const auto c = relaxation_coefficients(model, beta, params,
                                           model == RelaxationModel::MaxwellHeisenberg
                                               ? std::optional<double>(s.var_x)
                                               : std::nullopt);
    MomentState d;
    d.mean_x = s.mean_p / m;
    d.mean_p = -k * s.mean_x - c.gamma * s.mean_p;
    d.var_x = 2.0 * s.cov_xp / m;
    d.cov_xp = s.var_p / m - k * s.var_x - c.gamma * s.cov_xp;
    d.var_p = -2.0 * k * s.cov_xp - 2.0 * c.gamma * s.var_p + 2.0 * c.diffusion;
    return d;
}

double mh_equilibrium_variance(double beta, const PhysParams& params) {
    if (!(params.omega0 > 0.0)) throw ArgumentError("equilibrium variance needs omega0 > 0");
    const double m = params.mass;
    const double w = params.omega0;
    if (std::isinf(beta)) return params.hbar / (2.0 * m * w);
    const double x = beta * params.hbar * w;
    return (1.0 + std::hypot(1.0, x)) / (2.0 * beta * m * w * w);
}

MomentState equilibrium_moments(RelaxationModel model, double beta, const PhysParams& params) {
    if (!(params.omega0 > 0.0)) throw ArgumentError("equilibrium moments need omega0 > 0");
    const double m = params.mass;
    const double w = params.omega0;
    MomentState s;
    if (model == RelaxationModel::MaxwellHeisenberg) {
        s.var_x = mh_equilibrium_variance(beta, params);
        s.var_p = m * m * w * w * s.var_x;
        return s;
    }
    const auto c = relaxation_coefficients(model, beta, params);
    if (std::isinf(c.gamma)) {
        // T = 0 for QUANTUM_10: both coefficients diverge, ratio ħω0/2 · m.
        s.var_p = m * mean_energy_exact(beta, params);
    } else {
        s.var_p = c.diffusion / c.gamma;
    }
    s.var_x = s.var_p / (m * m * w * w);
    return s;
}

MomentTrajectory evolve_moments(const MomentState& state0, RelaxationModel model, double beta,
                                const PhysParams& params, double t_end, double dt, std::size_t stride) {
    if (!(dt > 0.0)) throw ArgumentError("time step must be positive");
    if (!(t_end >= 0.0)) throw ArgumentError("t_end must be non-negative");
    if (!state0.valid()) throw ArgumentError("initial moments must have positive variances and determinant");
    // γ of the MH model does not depend on the state.
    const double gamma = relaxation_coefficients(model, beta, params,
                                                 model == RelaxationModel::MaxwellHeisenberg
                                                     ? std::optional<double>(state0.var_x)
                                                     : std::nullopt)
                             .gamma;
    const double heuristic = dt * std::max(gamma, params.omega0);
    if (!(heuristic < 0.1)) {
        std::ostringstream os;
        os << "dt*max(gamma, omega0) = " << heuristic << " must be below 0.1";
        throw ArgumentError(os.str());
    }

    const auto steps = static_cast<std::size_t>(std::ceil(t_end / dt - 1e-9));
    const double h = steps ? t_end / static_cast<double>(steps) : 0.0;
    stride = std::max<std::size_t>(stride, 1);

    MomentTrajectory out;
    MomentState s = state0;
    out.samples.push_back({0.0, s, gaussian_energy(s, params)});
    auto f = [&](const MomentState& x) { return rhs_moment_closure(x, model, beta, params); };
    for (std::size_t step = 1; step <= steps; ++step) {
        const MomentState k1 = f(s);
        const MomentState k2 = f(axpy(s, 0.5 * h, k1));
        const MomentState k3 = f(axpy(s, 0.5 * h, k2));
        const MomentState k4 = f(axpy(s, h, k3));
        s.mean_x += h / 6.0 * (k1.mean_x + 2.0 * k2.mean_x + 2.0 * k3.mean_x + k4.mean_x);
        s.mean_p += h / 6.0 * (k1.mean_p + 2.0 * k2.mean_p + 2.0 * k3.mean_p + k4.mean_p);
        s.var_x += h / 6.0 * (k1.var_x + 2.0 * k2.var_x + 2.0 * k3.var_x + k4.var_x);
        s.var_p += h / 6.0 * (k1.var_p + 2.0 * k2.var_p + 2.0 * k3.var_p + k4.var_p);
        s.cov_xp += h / 6.0 * (k1.cov_xp + 2.0 * k2.cov_xp + 2.0 * k3.cov_xp + k4.cov_xp);
        const double t = h * static_cast<double>(step);
        if (!s.valid()) {
            std::ostringstream os;
            os << model_tag(model) << " moment closure lost covariance positivity at step " << step << " (t = " << t
               << "): var_x " << s.var_x << ", var_p " << s.var_p << ", det " << s.determinant();
            throw InstabilityError(os.str());
        }
        if (step % stride == 0 || step == steps) out.samples.push_back({t, s, gaussian_energy(s, params)});
    }
    out.final_state = s;
    return out;
}

void write_moment_csv(std::ostream& out, const MomentTrajectory& trajectory) {
    io::CsvWriter csv(out, {"t", "mean_x", "mean_p", "var_x", "var_p", "cov_xp", "energy"});
    for (const auto& s : trajectory.samples) {
        csv.row({s.t, s.state.mean_x, s.state.mean_p, s.state.var_x, s.state.var_p, s.state.cov_xp, s.energy});
    }
}

}  // namespace qrelax::moments
