#include "qrelax/phase_space/evolve.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <sstream>

#include "qrelax/core/errors.hpp"
#include "qrelax/io/csv.hpp"

namespace qrelax::phase {

namespace {

constexpr double kCourant = 0.4;
constexpr double kNormDrift = 1e-3;
constexpr double kClassicalNegativity = -1e-10;

double max_abs(const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

Potential energy_potential(const PhaseDynamics& d, const PhysParams& params) {
    if (d.kind == PhaseDynamics::Kind::Harmonic) return Potential::harmonic(params.mass, params.omega0);
    return d.potential;
}

void axpy(std::vector<double>& out, const std::vector<double>& a, double h, const std::vector<double>& b) {
    for (std::size_t k = 0; k < out.size(); ++k) out[k] = a[k] + h * b[k];
}

}  // namespace

PhaseDynamics PhaseDynamics::klein_kramers(Potential potential, double beta) {
    PhaseDynamics d;
    d.kind = Kind::KleinKramers;
    d.potential = std::move(potential);
    d.beta = beta;
    return d;
}

PhaseDynamics PhaseDynamics::harmonic(RelaxationModel model, double beta) {
    PhaseDynamics d;
    d.kind = Kind::Harmonic;
    d.model = model;
    d.beta = beta;
    return d;
}

PhaseDynamics PhaseDynamics::semiclassical(Potential potential, double beta) {
    PhaseDynamics d;
    d.kind = Kind::Semiclassical;
    d.potential = std::move(potential);
    d.beta = beta;
    return d;
}

std::string PhaseDynamics::label() const {
    switch (kind) {
        case Kind::KleinKramers: return "klein-kramers(" + potential.name + ")";
        case Kind::Harmonic: return std::string(moments::model_tag(model));
        case Kind::Semiclassical: return "semiclassical(" + potential.name + ")";
    }
    return "?";
}

FokkerPlanckTerms dynamics_terms(const PhaseDynamics& d, const WignerField& w) {
    switch (d.kind) {
        case PhaseDynamics::Kind::KleinKramers: return klein_kramers_terms(w.grid, w.params, d.potential, d.beta);
        case PhaseDynamics::Kind::Harmonic:
            if (d.model == RelaxationModel::MaxwellHeisenberg) {
                return harmonic_terms(w.grid, w.params, d.model, d.beta, field_moments(w).var_x);
            }
            return harmonic_terms(w.grid, w.params, d.model, d.beta);
        case PhaseDynamics::Kind::Semiclassical:
            return semiclassical_terms(w.grid, w.params, d.potential, d.beta, field_moments(w));
    }
    throw InternalError("unknown phase-space dynamics");
}

double cfl_limit(const PhaseDynamics& d, const WignerField& w0) {
    const PhaseGrid& g = w0.grid;
    const double dx = g.x.spacing();
    const double dp = g.p.spacing();
    const double p_max = std::max(std::abs(g.p.lo()), std::abs(g.p.hi()));
    FokkerPlanckTerms t = dynamics_terms(d, w0);

    // State-dependent diffusion can grow as the field contracts: bound it by
    // the equilibrium / uncertainty-limited value as well as the start value.
    double diffusion = t.diffusion;
    const double kt = std::isinf(d.beta) ? 0.0 : 1.0 / d.beta;
    const PhysParams& pp = w0.params;
    if (d.kind == PhaseDynamics::Kind::Harmonic && d.model == RelaxationModel::MaxwellHeisenberg) {
        const double u = std::min(field_moments(w0).var_x, moments::mh_equilibrium_variance(d.beta, pp));
        diffusion = std::max(diffusion, moments::relaxation_coefficients(d.model, d.beta, pp, u).diffusion);
    } else if (d.kind == PhaseDynamics::Kind::Semiclassical && pp.hbar > 0.0) {
        // det Σ ≥ ħ²/4 for any Wigner function, so the entropy term is at most b k_BT.
        diffusion = std::max(diffusion, 2.0 * pp.friction * kt);
    }

    double limit = std::numeric_limits<double>::infinity();
    if (p_max > 0.0) limit = std::min(limit, dx * t.mass / p_max);
    const double force = max_abs(t.force);
    if (force > 0.0) limit = std::min(limit, dp / force);
    if (t.gamma > 0.0 && p_max > 0.0) limit = std::min(limit, dp / (t.gamma * p_max));
    if (diffusion > 0.0) limit = std::min(limit, dp * dp / (2.0 * diffusion));
    const double cubic = max_abs(t.cubic);
    if (cubic > 0.0) limit = std::min(limit, dp * dp * dp / cubic);
    return kCourant * limit;
}

WignerTrajectory evolve_wigner(const WignerField& w0, const PhaseDynamics& dynamics, double t_end, double dt,
                               std::size_t stride) {
    if (!(dt > 0.0)) throw ArgumentError("time step must be positive");
    if (!(t_end >= 0.0)) throw ArgumentError("t_end must be non-negative");
    const double limit = cfl_limit(dynamics, w0);
    if (!(dt <= limit)) {
        std::ostringstream os;
        os << dynamics.label() << ": dt = " << dt << " violates the explicit stability bound " << limit;
        throw ConfigurationError(os.str());
    }
    const bool classical = dynamics.kind == PhaseDynamics::Kind::KleinKramers || w0.classical;
    const Potential potential = energy_potential(dynamics, w0.params);
    const double norm0 = field_norm(w0);

    auto diagnose = [&](double t, const WignerField& w) {
        const auto entropy = shannon_wigner_entropy(w);
        return WignerSample{t, field_moments(w), field_norm(w), field_energy(w, potential), entropy.value,
                            entropy.negative_fraction};
    };

    const auto steps = static_cast<std::size_t>(std::ceil(t_end / dt - 1e-9));
    const double h = steps ? t_end / static_cast<double>(steps) : 0.0;
    stride = std::max<std::size_t>(stride, 1);

    WignerTrajectory out{{}, w0};
    out.samples.push_back(diagnose(0.0, w0));

    WignerField w = w0;
    WignerField stage = w0;
    std::vector<double> k1(w.values.size()), k2(k1.size()), k3(k1.size()), k4(k1.size());
    auto eval = [&](const WignerField& field, std::vector<double>& k) {
        apply_fokker_planck(field.grid, dynamics_terms(dynamics, field), field.values, k);
    };

    for (std::size_t step = 1; step <= steps; ++step) {
        eval(w, k1);
        axpy(stage.values, w.values, 0.5 * h, k1);
        eval(stage, k2);
        axpy(stage.values, w.values, 0.5 * h, k2);
        eval(stage, k3);
        axpy(stage.values, w.values, h, k3);
        eval(stage, k4);
        for (std::size_t k = 0; k < w.values.size(); ++k) {
            w.values[k] += h / 6.0 * (k1[k] + 2.0 * k2[k] + 2.0 * k3[k] + k4[k]);
        }

        const double t = h * static_cast<double>(step);
        const double drift = std::abs(field_norm(w) - norm0) / std::abs(norm0);
        const double lowest = *std::min_element(w.values.begin(), w.values.end());
        if (!(drift <= kNormDrift) || (classical && !(lowest >= kClassicalNegativity))) {
            std::ostringstream os;
            os << dynamics.label() << " evolution unstable at step " << step << " (t = " << t << "): norm drift "
               << drift << ", min value " << lowest;
            throw InstabilityError(os.str());
        }
        if (step % stride == 0 || step == steps) out.samples.push_back(diagnose(t, w));
    }
    out.final_field = std::move(w);
    return out;
}

void write_wigner_csv(std::ostream& out, const WignerTrajectory& trajectory) {
    io::CsvWriter csv(out, {"t", "mean_x", "mean_p", "var_x", "var_p", "cov_xp", "norm", "energy", "entropy",
                            "negative_fraction"});
    for (const auto& s : trajectory.samples) {
        csv.row({s.t, s.moments.mean_x, s.moments.mean_p, s.moments.var_x, s.moments.var_p, s.moments.cov_xp, s.norm,
                 s.energy, s.entropy, s.negative_fraction});
    }
}

}  // namespace qrelax::phase
