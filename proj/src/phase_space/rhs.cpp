#include "qrelax/phase_space/rhs.hpp"

#include <functional>
#include <limits>
#include <cmath>
#include <sstream>

#include "qrelax/core/errors.hpp"
#include "qrelax/core/stencil.hpp"

namespace qrelax::phase {

namespace {

double thermal_energy(double beta) {
    if (!(beta > 0.0)) throw ArgumentError("beta must be positive");
    return std::isinf(beta) ? 0.0 : 1.0 / beta;
}

std::vector<double> sample(const CoordGrid& x, const std::function<double(double)>& f) {
    std::vector<double> out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = f(x[i]);
    return out;
}

std::vector<double> cubic_coefficients(const CoordGrid& x, const PhysParams& params, const Potential& potential) {
    const double c = params.hbar * params.hbar / 24.0;
    if (c == 0.0 || !potential.d3) return {};
    std::vector<double> out = sample(x, potential.d3);
    bool any = false;
    for (double& v : out) {
        v *= c;
        any = any || v != 0.0;
    }
    if (!any) out.clear();
    return out;
}

}  // namespace

FokkerPlanckTerms klein_kramers_terms(const PhaseGrid& grid, const PhysParams& params, const Potential& potential,
                                      double beta) {
    FokkerPlanckTerms t;
    t.mass = params.mass;
    t.force = sample(grid.x, potential.d1);
    t.gamma = params.friction / params.mass;
    t.diffusion = params.friction * thermal_energy(beta);
    return t;
}

FokkerPlanckTerms harmonic_terms(const PhaseGrid& grid, const PhysParams& params, RelaxationModel model, double beta,
                                 std::optional<double> var_x) {
    if (!(params.omega0 > 0.0)) throw ArgumentError("harmonic Wigner equations need omega0 > 0");
    const auto c = moments::relaxation_coefficients(model, beta, params, var_x);
    if (!std::isfinite(c.gamma) || !std::isfinite(c.diffusion)) {
        std::ostringstream os;
        os << moments::model_tag(model) << " coefficients diverge at beta = " << beta;
        throw DomainError(os.str());
    }
    FokkerPlanckTerms t;
    t.mass = params.mass;
    t.force = sample(grid.x, Potential::harmonic(params.mass, params.omega0).d1);
    t.gamma = c.gamma;
    t.diffusion = c.diffusion;
    return t;
}

FokkerPlanckTerms semiclassical_terms(const PhaseGrid& grid, const PhysParams& params, const Potential& potential,
                                      double beta, const MomentState& gaussian_moments) {
    const double det = gaussian_moments.determinant();
    if (!(det > 0.0)) {
        std::ostringstream os;
        os << "covariance determinant " << det << " must be positive for the quantum entropy term";
        throw DomainError(os.str());
    }
    FokkerPlanckTerms t = klein_kramers_terms(grid, params, potential, beta);
    const double hbar2 = params.hbar * params.hbar;
    t.diffusion += params.friction * thermal_energy(beta) * hbar2 / (4.0 * det);
    t.cubic = cubic_coefficients(grid.x, params, potential);
    return t;
}

WignerField apply(const WignerField& w, const FokkerPlanckTerms& terms) {
    WignerField out(w.grid, w.params);
    out.classical = w.classical;
    apply_fokker_planck(w.grid, terms, w.values, out.values);
    return out;
}

WignerField rhs_klein_kramers(const WignerField& f, const Potential& potential) {
    const double kt = f.params.thermal_energy();
    const double beta = kt > 0.0 ? 1.0 / kt : std::numeric_limits<double>::infinity();
    return apply(f, klein_kramers_terms(f.grid, f.params, potential, beta));
}

WignerField check_onsager_form(const WignerField& f, const Potential& potential) {
    (void)potential;  // H is separable, so ∂_p H = p/m whatever U is.
    for (double v : f.values) {
        if (!(v > 0.0)) throw DomainError("Onsager form needs a strictly positive density");
    }
    const PhaseGrid& g = f.grid;
    const std::size_t np = g.p.size();
    const double dp = g.p.spacing();
    const double b = f.params.friction;
    const double kt = f.params.thermal_energy();
    const double m = f.params.mass;

    WignerField out(g, f.params);
    std::vector<double> row(np), log_row(np), onsager_flux(np), kramers_flux(np);
    for (std::size_t i = 0; i < g.x.size(); ++i) {
        for (std::size_t j = 0; j < np; ++j) {
            row[j] = f.at(i, j);
            log_row[j] = std::log(row[j]);
        }
        const auto dlog = stencil::first_derivative(log_row, dp);
        const auto drow = stencil::first_derivative(row, dp);
        for (std::size_t j = 0; j < np; ++j) {
            const double dh = g.p[j] / m;
            onsager_flux[j] = row[j] * (dh + kt * dlog[j]);  // f ∂_p F
            kramers_flux[j] = row[j] * dh + kt * drow[j];    // f ∂_p H + k_BT ∂_p f
        }
        const auto onsager = stencil::first_derivative(onsager_flux, dp);
        const auto kramers = stencil::first_derivative(kramers_flux, dp);
        for (std::size_t j = 0; j < np; ++j) out.at(i, j) = b * (onsager[j] - kramers[j]);
    }
    return out;
}

WignerField rhs_wigner_ho(const WignerField& w, RelaxationModel model, double beta, std::optional<double> var_x) {
    if (model == RelaxationModel::MaxwellHeisenberg && !var_x) {
        throw ArgumentError("MAXWELL_HEISENBERG_14 needs sigma_x^2 of the current field");
    }
    return apply(w, harmonic_terms(w.grid, w.params, model, beta, var_x));
}

WignerField rhs_semiclassical(const WignerField& w, const Potential& potential, double beta,
                              const MomentState& gaussian_moments) {
    return apply(w, semiclassical_terms(w.grid, w.params, potential, beta, gaussian_moments));
}

WignerField quantum_streaming_term(const WignerField& w, const Potential& potential) {
    FokkerPlanckTerms t;
    t.mass = w.params.mass;
    t.force.assign(w.grid.x.size(), 0.0);
    t.cubic = cubic_coefficients(w.grid.x, w.params, potential);
    WignerField out(w.grid, w.params);
    if (t.cubic.empty()) return out;
    // Isolate the cubic flux: with the streaming velocity p/m present the
    // kernel would add −(p/m)∂_x W, so subtract the frictionless,
    // force-free evaluation without the cubic term.
    WignerField with = apply(w, t);
    t.cubic.clear();
    WignerField without = apply(w, t);
    for (std::size_t k = 0; k < out.values.size(); ++k) out.values[k] = without.values[k] - with.values[k];
    return out;
}

}  // namespace qrelax::phase
