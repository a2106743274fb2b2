#include "qrelax/moments/coefficients.hpp"

#include <cmath>
#include <limits>
#include <ostream>
#include <sstream>

#include "qrelax/core/errors.hpp"
#include "qrelax/io/csv.hpp"

namespace qrelax::moments {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
// Below this s the closed forms lose digits to cancellation.
constexpr double kSeriesSwitch = 1e-4;

void require_beta(double beta) {
    if (!(beta > 0.0)) throw ArgumentError("beta must be positive");
}

double reduced(double beta, const PhysParams& params) { return 0.5 * beta * params.hbar * params.omega0; }

double sinhc(double s) { return s < kSeriesSwitch ? 1.0 + s * s / 6.0 : std::sinh(s) / s; }

double s_coth(double s) { return s < kSeriesSwitch ? 1.0 + s * s / 3.0 : s / std::tanh(s); }

}  // namespace

double friction_B(double beta, const PhysParams& params) {
    require_beta(beta);
    if (std::isinf(beta)) return params.omega0 > 0.0 ? kInf : params.friction;
    return params.friction * sinhc(reduced(beta, params));
}

double diffusion_Dp(double beta, const PhysParams& params) {
    require_beta(beta);
    if (std::isinf(beta)) return params.omega0 > 0.0 ? kInf : 0.0;
    const double s = reduced(beta, params);
    const double c = s < kSeriesSwitch ? 1.0 + s * s / 2.0 : std::cosh(s);
    return params.friction * c / beta;
}

double mean_energy_exact(double beta, const PhysParams& params) {
    require_beta(beta);
    if (std::isinf(beta)) return 0.5 * params.hbar * params.omega0;
    return s_coth(reduced(beta, params)) / beta;
}

double mean_energy_mh(double beta, const PhysParams& params) {
    require_beta(beta);
    if (std::isinf(beta)) return 0.5 * params.hbar * params.omega0;
    const double x = beta * params.hbar * params.omega0;
    return 0.5 * (std::hypot(1.0, x) + 1.0) / beta;
}

double check_gibbs_helmholtz(double beta, const PhysParams& params, double h) {
    if (!(h > 0.0) || !(beta > h) || std::isinf(beta)) throw ArgumentError("need beta > h > 0, beta finite");
    const double up = (beta + h) * friction_B(beta + h, params);
    const double down = (beta - h) * friction_B(beta - h, params);
    const double target = beta * diffusion_Dp(beta, params);
    return std::abs((up - down) / (2.0 * h) - target) / target;
}

std::string_view model_tag(RelaxationModel model) {
    switch (model) {
        case RelaxationModel::Classical: return "CLASSICAL_1";
        case RelaxationModel::Effective: return "EFFECTIVE_5";
        case RelaxationModel::Quantum: return "QUANTUM_10";
        case RelaxationModel::MaxwellHeisenberg: return "MAXWELL_HEISENBERG_14";
    }
    return "?";
}

std::optional<RelaxationModel> parse_model(std::string_view tag) {
    for (auto m : {RelaxationModel::Classical, RelaxationModel::Effective, RelaxationModel::Quantum,
                   RelaxationModel::MaxwellHeisenberg}) {
        if (tag == model_tag(m)) return m;
    }
    return std::nullopt;
}

RelaxationCoefficients relaxation_coefficients(RelaxationModel model, double beta, const PhysParams& params,
                                               std::optional<double> var_x) {
    require_beta(beta);
    const double b = params.friction;
    const double m = params.mass;
    const double kt = std::isinf(beta) ? 0.0 : 1.0 / beta;
    switch (model) {
        case RelaxationModel::Classical: return {b / m, b * kt};
        case RelaxationModel::Effective: return {b / m, b * mean_energy_exact(beta, params)};
        case RelaxationModel::Quantum: return {friction_B(beta, params) / m, diffusion_Dp(beta, params)};
        case RelaxationModel::MaxwellHeisenberg: {
            if (!var_x) throw ArgumentError("MAXWELL_HEISENBERG_14 needs the current position variance");
            if (!(*var_x > 0.0)) {
                std::ostringstream os;
                os << "position variance must be positive, got " << *var_x;
                throw DomainError(os.str());
            }
            const double hbar = params.hbar;
            return {b / m, b * (kt + hbar * hbar / (4.0 * m * *var_x))};
        }
    }
    throw InternalError("unknown relaxation model");
}

void write_coefficient_table(std::ostream& out, const PhysParams& params, double beta_min, double beta_max,
                             std::size_t points) {
    if (!(beta_min > 0.0) || !(beta_max >= beta_min) || std::isinf(beta_max)) {
        throw ArgumentError("need 0 < beta_min <= beta_max < inf");
    }
    if (points < 1) throw ArgumentError("coefficient table needs at least one point");
    io::CsvWriter csv(out, {"beta", "B", "D_p", "eps_exact", "eps_mh"});
    const double lo = std::log(beta_min);
    const double span = std::log(beta_max) - lo;
    for (std::size_t k = 0; k < points; ++k) {
        const double frac = points == 1 ? 0.0 : static_cast<double>(k) / static_cast<double>(points - 1);
        const double beta = k + 1 == points ? beta_max : std::exp(lo + span * frac);
        csv.row({beta, friction_B(beta, params), diffusion_Dp(beta, params), mean_energy_exact(beta, params),
                 mean_energy_mh(beta, params)});
    }
}

}  // namespace qrelax::moments
