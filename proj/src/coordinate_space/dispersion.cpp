#include "qrelax/coordinate_space/dispersion.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>

#include "qrelax/core/errors.hpp"
#include "qrelax/core/roots.hpp"
#include "qrelax/io/csv.hpp"

namespace qrelax::coord {

namespace {

constexpr double kMaxRelativeChange = 0.01;

void require_friction(const PhysParams& params) {
    if (!(params.friction > 0.0)) throw ArgumentError("dispersion laws need friction b > 0");
}

// y − ln(1 + y), summed as a series where the difference cancels.
double excess(double y) {
    if (y < 0.1) {
        double power = y;
        double sum = 0.0;
        for (int k = 2; k < 40; ++k) {
            power *= y;
            sum += (k % 2 == 0 ? power : -power) / k;
        }
        return sum;
    }
    return y - std::log1p(y);
}

// λ_T² = ħ²/(4 m k_BT).
double wavelength_squared(const PhysParams& params) {
    const double w = params.thermal_wavelength();
    return w * w;
}

}  // namespace

std::string_view law_tag(DispersionLaw law) {
    switch (law) {
        case DispersionLaw::ClassicalEinstein: return "CLASSICAL_EINSTEIN";
        case DispersionLaw::QuantumEinstein: return "QUANTUM_EINSTEIN_17";
        case DispersionLaw::QuantumBath: return "QUANTUM_BATH";
    }
    return "?";
}

DispersionLaw parse_law(std::string_view tag) {
    for (auto law : {DispersionLaw::ClassicalEinstein, DispersionLaw::QuantumEinstein, DispersionLaw::QuantumBath}) {
        if (tag == law_tag(law)) return law;
    }
    throw ArgumentError("unknown dispersion law '" + std::string(tag) +
                        "' (expected CLASSICAL_EINSTEIN, QUANTUM_EINSTEIN_17 or QUANTUM_BATH)");
}

double dispersion_rate(DispersionLaw law, double var_x, double t, const PhysParams& params) {
    require_friction(params);
    const double m = params.mass;
    const double b = params.friction;
    const double two_d = 2.0 * params.thermal_energy() / b;
    // 2Dλ_T²/σ² written without λ_T so that T = 0 stays finite.
    const double uncertainty = params.hbar * params.hbar / (2.0 * m * b * var_x);
    switch (law) {
        case DispersionLaw::ClassicalEinstein: return two_d;
        case DispersionLaw::QuantumEinstein: return two_d + uncertainty;
        case DispersionLaw::QuantumBath: return two_d + 2.0 * params.hbar / (b * t) + uncertainty;
    }
    throw InternalError("unknown dispersion law");
}

double default_bath_start(const PhysParams& params) {
    require_friction(params);
    return 1e-3 * params.mass / params.friction;
}

std::vector<DispersionSample> free_dispersion_evolve(double var0, double t_end, DispersionLaw law, double dt,
                                                     const PhysParams& params, double t0) {
    require_friction(params);
    if (!(var0 > 0.0)) throw ArgumentError("initial dispersion must be positive");
    if (!(dt > 0.0)) throw ArgumentError("time step must be positive");
    if (law == DispersionLaw::QuantumBath && !(t0 > 0.0)) {
        throw ArgumentError("QUANTUM_BATH needs a start time t0 > 0 (the hbar*m/t term is singular at 0)");
    }
    if (!(t_end >= t0)) throw ArgumentError("t_end must not precede t0");

    auto rate = [&](double s, double t) { return dispersion_rate(law, s, t, params); };
    std::vector<DispersionSample> out{{t0, var0}};
    double t = t0;
    double s = var0;
    const double end_tol = 1e-12 * std::max(std::abs(t_end), 1.0);
    while (t_end - t > end_tol) {
        const double r = rate(s, t);
        double h = std::min(dt, t_end - t);
        if (r > 0.0) h = std::min(h, kMaxRelativeChange * s / r);
        if (law == DispersionLaw::QuantumBath) h = std::min(h, kMaxRelativeChange * t);
        const double k1 = r;
        const double k2 = rate(s + 0.5 * h * k1, t + 0.5 * h);
        const double k3 = rate(s + 0.5 * h * k2, t + 0.5 * h);
        const double k4 = rate(s + h * k3, t + h);
        const double next = s + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        t = t_end - t - h <= end_tol ? t_end : t + h;
        if (!(next >= s)) {
            std::ostringstream os;
            os << law_tag(law) << " dispersion decreased at t = " << t;
            throw InternalError(os.str());
        }
        s = next;
        out.push_back({t, s});
    }
    return out;
}

double einstein_law_time(double var_x, const PhysParams& params) {
    require_friction(params);
    if (!(var_x > 0.0)) throw ArgumentError("dispersion must be positive");
    const double kt = params.thermal_energy();
    if (kt == 0.0) {
        return var_x * var_x * params.mass * params.friction / (params.hbar * params.hbar);
    }
    const double lambda2 = wavelength_squared(params);
    const double two_d = 2.0 * kt / params.friction;
    if (lambda2 == 0.0) return var_x / two_d;
    return lambda2 * excess(var_x / lambda2) / two_d;
}

double einstein_law_dispersion(double t, const PhysParams& params) {
    require_friction(params);
    if (!(t >= 0.0)) throw ArgumentError("t must be non-negative");
    if (t == 0.0) return 0.0;
    const double kt = params.thermal_energy();
    if (kt == 0.0) return params.hbar * std::sqrt(t / (params.mass * params.friction));
    const double lambda2 = wavelength_squared(params);
    const double two_d = 2.0 * kt / params.friction;
    if (lambda2 == 0.0) return two_d * t;

    // Solve y − ln(1 + y) = s for y = σ²/λ_T². The left side lies below both
    // y²/2 and y, so y ≥ max(√(2s), s) is never too small an upper guess.
    const double s = two_d * t / lambda2;
    double lo = 0.5 * std::min(std::sqrt(2.0 * s), s);
    double hi = std::max(std::sqrt(2.0 * s), s);
    for (int k = 0; excess(hi) <= s; ++k) {
        if (k > 200) throw InternalError("could not bracket the Einstein-law inverse");
        lo = hi;
        hi *= 2.0;
    }
    const double y = find_root_bracketed([s](double v) { return excess(v) - s; }, lo, hi, 1e-14);
    return lambda2 * y;
}

NelsonReport nelson_condition(const PhysParams& params) {
    const double nelson = params.hbar / (2.0 * params.mass);
    const double einstein = params.friction > 0.0 ? params.thermal_energy() / params.friction
                                                  : std::numeric_limits<double>::infinity();
    return {nelson, einstein, nelson > einstein};
}

void write_dispersion_csv(std::ostream& out, const std::vector<DispersionSample>& samples) {
    io::CsvWriter csv(out, {"t", "sigma_x2"});
    for (const auto& s : samples) csv.row({s.t, s.var_x});
}

}  // namespace qrelax::coord
