#include "qrelax/core/params.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "qrelax/core/errors.hpp"

namespace qrelax {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require(std::vector<std::string>& out, bool ok, const char* field, const char* rule, double value) {
    if (ok) return;
    std::ostringstream os;
    os << field << " = " << value << " violates " << rule;
    out.push_back(os.str());
}

}  // namespace

std::vector<std::string> PhysParams::violations() const {
    std::vector<std::string> out;
    require(out, std::isfinite(mass) && mass > 0.0, "mass", "m > 0", mass);
    require(out, std::isfinite(omega0) && omega0 >= 0.0, "omega0", "omega0 >= 0", omega0);
    require(out, std::isfinite(friction) && friction >= 0.0, "friction", "b >= 0", friction);
    require(out, std::isfinite(temperature) && temperature >= 0.0, "temperature", "T >= 0", temperature);
    require(out, std::isfinite(hbar) && hbar >= 0.0, "hbar", "hbar >= 0", hbar);
    require(out, std::isfinite(boltzmann) && boltzmann > 0.0, "boltzmann", "k_B > 0", boltzmann);
    return out;
}

void PhysParams::validate() const {
    const auto v = violations();
    if (v.empty()) return;
    std::string msg = "invalid physical parameters:";
    for (const auto& line : v) msg += "\n  " + line;
    throw ArgumentError(msg);
}

double PhysParams::beta() const {
    if (!(temperature > 0.0)) throw DomainError("beta requested at T = 0");
    return 1.0 / thermal_energy();
}

double PhysParams::beta_or_infinity() const {
    return temperature > 0.0 ? 1.0 / thermal_energy() : kInf;
}

double PhysParams::reduced_frequency() const {
    if (temperature > 0.0) return 0.5 * hbar * omega0 / thermal_energy();
    return omega0 > 0.0 && hbar > 0.0 ? kInf : 0.0;
}

double PhysParams::thermal_wavelength() const {
    if (!(temperature > 0.0)) return kInf;
    return hbar / (2.0 * std::sqrt(mass * thermal_energy()));
}

double PhysParams::quantum_time() const {
    if (!(temperature > 0.0)) return kInf;
    const double lambda = thermal_wavelength();
    return lambda * lambda / (2.0 * einstein_diffusion());
}

double PhysParams::second_matsubara_frequency() const {
    if (hbar == 0.0) return kInf;
    return 2.0 * thermal_energy() / hbar;
}

double PhysParams::zero_point_variance() const {
    if (!(omega0 > 0.0)) throw DomainError("zero-point variance requires omega0 > 0");
    return hbar / (2.0 * mass * omega0);
}

}  // namespace qrelax
