#include "qrelax/core/potential.hpp"

namespace qrelax {

Potential Potential::free() {
    const auto zero = [](double) { return 0.0; };
    return {"free", zero, zero, zero, zero};
}

Potential Potential::harmonic(double mass, double omega0) {
    return anharmonic(mass, omega0, 0.0);
}

Potential Potential::quartic(double stiffness) {
    return anharmonic(1.0, 0.0, stiffness);
}

Potential Potential::anharmonic(double mass, double omega0, double quartic) {
    const double k2 = mass * omega0 * omega0;
    const double k4 = quartic;
    std::string name = k4 == 0.0 ? "harmonic" : (k2 == 0.0 ? "quartic" : "anharmonic");
    return {std::move(name),
            [=](double x) { return 0.5 * k2 * x * x + 0.25 * k4 * x * x * x * x; },
            [=](double x) { return k2 * x + k4 * x * x * x; },
            [=](double x) { return k2 + 3.0 * k4 * x * x; },
            [=](double x) { return 6.0 * k4 * x; }};
}

}  // namespace qrelax
