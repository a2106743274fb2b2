#pragma once

#include <functional>
#include <string>

namespace qrelax {

/// External potential U(x) with its first three derivatives, for separable
/// Hamiltonians H = p²/2m + U(x).
struct Potential {
    std::string name;
    std::function<double(double)> value;
    std::function<double(double)> d1;
    std::function<double(double)> d2;
    std::function<double(double)> d3;

    static Potential free();
    /// U = m ω0² x² / 2.
    static Potential harmonic(double mass, double omega0);
    /// U = k x⁴ / 4.
    static Potential quartic(double stiffness);
    /// U = m ω0² x² / 2 + k x⁴ / 4.
    static Potential anharmonic(double mass, double omega0, double quartic);
};

}  // namespace qrelax
