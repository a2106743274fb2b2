#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace qrelax::stencil {

// Interface stencils for conservative (flux-form) discretisations.
//
// Interface k sits between nodes k and k+1 (k = 0 .. n-2). The differences
// (F[k] - F[k-1]) / h of these interface values reproduce the standard
// fourth-order central first, second and third derivatives wherever the wide
// stencil fits, and drop to second-order versions next to the ends. Callers
// impose zero flux on the two outermost interfaces, so the discrete integral
// of any divergence assembled from them vanishes to rounding.
//
// `f` points at node 0 of a line of n samples spaced `stride` apart.

/// Value at the interface: (-f[k-1] + 7f[k] + 7f[k+1] - f[k+2]) / 12.
inline double interface_value(const double* f, std::ptrdiff_t stride, std::size_t n, std::size_t k) {
    const auto at = [&](std::size_t i) { return f[static_cast<std::ptrdiff_t>(i) * stride]; };
    if (k >= 1 && k + 2 < n) return (-at(k - 1) + 7.0 * (at(k) + at(k + 1)) - at(k + 2)) / 12.0;
    return 0.5 * (at(k) + at(k + 1));
}

/// First derivative at the interface: (f[k-1] - 15f[k] + 15f[k+1] - f[k+2]) / 12h.
inline double interface_gradient(const double* f, std::ptrdiff_t stride, std::size_t n, std::size_t k, double h) {
    const auto at = [&](std::size_t i) { return f[static_cast<std::ptrdiff_t>(i) * stride]; };
    if (k >= 1 && k + 2 < n) return (at(k - 1) - 15.0 * at(k) + 15.0 * at(k + 1) - at(k + 2)) / (12.0 * h);
    return (at(k + 1) - at(k)) / h;
}

/// Second derivative at the interface; its differences give the third
/// derivative. Six-point form (-1, 7, -6, -6, 7, -1) / 8h^2 in the deep
/// interior, four-point (1, -1, -1, 1) / 2h^2 next to the ends.
inline double interface_curvature(const double* f, std::ptrdiff_t stride, std::size_t n, std::size_t k, double h) {
    const auto at = [&](std::size_t i) { return f[static_cast<std::ptrdiff_t>(i) * stride]; };
    const double h2 = h * h;
    if (k >= 2 && k + 3 < n) {
        return (-at(k - 2) + 7.0 * at(k - 1) - 6.0 * at(k) - 6.0 * at(k + 1) + 7.0 * at(k + 2) - at(k + 3)) /
               (8.0 * h2);
    }
    if (k >= 1 && k + 2 < n) return (at(k - 1) - at(k) - at(k + 1) + at(k + 2)) / (2.0 * h2);
    // Only reached on the outermost interfaces, where callers zero the flux.
    return 0.0;
}

// Pointwise derivative stencils on a contiguous line: fourth-order central in
// the interior, second-order central one node in, second-order one-sided at
// the ends.
double first_derivative(std::span<const double> f, std::size_t i, double h);
double second_derivative(std::span<const double> f, std::size_t i, double h);
double third_derivative(std::span<const double> f, std::size_t i, double h);

std::vector<double> first_derivative(std::span<const double> f, double h);
std::vector<double> second_derivative(std::span<const double> f, double h);

/// Composite trapezoid rule on a uniform grid.
double trapezoid(std::span<const double> f, double h);

}  // namespace qrelax::stencil
