#include "qrelax/core/stencil.hpp"

#include "qrelax/core/errors.hpp"

namespace qrelax::stencil {

namespace {

void require_points(std::span<const double> f, std::size_t needed) {
    if (f.size() < needed) throw ArgumentError("stencil needs more grid points");
}

}  // namespace

double first_derivative(std::span<const double> f, std::size_t i, double h) {
    const std::size_t n = f.size();
    require_points(f, 5);
    if (i >= 2 && i + 2 < n) return (f[i - 2] - 8.0 * f[i - 1] + 8.0 * f[i + 1] - f[i + 2]) / (12.0 * h);
    if (i >= 1 && i + 1 < n) return (f[i + 1] - f[i - 1]) / (2.0 * h);
    if (i == 0) return (-3.0 * f[0] + 4.0 * f[1] - f[2]) / (2.0 * h);
    return (3.0 * f[n - 1] - 4.0 * f[n - 2] + f[n - 3]) / (2.0 * h);
}

double second_derivative(std::span<const double> f, std::size_t i, double h) {
    const std::size_t n = f.size();
    require_points(f, 5);
    const double h2 = h * h;
    if (i >= 2 && i + 2 < n) {
        return (-f[i - 2] + 16.0 * f[i - 1] - 30.0 * f[i] + 16.0 * f[i + 1] - f[i + 2]) / (12.0 * h2);
    }
    if (i >= 1 && i + 1 < n) return (f[i - 1] - 2.0 * f[i] + f[i + 1]) / h2;
    if (i == 0) return (2.0 * f[0] - 5.0 * f[1] + 4.0 * f[2] - f[3]) / h2;
    return (2.0 * f[n - 1] - 5.0 * f[n - 2] + 4.0 * f[n - 3] - f[n - 4]) / h2;
}

double third_derivative(std::span<const double> f, std::size_t i, double h) {
    const std::size_t n = f.size();
    require_points(f, 7);
    const double h3 = h * h * h;
    if (i >= 3 && i + 3 < n) {
        return (f[i - 3] - 8.0 * f[i - 2] + 13.0 * f[i - 1] - 13.0 * f[i + 1] + 8.0 * f[i + 2] - f[i + 3]) /
               (8.0 * h3);
    }
    if (i >= 2 && i + 2 < n) return (-f[i - 2] + 2.0 * f[i - 1] - 2.0 * f[i + 1] + f[i + 2]) / (2.0 * h3);
    if (i <= 1) {
        const std::size_t b = i;  // forward, second order, anchored at node i
        return (-5.0 * f[b] + 18.0 * f[b + 1] - 24.0 * f[b + 2] + 14.0 * f[b + 3] - 3.0 * f[b + 4]) / (2.0 * h3);
    }
    const std::size_t b = i;
    return (5.0 * f[b] - 18.0 * f[b - 1] + 24.0 * f[b - 2] - 14.0 * f[b - 3] + 3.0 * f[b - 4]) / (2.0 * h3);
}

std::vector<double> first_derivative(std::span<const double> f, double h) {
    std::vector<double> out(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) out[i] = first_derivative(f, i, h);
    return out;
}

std::vector<double> second_derivative(std::span<const double> f, double h) {
    std::vector<double> out(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) out[i] = second_derivative(f, i, h);
    return out;
}

double trapezoid(std::span<const double> f, double h) {
    if (f.size() < 2) return 0.0;
    double sum = 0.5 * (f.front() + f.back());
    for (std::size_t i = 1; i + 1 < f.size(); ++i) sum += f[i];
    return sum * h;
}

}  // namespace qrelax::stencil
