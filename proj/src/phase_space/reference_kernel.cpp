// Pointwise form of the flux-form operator in kernel.cpp. Each row below is
// what the telescoping flux difference expands to at that node, written out
// directly so the two implementations share no stencil code.

#include <algorithm>
#include <vector>

#include "qrelax/core/errors.hpp"
#include "qrelax/phase_space/kernel.hpp"

namespace qrelax::phase {

namespace {

// g(k) reads sample k of the line; n samples; node i in [1, n-2].
template <class G>
double d1_row(const G& g, std::size_t n, std::size_t i, double h) {
    if (i == 1) return (-g(0) + 7.0 * g(1) + 7.0 * g(2) - g(3)) / (12.0 * h);
    if (i == n - 2) return -(-g(n - 4) + 7.0 * g(n - 3) + 7.0 * g(n - 2) - g(n - 1)) / (12.0 * h);
    return (g(i - 2) - 8.0 * g(i - 1) + 8.0 * g(i + 1) - g(i + 2)) / (12.0 * h);
}

template <class G>
double d2_row(const G& g, std::size_t n, std::size_t i, double h) {
    const double h2 = h * h;
    if (i == 1) return (g(0) - 15.0 * g(1) + 15.0 * g(2) - g(3)) / (12.0 * h2);
    if (i == n - 2) return -(g(n - 4) - 15.0 * g(n - 3) + 15.0 * g(n - 2) - g(n - 1)) / (12.0 * h2);
    return (-g(i - 2) + 16.0 * g(i - 1) - 30.0 * g(i) + 16.0 * g(i + 1) - g(i + 2)) / (12.0 * h2);
}

template <class G>
double d3_row(const G& g, std::size_t n, std::size_t i, double h) {
    const double h3 = h * h * h;
    if (i == 1) return (g(0) - g(1) - g(2) + g(3)) / (2.0 * h3);
    if (i == n - 2) return -(g(n - 4) - g(n - 3) - g(n - 2) + g(n - 1)) / (2.0 * h3);
    if (i == 2) return (-5.0 * g(0) + 11.0 * g(1) - 2.0 * g(2) - 10.0 * g(3) + 7.0 * g(4) - g(5)) / (8.0 * h3);
    if (i == n - 3) {
        return (5.0 * g(n - 1) - 11.0 * g(n - 2) + 2.0 * g(n - 3) + 10.0 * g(n - 4) - 7.0 * g(n - 5) + g(n - 6)) /
               (8.0 * h3);
    }
    return (g(i - 3) - 8.0 * g(i - 2) + 13.0 * g(i - 1) - 13.0 * g(i + 1) + 8.0 * g(i + 2) - g(i + 3)) / (8.0 * h3);
}

}  // namespace

void apply_fokker_planck_reference(const PhaseGrid& grid, const FokkerPlanckTerms& terms, std::span<const double> w,
                                   std::span<double> out) {
    if (w.size() != grid.size() || out.size() != grid.size()) throw ArgumentError("field does not match grid");
    const std::size_t nx = grid.x.size();
    const std::size_t np = grid.p.size();
    const double dx = grid.x.spacing();
    const double dp = grid.p.spacing();
    std::fill(out.begin(), out.end(), 0.0);

    for (std::size_t i = 1; i + 1 < nx; ++i) {
        const auto along_p = [&](std::size_t j) { return w[grid.index(i, j)]; };
        const auto weighted = [&](std::size_t j) { return grid.p[j] * w[grid.index(i, j)]; };
        for (std::size_t j = 1; j + 1 < np; ++j) {
            const auto along_x = [&](std::size_t k) { return w[grid.index(k, j)]; };
            double value = -(grid.p[j] / terms.mass) * d1_row(along_x, nx, i, dx);
            value += terms.force.at(i) * d1_row(along_p, np, j, dp);
            value += terms.gamma * d1_row(weighted, np, j, dp);
            value += terms.diffusion * d2_row(along_p, np, j, dp);
            if (!terms.cubic.empty()) value -= terms.cubic.at(i) * d3_row(along_p, np, j, dp);
            out[grid.index(i, j)] = value;
        }
    }
}

}  // namespace qrelax::phase
