#include "qrelax/phase_space/kernel.hpp"

#include <algorithm>
#include <vector>

#include "qrelax/core/errors.hpp"
#include "qrelax/core/stencil.hpp"

namespace qrelax::phase {

namespace {

void check_shapes(const PhaseGrid& grid, const FokkerPlanckTerms& terms, std::span<const double> w,
                  std::span<double> out) {
    if (w.size() != grid.size() || out.size() != grid.size()) throw ArgumentError("field does not match grid");
    if (terms.force.size() != grid.x.size()) throw ArgumentError("force must be sampled on the x grid");
    if (!terms.cubic.empty() && terms.cubic.size() != grid.x.size()) {
        throw ArgumentError("cubic coefficient must be sampled on the x grid");
    }
}

}  // namespace

void apply_fokker_planck(const PhaseGrid& grid, const FokkerPlanckTerms& terms, std::span<const double> w,
                         std::span<double> out) {
    check_shapes(grid, terms, w, out);
    const std::size_t nx = grid.x.size();
    const auto last_row = static_cast<std::ptrdiff_t>(nx) - 1;
    const std::size_t np = grid.p.size();
    const double dx = grid.x.spacing();
    const double dp = grid.p.spacing();
    const auto stride = static_cast<std::ptrdiff_t>(np);
    const bool has_cubic = !terms.cubic.empty();
    const double inv_m = 1.0 / terms.mass;

    std::fill(out.begin(), out.begin() + static_cast<std::ptrdiff_t>(np), 0.0);
    std::fill(out.end() - static_cast<std::ptrdiff_t>(np), out.end(), 0.0);

#pragma omp parallel
    {
        std::vector<double> momentum_weighted(np);
        std::vector<double> flux(np - 1);
#pragma omp for schedule(static)
        for (std::ptrdiff_t si = 1; si < last_row; ++si) {
            const auto i = static_cast<std::size_t>(si);
            const double* row = w.data() + i * np;
            double* dst = out.data() + i * np;

            // Fluxes through the p-interfaces of this row.
            for (std::size_t j = 0; j < np; ++j) momentum_weighted[j] = grid.p[j] * row[j];
            const double force = terms.force[i];
            const double cubic = has_cubic ? terms.cubic[i] : 0.0;
            flux[0] = 0.0;
            flux[np - 2] = 0.0;
            for (std::size_t k = 1; k + 2 < np; ++k) {
                double f = force * stencil::interface_value(row, 1, np, k) +
                           terms.gamma * stencil::interface_value(momentum_weighted.data(), 1, np, k) +
                           terms.diffusion * stencil::interface_gradient(row, 1, np, k, dp);
                if (has_cubic) f -= cubic * stencil::interface_curvature(row, 1, np, k, dp);
                flux[k] = f;
            }

            // Streaming: fluxes through the x-interfaces i-1/2 and i+1/2.
            const double* column = w.data();
            dst[0] = 0.0;
            dst[np - 1] = 0.0;
            for (std::size_t j = 1; j + 1 < np; ++j) {
                const double up = i + 2 < nx ? stencil::interface_value(column + j, stride, nx, i) : 0.0;
                const double down = i >= 2 ? stencil::interface_value(column + j, stride, nx, i - 1) : 0.0;
                const double velocity = grid.p[j] * inv_m;
                dst[j] = -velocity * (up - down) / dx + (flux[j] - flux[j - 1]) / dp;
            }
        }
    }
}

}  // namespace qrelax::phase
