#include "qrelax/phase_space/field.hpp"

#include <cmath>
#include <numbers>
#include <ostream>
#include <sstream>

#include "qrelax/core/errors.hpp"
#include "qrelax/io/csv.hpp"

namespace qrelax::phase {

namespace {

constexpr double kRequiredWidths = 6.0;

double trapezoid_weight(std::size_t k, std::size_t n) { return k == 0 || k + 1 == n ? 0.5 : 1.0; }

void require_width(const CoordGrid& axis, double centre, double sigma, const char* name) {
    const double half = axis.half_width_about(centre);
    if (!(half >= kRequiredWidths * sigma)) {
        std::ostringstream os;
        os << name << " axis reaches only " << half / sigma << " standard deviations from " << centre
           << " (need " << kRequiredWidths << ")";
        throw DomainError(os.str());
    }
}

}  // namespace

WignerField::WignerField(PhaseGrid g, PhysParams p) : grid(std::move(g)), params(p), values(grid.size(), 0.0) {}

WignerField::WignerField(PhaseGrid g, PhysParams p, std::vector<double> v)
    : grid(std::move(g)), params(p), values(std::move(v)) {
    if (values.size() != grid.size()) throw ArgumentError("field values do not match grid");
}

double integrate(const PhaseGrid& grid, const std::vector<double>& v) {
    const std::size_t nx = grid.x.size();
    const std::size_t np = grid.p.size();
    double total = 0.0;
    for (std::size_t i = 0; i < nx; ++i) {
        double row = 0.0;
        for (std::size_t j = 0; j < np; ++j) row += trapezoid_weight(j, np) * v[grid.index(i, j)];
        total += trapezoid_weight(i, nx) * row;
    }
    return total * grid.cell_area();
}

double field_norm(const WignerField& w) { return integrate(w.grid, w.values); }

WignerField gaussian_wigner(const MomentState& m, const PhaseGrid& grid, const PhysParams& params) {
    if (!m.valid()) throw ArgumentError("Gaussian needs positive variances and covariance determinant");
    const double det = m.determinant();
    WignerField w(grid, params);
    for (std::size_t i = 0; i < grid.x.size(); ++i) {
        const double dx = grid.x[i] - m.mean_x;
        for (std::size_t j = 0; j < grid.p.size(); ++j) {
            const double dp = grid.p[j] - m.mean_p;
            const double q = (m.var_p * dx * dx - 2.0 * m.cov_xp * dx * dp + m.var_x * dp * dp) / det;
            w.at(i, j) = std::exp(-0.5 * q);
        }
    }
    const double norm = field_norm(w);
    if (!(norm > 0.0)) throw DomainError("Gaussian underflows everywhere on the grid");
    for (double& v : w.values) v /= norm;
    return w;
}

MomentState equilibrium_moments_ho(double beta, const PhysParams& params) {
    if (!(params.omega0 > 0.0)) throw ArgumentError("equilibrium Wigner function needs omega0 > 0");
    if (!(beta > 0.0)) throw ArgumentError("beta must be positive");
    const double m = params.mass;
    const double w = params.omega0;
    MomentState s;
    if (std::isinf(beta)) {
        s.var_x = params.hbar / (2.0 * m * w);
    } else {
        // (ħ/2mω0) coth(s) written as s·coth(s) / (β m ω0²) so ħ = 0 is the classical limit.
        const double r = 0.5 * beta * params.hbar * w;
        const double s_coth = r < 1e-4 ? 1.0 + r * r / 3.0 : r / std::tanh(r);
        s.var_x = s_coth / (beta * m * w * w);
    }
    s.var_p = m * m * w * w * s.var_x;
    return s;
}

WignerField equilibrium_wigner_ho(double beta, const PhysParams& params, const PhaseGrid& grid) {
    const MomentState s = equilibrium_moments_ho(beta, params);
    if (!(s.var_x > 0.0)) throw DomainError("equilibrium state is singular (T = 0 with hbar = 0)");
    require_width(grid.x, 0.0, std::sqrt(s.var_x), "x");
    require_width(grid.p, 0.0, std::sqrt(s.var_p), "p");
    WignerField w = gaussian_wigner(s, grid, params);
    w.classical = params.hbar == 0.0;
    return w;
}

MomentState field_moments(const WignerField& w) {
    const PhaseGrid& g = w.grid;
    const std::size_t nx = g.x.size();
    const std::size_t np = g.p.size();
    double n = 0.0, sx = 0.0, sp = 0.0, sxx = 0.0, spp = 0.0, sxp = 0.0;
    for (std::size_t i = 0; i < nx; ++i) {
        const double x = g.x[i];
        const double wi = trapezoid_weight(i, nx);
        for (std::size_t j = 0; j < np; ++j) {
            const double p = g.p[j];
            const double v = wi * trapezoid_weight(j, np) * w.at(i, j);
            n += v;
            sx += v * x;
            sp += v * p;
            sxx += v * x * x;
            spp += v * p * p;
            sxp += v * x * p;
        }
    }
    if (!(n != 0.0)) throw DomainError("field has zero norm");
    MomentState m;
    m.mean_x = sx / n;
    m.mean_p = sp / n;
    m.var_x = sxx / n - m.mean_x * m.mean_x;
    m.var_p = spp / n - m.mean_p * m.mean_p;
    m.cov_xp = sxp / n - m.mean_x * m.mean_p;
    return m;
}

double field_energy(const WignerField& w, const Potential& potential) {
    const PhaseGrid& g = w.grid;
    std::vector<double> hw(g.size());
    for (std::size_t i = 0; i < g.x.size(); ++i) {
        const double u = potential.value(g.x[i]);
        for (std::size_t j = 0; j < g.p.size(); ++j) {
            const double p = g.p[j];
            hw[g.index(i, j)] = (p * p / (2.0 * w.params.mass) + u) * w.at(i, j);
        }
    }
    return integrate(g, hw);
}

EntropyEstimate shannon_wigner_entropy(const WignerField& w) {
    std::vector<double> integrand(w.values.size()), negative(w.values.size()), magnitude(w.values.size());
    for (std::size_t k = 0; k < w.values.size(); ++k) {
        const double v = w.values[k];
        integrand[k] = v > 0.0 ? -v * std::log(v) : 0.0;
        negative[k] = v < 0.0 ? -v : 0.0;
        magnitude[k] = std::abs(v);
    }
    const double total = integrate(w.grid, magnitude);
    return {integrate(w.grid, integrand), total > 0.0 ? integrate(w.grid, negative) / total : 0.0};
}

void write_field_csv(std::ostream& out, const WignerField& w) {
    io::CsvWriter csv(out, {"x", "p", "W"});
    for (std::size_t i = 0; i < w.grid.x.size(); ++i) {
        for (std::size_t j = 0; j < w.grid.p.size(); ++j) csv.row({w.grid.x[i], w.grid.p[j], w.at(i, j)});
    }
}

}  // namespace qrelax::phase
