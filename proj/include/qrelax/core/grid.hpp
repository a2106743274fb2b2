#pragma once

#include <cstddef>
#include <vector>

namespace qrelax {

/// Uniform 1D grid with both end points included.
class CoordGrid {
public:
    CoordGrid(double lo, double hi, std::size_t points);

    [[nodiscard]] double lo() const { return lo_; }
    [[nodiscard]] double hi() const { return hi_; }
    [[nodiscard]] std::size_t size() const { return n_; }
    [[nodiscard]] double spacing() const { return h_; }
    [[nodiscard]] double operator[](std::size_t i) const { return lo_ + static_cast<double>(i) * h_; }
    [[nodiscard]] std::vector<double> points() const;
    /// Distance from `centre` to the nearer end of the grid.
    [[nodiscard]] double half_width_about(double centre) const;

    static constexpr std::size_t kMinPoints = 8;

private:
    double lo_;
    double hi_;
    std::size_t n_;
    double h_;
};

/// Tensor-product (x, p) grid. Field storage is row-major in x: index i*np + j.
struct PhaseGrid {
    CoordGrid x;
    CoordGrid p;

    [[nodiscard]] std::size_t size() const { return x.size() * p.size(); }
    [[nodiscard]] std::size_t index(std::size_t i, std::size_t j) const { return i * p.size() + j; }
    [[nodiscard]] double cell_area() const { return x.spacing() * p.spacing(); }
};

}  // namespace qrelax
