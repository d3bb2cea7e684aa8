#pragma once

#include <cstddef>
#include <vector>

namespace epsqp {

/// Uniform periodic lattice on [min, max). The right endpoint is excluded,
/// so spacing = (max - min) / n_points.
class Grid1D {
public:
    /// Throws PreconditionError unless n is a power of two >= 8 and max > min.
    static Grid1D make(std::size_t n_points, double min, double max);

    std::size_t size() const noexcept { return n_; }
    double min() const noexcept { return min_; }
    double max() const noexcept { return max_; }
    double spacing() const noexcept { return (max_ - min_) / static_cast<double>(n_); }
    double length() const noexcept { return max_ - min_; }
    double point(std::size_t i) const noexcept { return min_ + static_cast<double>(i) * spacing(); }
    std::vector<double> points() const;

    /// Angular wavenumbers in FFT order: 0, dk, ..., (n/2-1)dk, -(n/2)dk, ..., -dk.
    std::vector<double> wavenumbers() const;

    friend bool operator==(const Grid1D&, const Grid1D&) = default;

private:
    Grid1D(std::size_t n, double min, double max) : n_(n), min_(min), max_(max) {}

    std::size_t n_;
    double min_;
    double max_;
};

inline Grid1D make_grid(std::size_t n_points, double min, double max) {
    return Grid1D::make(n_points, min, max);
}

/// Tensor lattice over (p, q). Fields on it are stored row-major with q
/// varying fastest: index(ip, iq) = ip * nq + iq, so a "q-row" is contiguous.
struct Grid2D {
    Grid1D p_axis;
    Grid1D q_axis;

    std::size_t np() const noexcept { return p_axis.size(); }
    std::size_t nq() const noexcept { return q_axis.size(); }
    std::size_t size() const noexcept { return np() * nq(); }
    std::size_t index(std::size_t ip, std::size_t iq) const noexcept { return ip * nq() + iq; }
    double cell_area() const noexcept { return p_axis.spacing() * q_axis.spacing(); }

    friend bool operator==(const Grid2D&, const Grid2D&) = default;
};

}  // namespace epsqp
