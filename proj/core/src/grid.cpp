#include "epsqp/grid.hpp"

#include <numbers>
#include <string>

#include "epsqp/error.hpp"

namespace epsqp {

Grid1D Grid1D::make(std::size_t n_points, double min, double max) {
    const bool power_of_two = n_points != 0 && (n_points & (n_points - 1)) == 0;
    require(power_of_two && n_points >= 8,
            "make_grid: n_points must be a power of two >= 8, got " + std::to_string(n_points));
    require(max > min, "make_grid: max must exceed min");
    return Grid1D(n_points, min, max);
}

std::vector<double> Grid1D::points() const {
    std::vector<double> out(n_);
    for (std::size_t i = 0; i < n_; ++i) out[i] = point(i);
    return out;
}

std::vector<double> Grid1D::wavenumbers() const {
    const double dk = 2.0 * std::numbers::pi / length();
    std::vector<double> k(n_);
    const auto half = static_cast<long>(n_ / 2);
    for (std::size_t j = 0; j < n_; ++j) {
        auto m = static_cast<long>(j);
        if (m >= half) m -= static_cast<long>(n_);
        k[j] = dk * static_cast<double>(m);
    }
    return k;
}

}  // namespace epsqp
