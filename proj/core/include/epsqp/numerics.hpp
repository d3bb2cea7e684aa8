#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <optional>
#include <span>
#include <vector>

#include "epsqp/error.hpp"
#include "epsqp/grid.hpp"

namespace epsqp {

using cplx = std::complex<double>;
using CVec = std::vector<cplx>;
using RVec = std::vector<double>;
using Mask = std::vector<bool>;

/// Fraction of max(R) below which a sample counts as a node and is masked out.
inline constexpr double kNodeThreshold = 1e-6;

/// Default step for three-snapshot central time differences.
inline constexpr double kDefaultTimeStep = 1e-3;

enum class Axis { P, Q };

/// Order-th derivative by the Fourier multiplier (i k)^order. The field is
/// treated as periodic on the grid; for odd orders the Nyquist mode is dropped.
CVec spectral_derivative(std::span<const cplx> f, const Grid1D& grid, int order);
RVec spectral_derivative(std::span<const double> f, const Grid1D& grid, int order);

/// Derivative of a 2D field (row-major, q fastest) along one axis.
CVec spectral_derivative(std::span<const cplx> f, const Grid2D& grid, Axis axis, int order);
RVec spectral_derivative(std::span<const double> f, const Grid2D& grid, Axis axis, int order);

/// Wrap an angle into (-pi, pi].
inline double wrap_to_pi(double angle) {
    constexpr double two_pi = 2.0 * std::numbers::pi;
    return angle - two_pi * std::ceil((angle - std::numbers::pi) / two_pi);
}

/// Unwrap a 1D phase on the valid samples of `mask`. Each contiguous run of
/// valid samples is unwrapped on its own and anchored at the wrapped value of
/// its first sample. Masked samples keep their wrapped input value.
/// Throws NumericalError if no sample is valid.
RVec unwrap_phase_1d(std::span<const double> wrapped, const Mask& mask);

/// Unwrap a 2D phase field (row-major, q fastest). Every q-row is unwrapped
/// with unwrap_phase_1d, then rows are stitched to the unwrapped column at the
/// q-index of largest aggregate amplitude (mask count when no amplitude is
/// given). Row runs that miss the reference column are stitched to an already
/// aligned neighbour row by the 2*pi multiple that best matches their overlap.
/// Throws NumericalError if the reference column is fully masked.
RVec unwrap_phase_2d(std::span<const double> wrapped, const Mask& mask, const Grid2D& grid,
                     std::optional<std::span<const double>> amplitude = std::nullopt);

/// Central difference (after - before) / (2 dt).
template <class T>
std::vector<T> fd_time_derivative(std::span<const T> before, std::span<const T> after, double dt) {
    require(dt > 0.0, "fd_time_derivative: dt must be positive");
    require(before.size() == after.size(), "fd_time_derivative: snapshot sizes differ");
    std::vector<T> out(before.size());
    const double inv = 1.0 / (2.0 * dt);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = (after[i] - before[i]) * inv;
    return out;
}

/// Field-level overload: snapshots must live on identical grids.
template <class Field>
    requires requires(const Field& f) {
        f.grid;
        f.values;
    }
auto fd_time_derivative(const Field& before, const Field& center, const Field& after, double dt) {
    require(before.grid == center.grid && center.grid == after.grid,
            "fd_time_derivative: snapshots live on different grids");
    using T = typename decltype(center.values)::value_type;
    return fd_time_derivative<T>(std::span<const T>(before.values), std::span<const T>(after.values), dt);
}

/// sqrt(sum |f|^2 * measure).
double l2_norm(std::span<const cplx> f, double measure);
double l2_norm(std::span<const double> f, double measure);

/// ||a - b|| / ||b|| with a common measure.
double relative_l2(std::span<const cplx> a, std::span<const cplx> b);

/// Mask of samples with amplitude >= kNodeThreshold * max(amplitude).
Mask node_mask(std::span<const double> amplitude, double threshold = kNodeThreshold);

}  // namespace epsqp
