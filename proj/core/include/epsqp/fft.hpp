#pragma once

#include <complex>
#include <cstddef>
#include <span>

namespace epsqp::fft {

using cplx = std::complex<double>;

enum class Direction { Forward, Backward };

/// Unnormalized in-place transform. Forward uses the kernel exp(-2*pi*i*jk/n),
/// Backward exp(+2*pi*i*jk/n); Backward(Forward(x)) == n * x.
void transform(std::span<cplx> data, Direction dir);

/// Batched 1D transforms over a strided layout (FFTW "advanced" interface):
/// `howmany` transforms of length n, element stride `stride`, batch distance `dist`.
void transform_many(std::span<cplx> data, std::size_t n, std::size_t howmany,
                    std::size_t stride, std::size_t dist, Direction dir);

/// Unnormalized in-place 2D transform of a row-major rows x cols array.
void transform_2d(std::span<cplx> data, std::size_t rows, std::size_t cols, Direction dir);

}  // namespace epsqp::fft
