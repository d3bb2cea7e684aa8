#include "epsqp/numerics.hpp"

#include <algorithm>
#include <deque>

#include "epsqp/fft.hpp"

namespace epsqp {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// (i k)^order for each FFT-ordered wavenumber; odd orders drop the Nyquist mode,
// whose derivative is not representable as a real-symmetric multiplier.
CVec derivative_multiplier(const Grid1D& grid, int order) {
    require(order >= 1, "spectral_derivative: order must be >= 1");
    const RVec k = grid.wavenumbers();
    CVec mult(k.size());
    for (std::size_t j = 0; j < k.size(); ++j) mult[j] = std::pow(cplx(0.0, k[j]), order);
    if (order % 2 == 1) mult[k.size() / 2] = 0.0;
    return mult;
}

RVec real_part(const CVec& v) {
    RVec out(v.size());
    std::transform(v.begin(), v.end(), out.begin(), [](cplx z) { return z.real(); });
    return out;
}

CVec to_complex(std::span<const double> v) { return CVec(v.begin(), v.end()); }

}  // namespace

CVec spectral_derivative(std::span<const cplx> f, const Grid1D& grid, int order) {
    require(f.size() == grid.size(), "spectral_derivative: field size does not match grid");
    const CVec mult = derivative_multiplier(grid, order);
    CVec work(f.begin(), f.end());
    fft::transform(work, fft::Direction::Forward);
    const double inv_n = 1.0 / static_cast<double>(work.size());
    for (std::size_t j = 0; j < work.size(); ++j) work[j] *= mult[j] * inv_n;
    fft::transform(work, fft::Direction::Backward);
    return work;
}

RVec spectral_derivative(std::span<const double> f, const Grid1D& grid, int order) {
    return real_part(spectral_derivative(std::span<const cplx>(to_complex(f)), grid, order));
}

CVec spectral_derivative(std::span<const cplx> f, const Grid2D& grid, Axis axis, int order) {
    require(f.size() == grid.size(), "spectral_derivative: field size does not match grid");
    const std::size_t np = grid.np();
    const std::size_t nq = grid.nq();
    CVec work(f.begin(), f.end());
    const bool along_q = axis == Axis::Q;
    const Grid1D& axis_grid = along_q ? grid.q_axis : grid.p_axis;
    const CVec mult = derivative_multiplier(axis_grid, order);
    const std::size_t n = axis_grid.size();
    const std::size_t howmany = along_q ? np : nq;
    const std::size_t stride = along_q ? 1 : nq;
    const std::size_t dist = along_q ? nq : 1;

    fft::transform_many(work, n, howmany, stride, dist, fft::Direction::Forward);
    const double inv_n = 1.0 / static_cast<double>(n);
    for (std::size_t ip = 0; ip < np; ++ip)
        for (std::size_t iq = 0; iq < nq; ++iq) work[ip * nq + iq] *= mult[along_q ? iq : ip] * inv_n;
    fft::transform_many(work, n, howmany, stride, dist, fft::Direction::Backward);
    return work;
}

RVec spectral_derivative(std::span<const double> f, const Grid2D& grid, Axis axis, int order) {
    return real_part(spectral_derivative(std::span<const cplx>(to_complex(f)), grid, axis, order));
}

RVec unwrap_phase_1d(std::span<const double> wrapped, const Mask& mask) {
    require(wrapped.size() == mask.size(), "unwrap_phase_1d: mask size does not match field");
    if (std::none_of(mask.begin(), mask.end(), [](bool b) { return b; }))
        throw NumericalError("unwrap_phase_1d: every sample is masked");
    RVec out(wrapped.begin(), wrapped.end());
    for (std::size_t i = 1; i < out.size(); ++i) {
        if (mask[i] && mask[i - 1]) out[i] = out[i - 1] + wrap_to_pi(wrapped[i] - wrapped[i - 1]);
    }
    return out;
}

namespace {

struct Segment {
    std::size_t row;
    std::size_t begin;  // first q-index
    std::size_t end;    // one past last q-index
    bool aligned = false;
};

std::vector<Segment> find_segments(const Mask& mask, std::size_t np, std::size_t nq) {
    std::vector<Segment> segs;
    for (std::size_t ip = 0; ip < np; ++ip) {
        std::size_t iq = 0;
        while (iq < nq) {
            if (!mask[ip * nq + iq]) {
                ++iq;
                continue;
            }
            const std::size_t start = iq;
            while (iq < nq && mask[ip * nq + iq]) ++iq;
            segs.push_back({ip, start, iq});
        }
    }
    return segs;
}

double nearest_cycle(double diff) { return kTwoPi * std::round(diff / kTwoPi); }

void shift_segment(RVec& field, const Segment& s, std::size_t nq, double shift) {
    for (std::size_t iq = s.begin; iq < s.end; ++iq) field[s.row * nq + iq] += shift;
}

}  // namespace

RVec unwrap_phase_2d(std::span<const double> wrapped, const Mask& mask, const Grid2D& grid,
                     std::optional<std::span<const double>> amplitude) {
    const std::size_t np = grid.np();
    const std::size_t nq = grid.nq();
    require(wrapped.size() == grid.size() && mask.size() == grid.size(),
            "unwrap_phase_2d: field size does not match grid");
    if (amplitude) require(amplitude->size() == grid.size(), "unwrap_phase_2d: amplitude size mismatch");

    RVec out(wrapped.begin(), wrapped.end());
    for (std::size_t ip = 0; ip < np; ++ip) {
        std::span<const double> row(wrapped.data() + ip * nq, nq);
        const Mask row_mask(mask.begin() + static_cast<long>(ip * nq), mask.begin() + static_cast<long>((ip + 1) * nq));
        if (std::none_of(row_mask.begin(), row_mask.end(), [](bool b) { return b; })) continue;
        const RVec u = unwrap_phase_1d(row, row_mask);
        std::copy(u.begin(), u.end(), out.begin() + static_cast<long>(ip * nq));
    }

    RVec weight(nq, 0.0);
    for (std::size_t ip = 0; ip < np; ++ip)
        for (std::size_t iq = 0; iq < nq; ++iq) {
            const std::size_t idx = ip * nq + iq;
            if (mask[idx]) weight[iq] += amplitude ? (*amplitude)[idx] : 1.0;
        }
    const auto ref = static_cast<std::size_t>(std::max_element(weight.begin(), weight.end()) - weight.begin());

    RVec column(np);
    Mask column_mask(np);
    for (std::size_t ip = 0; ip < np; ++ip) {
        column[ip] = wrapped[ip * nq + ref];
        column_mask[ip] = mask[ip * nq + ref];
    }
    if (std::none_of(column_mask.begin(), column_mask.end(), [](bool b) { return b; }))
        throw NumericalError("unwrap_phase_2d: reference column is fully masked");
    const RVec column_unwrapped = unwrap_phase_1d(column, column_mask);

    std::vector<Segment> segs = find_segments(mask, np, nq);
    for (auto& s : segs) {
        if (s.begin <= ref && ref < s.end) {
            shift_segment(out, s, nq, nearest_cycle(column_unwrapped[s.row] - out[s.row * nq + ref]));
            s.aligned = true;
        }
    }

    // Remaining runs (cut off from the reference column by nodes) are attached
    // to aligned runs in adjacent rows, breadth first from the aligned set.
    std::vector<std::vector<std::size_t>> by_row(np);
    for (std::size_t i = 0; i < segs.size(); ++i) by_row[segs[i].row].push_back(i);
    std::deque<std::size_t> queue;
    for (std::size_t i = 0; i < segs.size(); ++i)
        if (segs[i].aligned) queue.push_back(i);
    while (!queue.empty()) {
        const Segment anchor = segs[queue.front()];
        queue.pop_front();
        for (const long dr : {-1L, 1L}) {
            const long r = static_cast<long>(anchor.row) + dr;
            if (r < 0 || r >= static_cast<long>(np)) continue;
            for (const std::size_t j : by_row[static_cast<std::size_t>(r)]) {
                Segment& s = segs[j];
                if (s.aligned) continue;
                const std::size_t lo = std::max(s.begin, anchor.begin);
                const std::size_t hi = std::min(s.end, anchor.end);
                if (lo >= hi) continue;
                double diff = 0.0;
                for (std::size_t iq = lo; iq < hi; ++iq) diff += out[anchor.row * nq + iq] - out[s.row * nq + iq];
                shift_segment(out, s, nq, nearest_cycle(diff / static_cast<double>(hi - lo)));
                s.aligned = true;
                queue.push_back(j);
            }
        }
    }
    return out;
}

double l2_norm(std::span<const cplx> f, double measure) {
    double sum = 0.0;
    for (const cplx& z : f) sum += std::norm(z);
    return std::sqrt(sum * measure);
}

double l2_norm(std::span<const double> f, double measure) {
    double sum = 0.0;
    for (const double x : f) sum += x * x;
    return std::sqrt(sum * measure);
}

double relative_l2(std::span<const cplx> a, std::span<const cplx> b) {
    require(a.size() == b.size(), "relative_l2: size mismatch");
    double num = 0.0;
    double den = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        num += std::norm(a[i] - b[i]);
        den += std::norm(b[i]);
    }
    require(den > 0.0, "relative_l2: reference field is zero");
    return std::sqrt(num / den);
}

Mask node_mask(std::span<const double> amplitude, double threshold) {
    Mask mask(amplitude.size(), false);
    if (amplitude.empty()) return mask;
    const double peak = *std::max_element(amplitude.begin(), amplitude.end());
    if (!(peak > 0.0)) return mask;
    const double cut = threshold * peak;
    for (std::size_t i = 0; i < amplitude.size(); ++i) mask[i] = amplitude[i] >= cut;
    return mask;
}

}  // namespace epsqp
