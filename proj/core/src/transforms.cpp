#include "epsqp/transforms.hpp"

#include <algorithm>

#include "epsqp/fft.hpp"

namespace epsqp {
namespace {
constexpr cplx kI{0.0, 1.0};
}

bool canonical_check(const TransformParams& t) { return t.canonical(); }

PhaseSpaceField apply_extended_transform(const PhaseSpaceField& field, double alpha) {
    const Grid2D& g = field.grid;
    const double base_alpha = field.kind.tag == FieldKind::Tag::Transformed ? field.kind.alpha : 0.0;
    PhaseSpaceField out{g, field.values, field.t, field.params, FieldKind::transformed(base_alpha + alpha)};
    if (alpha == 0.0) return out;

    const RVec u = g.p_axis.wavenumbers();
    const RVec v = g.q_axis.wavenumbers();
    const double ah = alpha * field.params.hbar();
    const double inv_n = 1.0 / static_cast<double>(g.size());
    fft::transform_2d(out.values, g.np(), g.nq(), fft::Direction::Forward);
    for (std::size_t ip = 0; ip < g.np(); ++ip)
        for (std::size_t iq = 0; iq < g.nq(); ++iq)
            out.values[g.index(ip, iq)] *= inv_n * std::exp(kI * (ah * u[ip] * v[iq]));
    fft::transform_2d(out.values, g.np(), g.nq(), fft::Direction::Backward);
    return out;
}

PhaseSpaceField wigner_direct(const WaveFunction& psi, const Grid2D& grid) {
    require(psi.space == Space::Position, "wigner_direct: expected a position-space wavefunction");
    require(psi.grid == grid.q_axis, "wigner_direct: psi does not live on the q axis");
    const std::size_t nq = grid.nq();
    const std::size_t np = grid.np();
    const double hbar = psi.params.hbar();
    const double dq = grid.q_axis.spacing();
    const double dtau = 2.0 * dq / hbar;
    const long half = static_cast<long>(nq / 2);

    // tau_j = j * dtau for j in [-n/2, n/2); shifts q +- hbar tau_j / 2 are q_{i +- j}.
    CVec kernel(np * nq);
    for (std::size_t ip = 0; ip < np; ++ip) {
        const double p = grid.p_axis.point(ip);
        for (long j = -half; j < half; ++j)
            kernel[ip * nq + static_cast<std::size_t>(j + half)] = std::exp(-kI * (p * dtau * static_cast<double>(j)));
    }

    PhaseSpaceField out{grid, CVec(grid.size(), 0.0), psi.t, psi.params, FieldKind::wigner()};
    CVec corr(nq);
    const auto n = static_cast<long>(nq);
    for (std::size_t iq = 0; iq < nq; ++iq) {
        const long i = static_cast<long>(iq);
        for (long j = -half; j < half; ++j) {
            const long plus = i + j;
            const long minus = i - j;
            const bool inside = plus >= 0 && plus < n && minus >= 0 && minus < n;
            corr[static_cast<std::size_t>(j + half)] =
                inside ? psi.values[static_cast<std::size_t>(plus)] * std::conj(psi.values[static_cast<std::size_t>(minus)])
                       : cplx(0.0);
        }
        for (std::size_t ip = 0; ip < np; ++ip) {
            const cplx* k = kernel.data() + ip * nq;
            cplx sum = 0.0;
            for (std::size_t j = 0; j < nq; ++j) sum += k[j] * corr[j];
            out.values[grid.index(ip, iq)] = sum * dtau;
        }
    }
    return out;
}

ConstantFit fit_global_constant(std::span<const cplx> target, std::span<const cplx> model) {
    require(target.size() == model.size(), "fit_global_constant: size mismatch");
    cplx num = 0.0;
    double den = 0.0;
    double target_sq = 0.0;
    for (std::size_t i = 0; i < model.size(); ++i) {
        num += std::conj(model[i]) * target[i];
        den += std::norm(model[i]);
        target_sq += std::norm(target[i]);
    }
    require(den > 0.0, "fit_global_constant: model field is zero");
    require(target_sq > 0.0, "fit_global_constant: target field is zero");
    const cplx c = num / den;
    double res = 0.0;
    for (std::size_t i = 0; i < model.size(); ++i) res += std::norm(target[i] - c * model[i]);
    return {c, std::sqrt(res / target_sq)};
}

ResidualReport wigner_equation_residual(const Snapshots<WaveFunction>& psi, const PhysicalParams& params,
                                        const Grid2D& grid) {
    const auto w = map_snapshots(psi, [&](const WaveFunction& f) { return wigner_direct(f, grid); });
    const CVec dw_dt = fd_time_derivative(w.before, w.center, w.after, w.dt);
    const CVec dw_dq = spectral_derivative(w.center.values, grid, Axis::Q, 1);
    const CVec dw_dp = spectral_derivative(w.center.values, grid, Axis::P, 1);
    const double m = params.mass();

    ResidualReport report;
    report.name = "wigner_equation";
    report.norm_kind = NormKind::FieldL2;
    report.field.resize(grid.size());
    report.mask.assign(grid.size(), true);
    CVec r(grid.size());
    for (std::size_t ip = 0; ip < grid.np(); ++ip) {
        const double p = grid.p_axis.point(ip);
        for (std::size_t iq = 0; iq < grid.nq(); ++iq) {
            const std::size_t idx = grid.index(ip, iq);
            r[idx] = dw_dt[idx] + (p / m) * dw_dq[idx] - params.dV(grid.q_axis.point(iq)) * dw_dp[idx];
            report.field[idx] = std::abs(r[idx]);
        }
    }
    report.l2_norm = l2_norm(r, grid.cell_area());
    report.max_norm = *std::max_element(report.field.begin(), report.field.end());
    report.metadata = {{"dt", psi.dt},
                       {"grid_np", static_cast<double>(grid.np())},
                       {"grid_nq", static_cast<double>(grid.nq())}};
    return report;
}

}  // namespace epsqp
