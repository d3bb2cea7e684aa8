#include "epsqp/states.hpp"

#include <cmath>
#include <numbers>

#include "epsqp/fft.hpp"

namespace epsqp {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr cplx kI{0.0, 1.0};

void require_position(const WaveFunction& psi, const char* op) {
    require(psi.space == Space::Position, std::string(op) + ": expected a position-space wavefunction");
}

}  // namespace

double WaveFunction::norm() const { return l2_norm(values, grid.spacing()); }

double WaveFunction::expectation(const std::function<double(double)>& f) const {
    double sum = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) sum += f(grid.point(i)) * std::norm(values[i]);
    return sum * grid.spacing();
}

PhasePoint harmonic_trajectory(const PhysicalParams& params, double q0, double p0, double t) {
    const double w = params.omega();
    const double m = params.mass();
    const double c = std::cos(w * t);
    const double s = std::sin(w * t);
    return {q0 * c + p0 / (m * w) * s, p0 * c - m * w * q0 * s};
}

PhasePoint linear_trajectory(const PhysicalParams& params, double q0, double p0, double t) {
    const double b = params.b();
    const double m = params.mass();
    return {q0 + p0 * t / m - b * t * t / (2.0 * m), p0 - b * t};
}

WaveFunction ho_coherent_state(const Grid1D& grid, const PhysicalParams& params, double q0, double p0, double t) {
    require(params.is_harmonic(), "ho_coherent_state: harmonic potential required");
    const double m = params.mass();
    const double hbar = params.hbar();
    const double w = params.omega();
    const auto [qc, pc] = harmonic_trajectory(params, q0, p0, t);
    const double a = m * w / hbar;
    const double theta = -0.5 * w * t + (pc * qc - p0 * q0) / (2.0 * hbar);
    const double norm = std::pow(a / kPi, 0.25);

    CVec values(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double x = grid.point(i) - qc;
        values[i] = norm * std::exp(cplx(-0.5 * a * x * x, pc * x / hbar + theta));
    }
    return {grid, std::move(values), Space::Position, t, params};
}

WaveFunction ho_eigenstate(const Grid1D& grid, const PhysicalParams& params, int n, double t) {
    require(params.is_harmonic(), "ho_eigenstate: harmonic potential required");
    require(n >= 0, "ho_eigenstate: quantum number must be non-negative");
    const double w = params.omega();
    const double a = params.mass() * w / params.hbar();
    const double scale = std::sqrt(a);
    const cplx phase = std::exp(-kI * (n + 0.5) * w * t);

    CVec values(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double xi = scale * grid.point(i);
        // Normalized Hermite functions by the three-term recurrence.
        double prev = 0.0;
        double cur = std::pow(a / kPi, 0.25) * std::exp(-0.5 * xi * xi);
        for (int j = 1; j <= n; ++j) {
            const double next = std::sqrt(2.0 / j) * xi * cur - std::sqrt((j - 1.0) / j) * prev;
            prev = cur;
            cur = next;
        }
        values[i] = cur * phase;
    }
    return {grid, std::move(values), Space::Position, t, params};
}

WaveFunction linear_potential_gaussian(const Grid1D& grid, const PhysicalParams& params, double q0, double p0,
                                       double sigma0, double t) {
    require(params.is_linear(), "linear_potential_gaussian: linear potential required");
    require(sigma0 > 0.0, "linear_potential_gaussian: sigma0 must be positive");
    const double m = params.mass();
    const double hbar = params.hbar();
    const double b = params.b();
    const auto [qc, pc] = linear_trajectory(params, q0, p0, t);
    const cplx z = 1.0 + kI * hbar * t / (m * sigma0 * sigma0);
    const double action = p0 * p0 * t / (2.0 * m) - p0 * b * t * t / m + b * b * t * t * t / (3.0 * m) - b * q0 * t;
    const cplx prefactor = std::pow(kPi * sigma0 * sigma0, -0.25) / std::sqrt(z);

    CVec values(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double x = grid.point(i) - qc;
        values[i] = prefactor * std::exp(-x * x / (2.0 * sigma0 * sigma0 * z) +
                                         kI * (pc * x + p0 * q0 + action) / hbar);
    }
    return {grid, std::move(values), Space::Position, t, params};
}

Grid1D momentum_grid(const Grid1D& position_grid, double hbar) {
    require(hbar > 0.0, "momentum_grid: hbar must be positive");
    const auto n = static_cast<double>(position_grid.size());
    const double dp = 2.0 * kPi * hbar / (n * position_grid.spacing());
    return Grid1D::make(position_grid.size(), -0.5 * n * dp, 0.5 * n * dp);
}

// With p_j = p_min + j dp, q_i = q_min + i dq and dp dq = 2 pi hbar / n, the
// kernel exp(-i p_j q_i / hbar) splits into exp(-i p_j q_min / hbar),
// (-1)^i from p_min = -n dp / 2, and the plain DFT kernel.
WaveFunction to_momentum_space(const WaveFunction& psi) {
    require_position(psi, "to_momentum_space");
    const double hbar = psi.params.hbar();
    const Grid1D p_grid = momentum_grid(psi.grid, hbar);
    const std::size_t n = psi.grid.size();
    CVec work(psi.values);
    for (std::size_t i = 1; i < n; i += 2) work[i] = -work[i];
    fft::transform(work, fft::Direction::Forward);
    const double scale = psi.grid.spacing() / std::sqrt(2.0 * kPi * hbar);
    const double q_min = psi.grid.min();
    for (std::size_t j = 0; j < n; ++j) work[j] *= scale * std::exp(-kI * p_grid.point(j) * q_min / hbar);
    return {p_grid, std::move(work), Space::Momentum, psi.t, psi.params};
}

WaveFunction to_momentum_space(const WaveFunction& psi, const Grid1D& p_grid) {
    require_position(psi, "to_momentum_space");
    const double hbar = psi.params.hbar();
    const double scale = psi.grid.spacing() / std::sqrt(2.0 * kPi * hbar);
    const RVec q = psi.grid.points();
    CVec out(p_grid.size());
    for (std::size_t j = 0; j < p_grid.size(); ++j) {
        const double p = p_grid.point(j);
        cplx sum = 0.0;
        for (std::size_t i = 0; i < q.size(); ++i) sum += psi.values[i] * std::exp(-kI * (p * q[i] / hbar));
        out[j] = scale * sum;
    }
    return {p_grid, std::move(out), Space::Momentum, psi.t, psi.params};
}

WaveFunction to_position_space(const WaveFunction& phi, const Grid1D& position_grid) {
    require(phi.space == Space::Momentum, "to_position_space: expected a momentum-space wavefunction");
    const double hbar = phi.params.hbar();
    require(phi.grid == momentum_grid(position_grid, hbar),
            "to_position_space: momentum grid is not paired with the position grid");
    const std::size_t n = phi.grid.size();
    const double q_min = position_grid.min();
    CVec work(n);
    for (std::size_t j = 0; j < n; ++j) work[j] = phi.values[j] * std::exp(kI * phi.grid.point(j) * q_min / hbar);
    fft::transform(work, fft::Direction::Backward);
    const double scale = phi.grid.spacing() / std::sqrt(2.0 * kPi * hbar);
    for (std::size_t i = 0; i < n; ++i) work[i] *= (i % 2 == 0 ? scale : -scale);
    return {position_grid, std::move(work), Space::Position, phi.t, phi.params};
}

WaveFunction splitstep_propagate(const WaveFunction& psi0, const PhysicalParams& params, double t_final, double dt) {
    require_position(psi0, "splitstep_propagate");
    require(dt > 0.0, "splitstep_propagate: dt must be positive");
    require(t_final >= 0.0, "splitstep_propagate: t_final must be non-negative");
    WaveFunction psi = psi0;
    psi.params = params;
    if (t_final == 0.0) return psi;

    const auto steps = static_cast<std::size_t>(std::ceil(t_final / dt - 1e-9));
    const double h = t_final / static_cast<double>(steps);
    const double hbar = params.hbar();
    const std::size_t n = psi.grid.size();

    CVec half_potential(n);
    for (std::size_t i = 0; i < n; ++i)
        half_potential[i] = std::exp(-kI * params.V(psi.grid.point(i)) * (0.5 * h / hbar));
    const RVec k = psi.grid.wavenumbers();
    CVec kinetic(n);
    const double inv_n = 1.0 / static_cast<double>(n);
    for (std::size_t j = 0; j < n; ++j)
        kinetic[j] = inv_n * std::exp(-kI * (hbar * k[j] * k[j] / (2.0 * params.mass()) * h));

    CVec& v = psi.values;
    for (std::size_t s = 0; s < steps; ++s) {
        for (std::size_t i = 0; i < n; ++i) v[i] *= half_potential[i];
        fft::transform(v, fft::Direction::Forward);
        for (std::size_t j = 0; j < n; ++j) v[j] *= kinetic[j];
        fft::transform(v, fft::Direction::Backward);
        for (std::size_t i = 0; i < n; ++i) v[i] *= half_potential[i];
    }
    psi.t = psi0.t + t_final;
    return psi;
}

cplx overlap(const WaveFunction& a, const WaveFunction& b) {
    require(a.grid == b.grid, "overlap: wavefunctions live on different grids");
    cplx sum = 0.0;
    for (std::size_t i = 0; i < a.values.size(); ++i) sum += std::conj(a.values[i]) * b.values[i];
    return sum * a.grid.spacing();
}

double l2_distance(const WaveFunction& a, const WaveFunction& b) {
    require(a.grid == b.grid, "l2_distance: wavefunctions live on different grids");
    double sum = 0.0;
    for (std::size_t i = 0; i < a.values.size(); ++i) sum += std::norm(a.values[i] - b.values[i]);
    return std::sqrt(sum * a.grid.spacing());
}

}  // namespace epsqp
