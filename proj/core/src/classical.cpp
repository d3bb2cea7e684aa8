#include "epsqp/classical.hpp"

#include <algorithm>
#include <cmath>

#include "epsqp/error.hpp"

namespace epsqp {

double lagrangian_q(const PhysicalParams& params, double q, double qdot) {
    return 0.5 * params.mass() * qdot * qdot - params.V(q);
}

double lagrangian_p(const PhysicalParams& params, double p, double pdot, double q_bar) {
    const double kinetic = p * p / (2.0 * params.mass());
    if (params.is_linear()) return kinetic + q_bar * (params.b() + pdot);
    return kinetic - pdot * pdot / (2.0 * params.k());
}

double legendre_residual(const PhysicalParams& params, std::span<const StateSample> samples, ClassicalSpace space,
                         double q_bar) {
    double worst = 0.0;
    for (const StateSample& s : samples) {
        double lhs = 0.0;
        double rhs = 0.0;
        if (space == ClassicalSpace::Q) {
            const double p = params.mass() * s.velocity;  // dL^q/dqdot
            lhs = params.hamiltonian(p, s.coord);
            rhs = s.velocity * p - lagrangian_q(params, s.coord, s.velocity);
        } else {
            // dL^p/dpdot is the position: -pdot/k (harmonic) or q_bar (linear).
            const double q = params.is_linear() ? q_bar : -s.velocity / params.k();
            lhs = params.hamiltonian(s.coord, q);
            rhs = -s.velocity * q + lagrangian_p(params, s.coord, s.velocity, q_bar);
        }
        worst = std::max(worst, std::abs(lhs - rhs));
    }
    return worst;
}

namespace {

// RK4 for x'' = -w2 x, written as the first-order system (x, v).
Trajectory integrate_oscillator(double w2, double x0, double v0, double t_final, double dt, ClassicalSpace space) {
    require(dt > 0.0, "el_solve: dt must be positive");
    require(t_final >= 0.0, "el_solve: t_final must be non-negative");
    const auto steps = static_cast<std::size_t>(std::ceil(t_final / dt - 1e-9));
    const double h = steps > 0 ? t_final / static_cast<double>(steps) : 0.0;

    Trajectory traj{{0.0}, {x0}, {v0}, space};
    traj.times.reserve(steps + 1);
    traj.coord.reserve(steps + 1);
    traj.velocity.reserve(steps + 1);
    double x = x0;
    double v = v0;
    for (std::size_t s = 1; s <= steps; ++s) {
        const double k1x = v;
        const double k1v = -w2 * x;
        const double k2x = v + 0.5 * h * k1v;
        const double k2v = -w2 * (x + 0.5 * h * k1x);
        const double k3x = v + 0.5 * h * k2v;
        const double k3v = -w2 * (x + 0.5 * h * k2x);
        const double k4x = v + h * k3v;
        const double k4v = -w2 * (x + h * k3x);
        x += h / 6.0 * (k1x + 2.0 * k2x + 2.0 * k3x + k4x);
        v += h / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
        traj.times.push_back(static_cast<double>(s) * h);
        traj.coord.push_back(x);
        traj.velocity.push_back(v);
    }
    return traj;
}

}  // namespace

Trajectory el_solve_q(const PhysicalParams& params, double q0, double qdot0, double t_final, double dt) {
    require(params.is_harmonic(), "el_solve_q: harmonic potential required");
    return integrate_oscillator(params.k() / params.mass(), q0, qdot0, t_final, dt, ClassicalSpace::Q);
}

Trajectory el_solve_p(const PhysicalParams& params, double p0, double pdot0, double t_final, double dt) {
    require(params.is_harmonic(), "el_solve_p: harmonic potential required");
    return integrate_oscillator(params.k() / params.mass(), p0, pdot0, t_final, dt, ClassicalSpace::P);
}

MomentumInitialConditions translate_initial_conditions(const PhysicalParams& params, double q0, double qdot0) {
    require(params.is_harmonic(), "translate_initial_conditions: harmonic potential required");
    return {params.mass() * qdot0, -params.k() * q0};
}

double trajectory_energy(const PhysicalParams& params, const Trajectory& traj, std::size_t i) {
    require(params.is_harmonic(), "trajectory_energy: harmonic potential required");
    require(i < traj.coord.size(), "trajectory_energy: sample index out of range");
    const double x = traj.coord[i];
    const double v = traj.velocity[i];
    if (traj.space == ClassicalSpace::Q) return 0.5 * params.mass() * v * v + 0.5 * params.k() * x * x;
    return x * x / (2.0 * params.mass()) + v * v / (2.0 * params.k());
}

}  // namespace epsqp
