#pragma once

#include <span>
#include <vector>

#include "epsqp/params.hpp"

namespace epsqp {

enum class ClassicalSpace { Q, P };

/// A (coordinate, velocity) pair: (q, qdot) in q space or (p, pdot) in p space.
struct StateSample {
    double coord;
    double velocity;
};

struct Trajectory {
    std::vector<double> times;
    std::vector<double> coord;
    std::vector<double> velocity;
    ClassicalSpace space;
};

// L^q = m qdot^2/2 - V(q).
double lagrangian_q(const PhysicalParams& params, double q, double qdot);

// Harmonic: L^p = p^2/2m - pdot^2/2k.
// Linear: pdot is fixed at -b on actual orbits, so the coordinate conjugate
// to p is a constant; L^p = p^2/2m + q_bar (b + pdot).
double lagrangian_p(const PhysicalParams& params, double p, double pdot, double q_bar = 0.0);

/// max over samples of |H(dL^q/dqdot, q) - (qdot dL^q/dqdot - L^q)| (q space) or
/// |H(p, dL^p/dpdot) - (-pdot dL^p/dpdot + L^p)| (p space).
double legendre_residual(const PhysicalParams& params, std::span<const StateSample> samples,
                         ClassicalSpace space, double q_bar = 0.0);

/// Classical RK4 integration of m qddot = -k q.
Trajectory el_solve_q(const PhysicalParams& params, double q0, double qdot0, double t_final, double dt);

/// Classical RK4 integration of pddot = -(k/m) p.
Trajectory el_solve_p(const PhysicalParams& params, double p0, double pdot0, double t_final, double dt);

struct MomentumInitialConditions {
    double p0;
    double pdot0;
};

/// (m qdot0, -k q0).
MomentumInitialConditions translate_initial_conditions(const PhysicalParams& params, double q0, double qdot0);

/// Energy at sample i: m qdot^2/2 + k q^2/2 in q space, p^2/2m + pdot^2/2k in p space.
double trajectory_energy(const PhysicalParams& params, const Trajectory& traj, std::size_t i);

}  // namespace epsqp
