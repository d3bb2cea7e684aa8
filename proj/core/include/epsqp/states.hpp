#pragma once

#include <functional>

#include "epsqp/grid.hpp"
#include "epsqp/numerics.hpp"
#include "epsqp/params.hpp"

namespace epsqp {

enum class Space { Position, Momentum };

/// Complex wavefunction sampled on a 1D grid. Constructors below return
/// states normalized to 1 under sum |psi|^2 * spacing.
struct WaveFunction {
    Grid1D grid;
    CVec values;
    Space space;
    double t;
    PhysicalParams params;

    double norm() const;
    /// sum f(x)|psi(x)|^2 dx.
    double expectation(const std::function<double(double)>& f) const;
};

struct PhasePoint {
    double q;
    double p;
};

/// Classical harmonic trajectory through (q0, p0) at t = 0.
PhasePoint harmonic_trajectory(const PhysicalParams& params, double q0, double p0, double t);

/// Classical trajectory under V = bq: q0 + p0 t/m - b t^2/2m, p0 - b t.
PhasePoint linear_trajectory(const PhysicalParams& params, double q0, double p0, double t);

/// Harmonic-oscillator coherent state: Gaussian of width sqrt(hbar/m omega)
/// riding the classical trajectory from (q0, p0), with the phase that makes
/// it an exact Schrodinger solution.
WaveFunction ho_coherent_state(const Grid1D& grid, const PhysicalParams& params,
                               double q0, double p0, double t);

/// n-th harmonic-oscillator eigenstate with its exp(-i E_n t / hbar) phase.
WaveFunction ho_eigenstate(const Grid1D& grid, const PhysicalParams& params, int n, double t);

/// Gaussian exp(-(q - q0)^2 / 2 sigma0^2 + i p0 q / hbar) at t = 0, evolved
/// exactly under V = bq: the centre follows linear_trajectory and the width
/// spreads as for a free particle.
WaveFunction linear_potential_gaussian(const Grid1D& grid, const PhysicalParams& params,
                                       double q0, double p0, double sigma0, double t);

/// Momentum grid paired with a position grid by the discrete transform:
/// spacing 2*pi*hbar / (n dq), centred on p = 0.
Grid1D momentum_grid(const Grid1D& position_grid, double hbar);

/// phi(p) = (2 pi hbar)^{-1/2} int psi(q) exp(-i p q / hbar) dq on the paired
/// momentum grid (FFT).
WaveFunction to_momentum_space(const WaveFunction& psi);

/// Same integral evaluated by direct quadrature on an arbitrary momentum grid.
WaveFunction to_momentum_space(const WaveFunction& psi, const Grid1D& p_grid);

/// Inverse of the paired transform. phi must live on momentum_grid(position_grid, hbar).
WaveFunction to_position_space(const WaveFunction& phi, const Grid1D& position_grid);

/// Second-order symmetric split-step evolution under H = p^2/2m + V(q).
/// Oracle only; never part of the verification path.
WaveFunction splitstep_propagate(const WaveFunction& psi0, const PhysicalParams& params,
                                 double t_final, double dt);

/// <a|b> with the grid measure.
cplx overlap(const WaveFunction& a, const WaveFunction& b);

/// ||a - b|| with the grid measure.
double l2_distance(const WaveFunction& a, const WaveFunction& b);

}  // namespace epsqp
