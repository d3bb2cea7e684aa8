#pragma once

#include <span>

#include "epsqp/eps.hpp"
#include "epsqp/hamiltonian.hpp"
#include "epsqp/residual.hpp"
#include "epsqp/states.hpp"

namespace epsqp {

/// Infinitesimal extended transformation
///   p -> p + alpha pi_q,  q -> q + beta pi_p,  pi_p -> pi_p + gamma q,  pi_q -> pi_q + eta p.
struct TransformParams {
    double alpha = 0.0;
    double beta = 0.0;
    double gamma = 0.0;
    double eta = 0.0;

    /// Canonical iff beta == alpha and gamma == eta == 0 (exact comparison).
    bool canonical() const { return beta == alpha && gamma == 0.0 && eta == 0.0; }
};

bool canonical_check(const TransformParams& t);

/// U_alpha = exp(-i alpha hbar d^2/dp dq), applied exactly in the 2D Fourier
/// domain: the (u, v) spectrum is multiplied by exp(i alpha hbar u v).
PhaseSpaceField apply_extended_transform(const PhaseSpaceField& field, double alpha);

/// W(p, q) = int psi(q + hbar tau/2) conj(psi(q - hbar tau/2)) exp(-i p tau) dtau,
/// with no prefactor. The tau lattice has step 2 dq / hbar so the shifts land on
/// grid points; samples beyond the q-grid are taken as zero.
/// psi must live on grid.q_axis.
PhaseSpaceField wigner_direct(const WaveFunction& psi, const Grid2D& grid);

/// Least-squares constant c minimising ||target - c * model||.
struct ConstantFit {
    cplx constant;
    /// ||target - c model|| / ||target||.
    double relative_deviation;
};

ConstantFit fit_global_constant(std::span<const cplx> target, std::span<const cplx> model);

/// Residual of the Wigner equation for linear/harmonic potentials, where only
/// the first-derivative term of V survives:
///   dW/dt + (p/m) dW/dq - V'(q) dW/dp.
/// W is built with wigner_direct from each position-space snapshot.
ResidualReport wigner_equation_residual(const Snapshots<WaveFunction>& psi,
                                        const PhysicalParams& params, const Grid2D& grid);

}  // namespace epsqp
