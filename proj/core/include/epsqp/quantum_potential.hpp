#pragma once

#include <span>
#include <variant>
#include <vector>

#include "epsqp/eps.hpp"
#include "epsqp/hamiltonian.hpp"
#include "epsqp/residual.hpp"
#include "epsqp/states.hpp"

namespace epsqp {

/// Sign of the phase in f = R exp(+-i S / hbar).
enum class PhaseSign { Plus, Minus };

/// Polar form of a 1D wavefunction. Position space uses psi = R e^{+iS/hbar};
/// momentum space uses phi = R e^{-iS/hbar}, the convention under which the
/// phase-space action splits as S = S^p + S^q - pq.
struct PolarField {
    Grid1D grid;
    RVec R;
    RVec S;
    Mask mask;
    Space space;
    PhaseSign sign;

    double masked_fraction() const;
};

enum class Arena { QSpace, PSpace, EpsQTerm, EpsPTerm };

struct QuantumPotentialProfile {
    std::variant<Grid1D, Grid2D> grid;
    RVec values;  ///< zero where masked
    Mask mask;
    Arena arena;
};

enum class QuantumTerm { Include, Omit };

PolarField polar_decompose(const WaveFunction& psi);

/// -(hbar^2 / 2m) R'' / R on the mask.
QuantumPotentialProfile quantum_potential_q(const PolarField& pf, const PhysicalParams& params);

/// -(hbar^2 k / 2) R'' / R on the mask. Harmonic potential only.
QuantumPotentialProfile quantum_potential_p(const PolarField& pf, const PhysicalParams& params);

/// The two amplitude terms of the phase-space Hamilton-Jacobi equation for a
/// given (possibly sheared) Hamiltonian:
///   q-term: -c[pi_q^2] hbar^2 (1/R) d^2R/dq^2,  p-term: -c[pi_p^2] hbar^2 (1/R) d^2R/dp^2.
struct EpsQuantumTerms {
    QuantumPotentialProfile q_term;
    QuantumPotentialProfile p_term;
};

EpsQuantumTerms eps_quantum_terms(const PhaseSpaceField& field, const ExtendedHamiltonian& h);

/// Position-space modified Hamilton-Jacobi residual
///   dS/dt - (hbar^2/2m) R''/R + (dS/dq)^2 / 2m + V(q).
/// With QuantumTerm::Omit the R''/R term is dropped (classical form).
ResidualReport hj_residual_q(const Snapshots<WaveFunction>& psi, const PhysicalParams& params,
                             QuantumTerm term = QuantumTerm::Include);

/// Momentum-space Hamilton-Jacobi residual for V = bq, which has no quantum term:
///   dS/dt + p^2/2m - b dS/dp,   with q = -dS/dp.
/// Input snapshots are momentum-space wavefunctions.
ResidualReport hj_residual_p_linear(const Snapshots<WaveFunction>& phi, const PhysicalParams& params);

/// Momentum-space modified Hamilton-Jacobi residual for V = kq^2/2:
///   dS/dt + p^2/2m - (hbar^2 k / 2) R''/R + (k/2) (dS/dp)^2.
ResidualReport hj_residual_p_harmonic(const Snapshots<WaveFunction>& phi, const PhysicalParams& params,
                                      QuantumTerm term = QuantumTerm::Include);

/// Phase-space modified Hamilton-Jacobi residual
///   dS/dt - (hbar^2/2m) R_qq/R [+ (hbar^2 k/2) R_pp/R] + H(dS/dp, dS/dq, p, q).
ResidualReport hj_residual_eps(const Snapshots<PhaseSpaceField>& chi, const PhysicalParams& params,
                               QuantumTerm term = QuantumTerm::Include);

struct TransformedResidual {
    double alpha;
    ResidualReport full;       ///< with the (1/2 + alpha)-weighted amplitude terms
    ResidualReport classical;  ///< amplitude terms deleted
    ResidualReport quantum;    ///< the amplitude-term field itself
    /// Density-weighted projection of -classical onto the bracket
    /// -(hbar^2/m) R_qq/R [+ hbar^2 k R_pp/R]; equals 1/2 + alpha when the
    /// transformed equation holds.
    double coefficient;
};

/// Hamilton-Jacobi residual of U_alpha chi under the sheared Hamiltonian.
TransformedResidual hj_residual_transformed(const Snapshots<PhaseSpaceField>& chi,
                                            const PhysicalParams& params, double alpha);

struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
    /// alpha at which the fitted line crosses zero (x = 1/2 + alpha).
    double alpha_zero = 0.0;
};

/// Ordinary least squares y = slope x + intercept. Needs >= 2 distinct x.
LineFit fit_line(std::span<const double> x, std::span<const double> y);

struct AlphaSweepEntry {
    double alpha;
    double term_norm;         ///< density-weighted RMS of the amplitude-term field
    double signed_term_norm;  ///< sign(1/2 + alpha) * term_norm
    double full_residual;
    double classical_residual;
    double coefficient;
    double masked_fraction;
};

struct AlphaSweepReport {
    std::vector<AlphaSweepEntry> entries;
    LineFit term_fit;         ///< signed_term_norm against 1/2 + alpha
    LineFit coefficient_fit;  ///< coefficient against 1/2 + alpha
};

/// Evaluate hj_residual_transformed at each alpha. alphas must be sorted,
/// contain -1/2 and have at least three entries. With `parallel`, alphas are
/// evaluated on separate threads; results do not depend on the thread count.
AlphaSweepReport alpha_sweep(const Snapshots<PhaseSpaceField>& chi, const PhysicalParams& params,
                             std::span<const double> alphas, bool parallel = false);

}  // namespace epsqp
