#pragma once

#include <string>
#include <vector>

#include "epsqp/params.hpp"

namespace epsqp {

/// Monomials that appear in the extended Hamiltonian for linear and harmonic
/// potentials, written in the conjugate momenta pi_p and pi_q.
enum class Monomial { PiQSquared, PPiQ, PiPSquared, QPiP, PiP };

std::string to_string(Monomial m);

struct HamiltonianCoefficients {
    double pi_q_sq = 0.0;
    double p_pi_q = 0.0;
    double pi_p_sq = 0.0;
    double q_pi_p = 0.0;
    double pi_p = 0.0;

    double operator[](Monomial m) const;
};

/// Extended Hamiltonian H(p + pi_q, q) - H(p, q + pi_p) after the shear
/// p -> p + alpha pi_q, q -> q + alpha pi_p. alpha = 0 is the untransformed
/// operator; alpha = -1/2 is the Wigner representation.
struct ExtendedHamiltonian {
    PhysicalParams params;
    double alpha;
    HamiltonianCoefficients coefficients;

    /// Classical value with the conjugate momenta treated as numbers.
    double evaluate(double pi_p, double pi_q, double p, double q) const;

    /// Monomials with a non-zero coefficient, in enum order.
    std::vector<Monomial> terms() const;
};

using TransformedHamiltonian = ExtendedHamiltonian;

/// The untransformed extended Hamiltonian (alpha = 0).
ExtendedHamiltonian extended_hamiltonian(const PhysicalParams& params);

/// Coefficients after the alpha-shear:
///   linear:   (1 + 2a) pi_q^2/2m + (p/m) pi_q - b pi_p
///   harmonic: (1 + 2a) pi_q^2/2m + (p/m) pi_q - (1 + 2a) k pi_p^2/2 - k q pi_p
ExtendedHamiltonian transformed_hamiltonian(const PhysicalParams& params, double alpha);

}  // namespace epsqp
