#include "epsqp/cli/registry.hpp"

#include <stdexcept>

namespace epsqp::cli {

const std::vector<Tolerance>& tolerances() {
    static const std::vector<Tolerance> table{
        {"norm", 1e-10, Bound::Upper, "|<psi|psi> - 1|"},
        {"splitstep", 1e-8, Bound::Upper, "L2 distance between split-step and analytic states"},
        {"center", 1e-8, Bound::Upper, "wavefunction <q> against the classical trajectory"},
        {"quantum_potential_profile", 1e-8, Bound::Upper, "max error of Q against its closed form on the mask"},
        {"hj_residual", 1e-5, Bound::Upper, "density-weighted Hamilton-Jacobi residual"},
        {"dt_halving_ratio", 3.5, Bound::Lower, "residual(dt) / residual(dt/2)"},
        {"classical_form_gap", 1e-3, Bound::Lower, "residual with amplitude terms deleted, where they do not vanish"},
        {"term_deletion", 1e-6, Bound::Upper, "weighted RMS of (classical residual + Q)"},
        {"eps_equation", 1e-6, Bound::Upper, "grid L2 residual of i hbar chi_t - H chi"},
        {"stationary", 1e-8, Bound::Upper, "max |H chi| for an eigenstate"},
        {"ground_moment", 1e-8, Bound::Upper, "averaging-rule moments of the ground state"},
        {"orbit_tracking", 1e-7, Bound::Upper, "averaging-rule <q>, <p> against the classical orbit"},
        {"wigner_fit", 1e-8, Bound::Upper, "relative L2 of W - c U_{-1/2} chi"},
        {"wigner_constant", 1e-6, Bound::Upper, "spread of the fitted constant across grid sizes"},
        {"wigner_imag", 1e-10, Bound::Upper, "max |Im W|"},
        {"wigner_marginal", 1e-8, Bound::Upper, "relative L2 of the marginals against 2 pi |psi|^2, 2 pi |phi|^2"},
        {"wigner_equation", 1e-4, Bound::Upper, "grid L2 residual of the Wigner equation"},
        {"convergence_order", 1.9, Bound::Lower, "log2 of the residual ratio under dt halving"},
        {"sweep_r_squared", 0.999, Bound::Lower, "R^2 of the signed term norm against 1/2 + alpha"},
        {"sweep_zero", 1e-3, Bound::Upper, "|alpha* + 1/2| of the fitted zero crossing"},
        {"sweep_vanishing", 1e-6, Bound::Upper, "term norm at alpha = -1/2 relative to alpha = 0"},
        {"sweep_grid_shift", 1e-4, Bound::Upper, "|alpha*| shift when the grid is refined"},
        {"factorization", 1e-10, Bound::Upper, "relative error of |chi| = |psi| |phi|"},
        {"phase_additivity", 1e-7, Bound::Upper, "spread of S + pq - S^q - S^p over the mask"},
        {"term_separability", 1e-8, Bound::Upper, "max |q-term of chi - Q(q)|"},
        {"trajectory", 1e-8, Bound::Upper, "Euler-Lagrange solution against the closed form"},
        {"cross_space", 1e-7, Bound::Upper, "max |p - m qdot|, |pdot + k q|"},
        {"energy_drift", 1e-9, Bound::Upper, "max energy drift over one period"},
        {"legendre", 1e-13, Bound::Upper, "max Legendre-transform residual"},
    };
    return table;
}

const Tolerance& tolerance(const std::string& key) {
    for (const Tolerance& t : tolerances())
        if (key == t.key) return t;
    throw std::out_of_range("unknown tolerance key: " + key);
}

}  // namespace epsqp::cli
