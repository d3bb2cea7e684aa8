#pragma once

#include <functional>

#include "epsqp/grid.hpp"
#include "epsqp/hamiltonian.hpp"
#include "epsqp/numerics.hpp"
#include "epsqp/params.hpp"
#include "epsqp/residual.hpp"
#include "epsqp/states.hpp"

namespace epsqp {

struct FieldKind {
    enum class Tag { Chi, F, Wigner, Transformed };
    Tag tag = Tag::Chi;
    /// Shear parameter; meaningful for Transformed only.
    double alpha = 0.0;

    static FieldKind chi() { return {Tag::Chi, 0.0}; }
    static FieldKind f() { return {Tag::F, 0.0}; }
    static FieldKind wigner() { return {Tag::Wigner, -0.5}; }
    static FieldKind transformed(double alpha) { return {Tag::Transformed, alpha}; }

    friend bool operator==(const FieldKind&, const FieldKind&) = default;
};

/// Complex field on a (p, q) lattice: chi, F, W or a sheared chi.
struct PhaseSpaceField {
    Grid2D grid;
    CVec values;
    double t;
    PhysicalParams params;
    FieldKind kind;

    const cplx& at(std::size_t ip, std::size_t iq) const { return values[grid.index(ip, iq)]; }
    cplx& at(std::size_t ip, std::size_t iq) { return values[grid.index(ip, iq)]; }

    /// sqrt(sum |f|^2 dp dq).
    double norm() const;
};

/// Polar form chi = R exp(i S / hbar) of a phase-space field.
struct ExtendedAction {
    Grid2D grid;
    RVec S;
    RVec R;
    Mask mask;

    double masked_fraction() const;
};

/// Which extended Hamiltonian drives the evolution.
struct HamiltonianChoice {
    bool transformed = false;
    double alpha = 0.0;

    static HamiltonianChoice original() { return {false, 0.0}; }
    static HamiltonianChoice sheared(double alpha) { return {true, alpha}; }
};

/// chi(p, q, t) = psi(q, t) conj(phi(p, t)) exp(-i p q / hbar).
/// psi must live on grid.q_axis and phi on grid.p_axis, at equal times and params.
PhaseSpaceField chi_build(const WaveFunction& psi, const WaveFunction& phi, const Grid2D& grid);

/// F(p, q, t) = psi(q, t) conj(phi(p, t)), i.e. chi without the exp(-ipq/hbar) factor.
PhaseSpaceField separable_f(const WaveFunction& psi, const WaveFunction& phi, const Grid2D& grid);

/// Apply the extended Hamiltonian as a differential operator, with
/// pi_q = -i hbar d/dq and pi_p = -i hbar d/dp evaluated spectrally.
/// For the original operator this is
///   -i hbar [(p/m) d_q - V'(q) d_p] chi - (hbar^2/2) [(1/m) d_q^2 - V'' d_p^2] chi.
PhaseSpaceField eps_rhs_apply(const PhaseSpaceField& field, const PhysicalParams& params,
                              HamiltonianChoice hamiltonian);

/// Same, for an explicit coefficient table.
PhaseSpaceField apply_hamiltonian(const PhaseSpaceField& field, const ExtendedHamiltonian& h);

/// R = |field|, S = hbar * unwrapped arg(field) on the node mask.
ExtendedAction polar_decompose_2d(const PhaseSpaceField& field);

/// Normalized averaging rule: int O conj(chi) dp dq / int conj(chi) dp dq.
/// Throws NumericalError if |denominator| < 1e-12 or the result carries an
/// imaginary part above 1e-8.
double expectation(const std::function<double(double p, double q)>& observable,
                   const PhaseSpaceField& chi);

/// Residual field i hbar d(chi)/dt - H chi (central differences in time).
/// The report uses NormKind::FieldL2.
ResidualReport eps_equation_residual(const Snapshots<PhaseSpaceField>& chi,
                                     const PhysicalParams& params,
                                     HamiltonianChoice hamiltonian = HamiltonianChoice::original());

}  // namespace epsqp
