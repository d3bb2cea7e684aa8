#include "epsqp/eps.hpp"

#include <algorithm>

namespace epsqp {
namespace {

constexpr cplx kI{0.0, 1.0};

void check_factors(const WaveFunction& psi, const WaveFunction& phi, const Grid2D& grid, const char* op) {
    const std::string name(op);
    require(psi.space == Space::Position, name + ": psi must be a position-space wavefunction");
    require(phi.space == Space::Momentum, name + ": phi must be a momentum-space wavefunction");
    require(psi.t == phi.t, name + ": psi and phi are at different times");
    require(psi.params == phi.params, name + ": psi and phi have different parameters");
    require(psi.grid == grid.q_axis, name + ": psi does not live on the q axis");
    require(phi.grid == grid.p_axis, name + ": phi does not live on the p axis");
}

PhaseSpaceField product_field(const WaveFunction& psi, const WaveFunction& phi, const Grid2D& grid, bool with_phase,
                              FieldKind kind) {
    const double hbar = psi.params.hbar();
    CVec values(grid.size());
    for (std::size_t ip = 0; ip < grid.np(); ++ip) {
        const double p = grid.p_axis.point(ip);
        const cplx phi_conj = std::conj(phi.values[ip]);
        for (std::size_t iq = 0; iq < grid.nq(); ++iq) {
            cplx v = psi.values[iq] * phi_conj;
            if (with_phase) v *= std::exp(-kI * (p * grid.q_axis.point(iq) / hbar));
            values[grid.index(ip, iq)] = v;
        }
    }
    return {grid, std::move(values), psi.t, psi.params, kind};
}

}  // namespace

double PhaseSpaceField::norm() const { return l2_norm(values, grid.cell_area()); }

double ExtendedAction::masked_fraction() const {
    if (mask.empty()) return 0.0;
    const auto valid = std::count(mask.begin(), mask.end(), true);
    return 1.0 - static_cast<double>(valid) / static_cast<double>(mask.size());
}

PhaseSpaceField chi_build(const WaveFunction& psi, const WaveFunction& phi, const Grid2D& grid) {
    check_factors(psi, phi, grid, "chi_build");
    return product_field(psi, phi, grid, true, FieldKind::chi());
}

PhaseSpaceField separable_f(const WaveFunction& psi, const WaveFunction& phi, const Grid2D& grid) {
    check_factors(psi, phi, grid, "separable_f");
    return product_field(psi, phi, grid, false, FieldKind::f());
}

PhaseSpaceField apply_hamiltonian(const PhaseSpaceField& field, const ExtendedHamiltonian& h) {
    const auto& c = h.coefficients;
    const double hbar = h.params.hbar();
    const Grid2D& g = field.grid;
    const std::size_t n = g.size();
    PhaseSpaceField out{g, CVec(n, 0.0), field.t, field.params, field.kind};

    auto accumulate = [&](Axis axis, int order, auto&& weight) {
        const CVec d = spectral_derivative(field.values, g, axis, order);
        for (std::size_t ip = 0; ip < g.np(); ++ip)
            for (std::size_t iq = 0; iq < g.nq(); ++iq) {
                const std::size_t idx = g.index(ip, iq);
                out.values[idx] += weight(g.p_axis.point(ip), g.q_axis.point(iq)) * d[idx];
            }
    };

    // pi_q = -i hbar d_q, pi_p = -i hbar d_p.
    if (c.pi_q_sq != 0.0) accumulate(Axis::Q, 2, [&](double, double) { return cplx(-c.pi_q_sq * hbar * hbar); });
    if (c.p_pi_q != 0.0) accumulate(Axis::Q, 1, [&](double p, double) { return -kI * hbar * c.p_pi_q * p; });
    if (c.pi_p_sq != 0.0) accumulate(Axis::P, 2, [&](double, double) { return cplx(-c.pi_p_sq * hbar * hbar); });
    if (c.q_pi_p != 0.0 || c.pi_p != 0.0)
        accumulate(Axis::P, 1, [&](double, double q) { return -kI * hbar * (c.q_pi_p * q + c.pi_p); });
    return out;
}

PhaseSpaceField eps_rhs_apply(const PhaseSpaceField& field, const PhysicalParams& params,
                              HamiltonianChoice hamiltonian) {
    const ExtendedHamiltonian h = hamiltonian.transformed ? transformed_hamiltonian(params, hamiltonian.alpha)
                                                          : extended_hamiltonian(params);
    return apply_hamiltonian(field, h);
}

ExtendedAction polar_decompose_2d(const PhaseSpaceField& field) {
    const std::size_t n = field.grid.size();
    RVec R(n);
    RVec phase(n);
    for (std::size_t i = 0; i < n; ++i) {
        R[i] = std::abs(field.values[i]);
        phase[i] = std::arg(field.values[i]);
    }
    Mask mask = node_mask(R);
    RVec S = unwrap_phase_2d(phase, mask, field.grid, std::span<const double>(R));
    const double hbar = field.params.hbar();
    for (double& s : S) s *= hbar;
    return {field.grid, std::move(S), std::move(R), std::move(mask)};
}

double expectation(const std::function<double(double p, double q)>& observable, const PhaseSpaceField& chi) {
    const Grid2D& g = chi.grid;
    cplx num = 0.0;
    cplx den = 0.0;
    for (std::size_t ip = 0; ip < g.np(); ++ip) {
        const double p = g.p_axis.point(ip);
        for (std::size_t iq = 0; iq < g.nq(); ++iq) {
            const cplx w = std::conj(chi.at(ip, iq));
            num += observable(p, g.q_axis.point(iq)) * w;
            den += w;
        }
    }
    den *= g.cell_area();
    num *= g.cell_area();
    if (std::abs(den) < 1e-12) throw NumericalError("expectation: normalization integral vanishes");
    const cplx value = num / den;
    if (std::abs(value.imag()) > 1e-8)
        throw NumericalError("expectation: imaginary part " + std::to_string(value.imag()) + " exceeds 1e-8");
    return value.real();
}

ResidualReport eps_equation_residual(const Snapshots<PhaseSpaceField>& chi, const PhysicalParams& params,
                                     HamiltonianChoice hamiltonian) {
    const CVec dchi = fd_time_derivative(chi.before, chi.center, chi.after, chi.dt);
    const PhaseSpaceField h_chi = eps_rhs_apply(chi.center, params, hamiltonian);
    const double hbar = params.hbar();
    const std::size_t n = chi.center.grid.size();

    ResidualReport report;
    report.name = "eps_equation";
    report.norm_kind = NormKind::FieldL2;
    report.field.resize(n);
    report.mask.assign(n, true);
    CVec r(n);
    for (std::size_t i = 0; i < n; ++i) {
        r[i] = kI * hbar * dchi[i] - h_chi.values[i];
        report.field[i] = std::abs(r[i]);
    }
    report.l2_norm = l2_norm(r, chi.center.grid.cell_area());
    report.max_norm = *std::max_element(report.field.begin(), report.field.end());
    report.metadata = {{"dt", chi.dt},
                       {"alpha", hamiltonian.transformed ? hamiltonian.alpha : 0.0},
                       {"grid_np", static_cast<double>(chi.center.grid.np())},
                       {"grid_nq", static_cast<double>(chi.center.grid.nq())}};
    return report;
}

}  // namespace epsqp
