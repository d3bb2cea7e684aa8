#include "epsqp/quantum_potential.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <numeric>

#include "epsqp/transforms.hpp"

namespace epsqp {
namespace {

// Phase gradients come from log-derivatives, d(arg f) = Im(df / f), so the
// Hamilton-Jacobi checks never depend on where an unwrapped branch is anchored.
double phase_rate(cplx derivative, cplx value) { return (derivative / value).imag(); }

RVec amplitude(std::span<const cplx> f) {
    RVec R(f.size());
    std::transform(f.begin(), f.end(), R.begin(), [](cplx z) { return std::abs(z); });
    return R;
}

double weighted_rms(const RVec& r, const RVec& R, const Mask& mask) {
    double num = 0.0;
    double den = 0.0;
    for (std::size_t i = 0; i < r.size(); ++i) {
        if (!mask[i]) continue;
        const double w = R[i] * R[i];
        num += w * r[i] * r[i];
        den += w;
    }
    if (!(den > 0.0)) throw NumericalError("residual: every sample is masked");
    return std::sqrt(num / den);
}

double masked_fraction_of(const Mask& mask) {
    if (mask.empty()) return 0.0;
    return 1.0 - static_cast<double>(std::count(mask.begin(), mask.end(), true)) / static_cast<double>(mask.size());
}

ResidualReport density_report(std::string name, RVec r, const RVec& R, Mask mask) {
    ResidualReport report;
    report.name = std::move(name);
    report.norm_kind = NormKind::DensityWeighted;
    for (std::size_t i = 0; i < r.size(); ++i)
        if (!mask[i]) r[i] = 0.0;
    report.l2_norm = weighted_rms(r, R, mask);
    double peak = 0.0;
    for (const double x : r) peak = std::max(peak, std::abs(x));
    report.max_norm = peak;
    report.masked_fraction = masked_fraction_of(mask);
    report.field = std::move(r);
    report.mask = std::move(mask);
    return report;
}

// Amplitude term  coefficient * R'' / R  on the mask, zero elsewhere.
RVec curvature_term(const RVec& R, const RVec& R2, const Mask& mask, double coefficient) {
    RVec out(R.size(), 0.0);
    for (std::size_t i = 0; i < R.size(); ++i)
        if (mask[i]) out[i] = coefficient * R2[i] / R[i];
    return out;
}

void require_space(const Snapshots<WaveFunction>& s, Space space, const char* op) {
    const bool ok = s.before.space == space && s.center.space == space && s.after.space == space;
    require(ok, std::string(op) + (space == Space::Position ? ": position-space snapshots required"
                                                            : ": momentum-space snapshots required"));
}

// Log-derivative data shared by the 1D residuals: S_t and S_x for the +i
// convention f = R exp(iS/hbar), plus R and the node mask.
struct PhaseRates1D {
    RVec S_t;
    RVec S_x;
    RVec R;
    Mask mask;
};

PhaseRates1D phase_rates_1d(const Snapshots<WaveFunction>& s) {
    const WaveFunction& f = s.center;
    const CVec df_dt = fd_time_derivative(s.before, s.center, s.after, s.dt);
    const CVec df_dx = spectral_derivative(f.values, f.grid, 1);
    const double hbar = f.params.hbar();
    PhaseRates1D out{RVec(f.values.size(), 0.0), RVec(f.values.size(), 0.0), amplitude(f.values), {}};
    out.mask = node_mask(out.R);
    for (std::size_t i = 0; i < f.values.size(); ++i) {
        if (!out.mask[i]) continue;
        out.S_t[i] = hbar * phase_rate(df_dt[i], f.values[i]);
        out.S_x[i] = hbar * phase_rate(df_dx[i], f.values[i]);
    }
    return out;
}

void add_common_metadata(ResidualReport& r, double dt, std::size_t n, QuantumTerm term) {
    r.metadata["dt"] = dt;
    r.metadata["grid_n"] = static_cast<double>(n);
    r.metadata["quantum_term_included"] = term == QuantumTerm::Include ? 1.0 : 0.0;
}

// Hamilton-Jacobi pieces for a phase-space field under an extended Hamiltonian.
struct EpsFields {
    RVec full;     // S_t + q_term + p_term + H(S_p, S_q, p, q)
    RVec q_term;   // -c[pi_q^2] hbar^2 R_qq / R
    RVec p_term;   // -c[pi_p^2] hbar^2 R_pp / R
    RVec R;
    RVec R_qq;
    RVec R_pp;
    Mask mask;
};

struct AmplitudeCurvature {
    RVec R;
    RVec R_qq;
    RVec R_pp;
    Mask mask;
};

AmplitudeCurvature amplitude_curvature(const PhaseSpaceField& field) {
    AmplitudeCurvature a;
    a.R = amplitude(field.values);
    a.mask = node_mask(a.R);
    if (std::none_of(a.mask.begin(), a.mask.end(), [](bool b) { return b; }))
        throw NumericalError("phase-space field has no sample above the node threshold");
    a.R_qq = spectral_derivative(std::span<const double>(a.R), field.grid, Axis::Q, 2);
    a.R_pp = spectral_derivative(std::span<const double>(a.R), field.grid, Axis::P, 2);
    return a;
}

EpsFields eps_fields(const Snapshots<PhaseSpaceField>& s, const ExtendedHamiltonian& h) {
    const PhaseSpaceField& f = s.center;
    const Grid2D& g = f.grid;
    const double hbar = h.params.hbar();
    const CVec df_dt = fd_time_derivative(s.before, s.center, s.after, s.dt);
    const CVec df_dp = spectral_derivative(f.values, g, Axis::P, 1);
    const CVec df_dq = spectral_derivative(f.values, g, Axis::Q, 1);
    AmplitudeCurvature a = amplitude_curvature(f);

    EpsFields out;
    out.q_term = curvature_term(a.R, a.R_qq, a.mask, -h.coefficients.pi_q_sq * hbar * hbar);
    out.p_term = curvature_term(a.R, a.R_pp, a.mask, -h.coefficients.pi_p_sq * hbar * hbar);
    out.full.assign(g.size(), 0.0);
    for (std::size_t ip = 0; ip < g.np(); ++ip) {
        const double p = g.p_axis.point(ip);
        for (std::size_t iq = 0; iq < g.nq(); ++iq) {
            const std::size_t i = g.index(ip, iq);
            if (!a.mask[i]) continue;
            const double S_t = hbar * phase_rate(df_dt[i], f.values[i]);
            const double S_p = hbar * phase_rate(df_dp[i], f.values[i]);
            const double S_q = hbar * phase_rate(df_dq[i], f.values[i]);
            out.full[i] = S_t + out.q_term[i] + out.p_term[i] + h.evaluate(S_p, S_q, p, g.q_axis.point(iq));
        }
    }
    out.R = std::move(a.R);
    out.R_qq = std::move(a.R_qq);
    out.R_pp = std::move(a.R_pp);
    out.mask = std::move(a.mask);
    return out;
}

RVec subtract(const RVec& a, const RVec& b, const RVec& c) {
    RVec out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i] - c[i];
    return out;
}

RVec add(const RVec& a, const RVec& b) {
    RVec out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
    return out;
}

}  // namespace

double PolarField::masked_fraction() const { return masked_fraction_of(mask); }

PolarField polar_decompose(const WaveFunction& psi) {
    RVec R = amplitude(psi.values);
    Mask mask = node_mask(R);
    RVec phase(psi.values.size());
    std::transform(psi.values.begin(), psi.values.end(), phase.begin(), [](cplx z) { return std::arg(z); });
    RVec S = unwrap_phase_1d(phase, mask);
    const PhaseSign sign = psi.space == Space::Position ? PhaseSign::Plus : PhaseSign::Minus;
    const double scale = (sign == PhaseSign::Plus ? 1.0 : -1.0) * psi.params.hbar();
    for (double& s : S) s *= scale;
    return {psi.grid, std::move(R), std::move(S), std::move(mask), psi.space, sign};
}

QuantumPotentialProfile quantum_potential_q(const PolarField& pf, const PhysicalParams& params) {
    require(pf.space == Space::Position, "quantum_potential_q: position-space polar field required");
    const RVec R2 = spectral_derivative(std::span<const double>(pf.R), pf.grid, 2);
    const double hbar = params.hbar();
    return {pf.grid, curvature_term(pf.R, R2, pf.mask, -hbar * hbar / (2.0 * params.mass())), pf.mask, Arena::QSpace};
}

QuantumPotentialProfile quantum_potential_p(const PolarField& pf, const PhysicalParams& params) {
    require(pf.space == Space::Momentum, "quantum_potential_p: momentum-space polar field required");
    require(params.is_harmonic(), "quantum_potential_p: the p-space quantum potential exists only for V = kq^2/2");
    const RVec R2 = spectral_derivative(std::span<const double>(pf.R), pf.grid, 2);
    const double hbar = params.hbar();
    return {pf.grid, curvature_term(pf.R, R2, pf.mask, -hbar * hbar * params.k() / 2.0), pf.mask, Arena::PSpace};
}

EpsQuantumTerms eps_quantum_terms(const PhaseSpaceField& field, const ExtendedHamiltonian& h) {
    const AmplitudeCurvature a = amplitude_curvature(field);
    const double hbar = h.params.hbar();
    return {{field.grid, curvature_term(a.R, a.R_qq, a.mask, -h.coefficients.pi_q_sq * hbar * hbar), a.mask,
             Arena::EpsQTerm},
            {field.grid, curvature_term(a.R, a.R_pp, a.mask, -h.coefficients.pi_p_sq * hbar * hbar), a.mask,
             Arena::EpsPTerm}};
}

ResidualReport hj_residual_q(const Snapshots<WaveFunction>& psi, const PhysicalParams& params, QuantumTerm term) {
    require_space(psi, Space::Position, "hj_residual_q");
    const PhaseRates1D d = phase_rates_1d(psi);
    const PolarField pf = polar_decompose(psi.center);
    const RVec Q = quantum_potential_q(pf, params).values;
    const Grid1D& g = psi.center.grid;
    const double m = params.mass();
    RVec r(g.size(), 0.0);
    for (std::size_t i = 0; i < g.size(); ++i) {
        if (!d.mask[i]) continue;
        r[i] = d.S_t[i] + d.S_x[i] * d.S_x[i] / (2.0 * m) + params.V(g.point(i));
        if (term == QuantumTerm::Include) r[i] += Q[i];
    }
    ResidualReport report = density_report(term == QuantumTerm::Include ? "hj_q" : "hj_q_classical", std::move(r),
                                           d.R, d.mask);
    add_common_metadata(report, psi.dt, g.size(), term);
    return report;
}

// The printed momentum-space equations hold for the action of
// phi = R exp(+iS/hbar); S here is minus the PolarField (Minus convention) action.
ResidualReport hj_residual_p_linear(const Snapshots<WaveFunction>& phi, const PhysicalParams& params) {
    require(params.is_linear(), "hj_residual_p_linear: linear potential required");
    require_space(phi, Space::Momentum, "hj_residual_p_linear");
    const PhaseRates1D d = phase_rates_1d(phi);
    const Grid1D& g = phi.center.grid;
    const double m = params.mass();
    const double b = params.b();
    RVec r(g.size(), 0.0);
    for (std::size_t i = 0; i < g.size(); ++i) {
        if (!d.mask[i]) continue;
        const double p = g.point(i);
        r[i] = d.S_t[i] + p * p / (2.0 * m) - b * d.S_x[i];
    }
    ResidualReport report = density_report("hj_p_linear", std::move(r), d.R, d.mask);
    add_common_metadata(report, phi.dt, g.size(), QuantumTerm::Omit);
    return report;
}

ResidualReport hj_residual_p_harmonic(const Snapshots<WaveFunction>& phi, const PhysicalParams& params,
                                      QuantumTerm term) {
    require(params.is_harmonic(), "hj_residual_p_harmonic: harmonic potential required");
    require_space(phi, Space::Momentum, "hj_residual_p_harmonic");
    const PhaseRates1D d = phase_rates_1d(phi);
    const RVec Q = quantum_potential_p(polar_decompose(phi.center), params).values;
    const Grid1D& g = phi.center.grid;
    const double m = params.mass();
    const double k = params.k();
    RVec r(g.size(), 0.0);
    for (std::size_t i = 0; i < g.size(); ++i) {
        if (!d.mask[i]) continue;
        const double p = g.point(i);
        r[i] = d.S_t[i] + p * p / (2.0 * m) + 0.5 * k * d.S_x[i] * d.S_x[i];
        if (term == QuantumTerm::Include) r[i] += Q[i];
    }
    ResidualReport report = density_report(term == QuantumTerm::Include ? "hj_p_harmonic" : "hj_p_harmonic_classical",
                                           std::move(r), d.R, d.mask);
    add_common_metadata(report, phi.dt, g.size(), term);
    return report;
}

ResidualReport hj_residual_eps(const Snapshots<PhaseSpaceField>& chi, const PhysicalParams& params, QuantumTerm term) {
    const EpsFields f = eps_fields(chi, extended_hamiltonian(params));
    RVec r = term == QuantumTerm::Include ? f.full : subtract(f.full, f.q_term, f.p_term);
    ResidualReport report =
        density_report(term == QuantumTerm::Include ? "hj_eps" : "hj_eps_classical", std::move(r), f.R, f.mask);
    add_common_metadata(report, chi.dt, chi.center.grid.size(), term);
    return report;
}

TransformedResidual hj_residual_transformed(const Snapshots<PhaseSpaceField>& chi, const PhysicalParams& params,
                                            double alpha) {
    const auto sheared =
        map_snapshots(chi, [alpha](const PhaseSpaceField& f) { return apply_extended_transform(f, alpha); });
    const EpsFields f = eps_fields(sheared, transformed_hamiltonian(params, alpha));

    // Bracket multiplying (1/2 + alpha): the alpha-independent part of the amplitude terms.
    const ExtendedHamiltonian base = transformed_hamiltonian(params, 0.0);
    const double hbar = params.hbar();
    const RVec G = add(curvature_term(f.R, f.R_qq, f.mask, -2.0 * base.coefficients.pi_q_sq * hbar * hbar),
                       curvature_term(f.R, f.R_pp, f.mask, -2.0 * base.coefficients.pi_p_sq * hbar * hbar));

    RVec classical = subtract(f.full, f.q_term, f.p_term);
    RVec quantum = add(f.q_term, f.p_term);
    double num = 0.0;
    double den = 0.0;
    for (std::size_t i = 0; i < G.size(); ++i) {
        if (!f.mask[i]) continue;
        const double w = f.R[i] * f.R[i];
        num -= w * classical[i] * G[i];
        den += w * G[i] * G[i];
    }
    if (!(den > 0.0)) throw NumericalError("hj_residual_transformed: amplitude bracket vanishes on the mask");

    TransformedResidual out{alpha, density_report("hj_transformed", f.full, f.R, f.mask),
                            density_report("hj_transformed_classical", std::move(classical), f.R, f.mask),
                            density_report("hj_transformed_quantum_term", std::move(quantum), f.R, f.mask),
                            num / den};
    for (ResidualReport* r : {&out.full, &out.classical, &out.quantum}) {
        r->metadata["alpha"] = alpha;
        r->metadata["dt"] = chi.dt;
    }
    return out;
}

LineFit fit_line(std::span<const double> x, std::span<const double> y) {
    require(x.size() == y.size(), "fit_line: x and y differ in length");
    require(x.size() >= 2, "fit_line: need at least two points");
    const auto n = static_cast<double>(x.size());
    const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
    const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
    double sxx = 0.0;
    double sxy = 0.0;
    double syy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
        syy += (y[i] - my) * (y[i] - my);
    }
    require(sxx > 0.0, "fit_line: x values are all equal");
    LineFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    double ss_res = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double e = y[i] - (fit.slope * x[i] + fit.intercept);
        ss_res += e * e;
    }
    fit.r_squared = syy > 0.0 ? 1.0 - ss_res / syy : (ss_res == 0.0 ? 1.0 : 0.0);
    fit.alpha_zero = fit.slope != 0.0 ? -fit.intercept / fit.slope - 0.5 : std::nan("");
    return fit;
}

AlphaSweepReport alpha_sweep(const Snapshots<PhaseSpaceField>& chi, const PhysicalParams& params,
                             std::span<const double> alphas, bool parallel) {
    require(alphas.size() >= 3, "alpha_sweep: need at least three alpha values");
    require(std::is_sorted(alphas.begin(), alphas.end()), "alpha_sweep: alphas must be sorted");
    require(std::find(alphas.begin(), alphas.end(), -0.5) != alphas.end(), "alpha_sweep: alphas must contain -1/2");

    auto evaluate = [&](double alpha) {
        const TransformedResidual t = hj_residual_transformed(chi, params, alpha);
        const double x = 0.5 + alpha;
        const double sign = x > 0.0 ? 1.0 : (x < 0.0 ? -1.0 : 0.0);
        return AlphaSweepEntry{alpha,
                               t.quantum.l2_norm,
                               sign * t.quantum.l2_norm,
                               t.full.l2_norm,
                               t.classical.l2_norm,
                               t.coefficient,
                               t.full.masked_fraction};
    };

    AlphaSweepReport report;
    if (parallel) {
        std::vector<std::future<AlphaSweepEntry>> jobs;
        for (const double a : alphas) jobs.push_back(std::async(std::launch::async, evaluate, a));
        for (auto& j : jobs) report.entries.push_back(j.get());
    } else {
        for (const double a : alphas) report.entries.push_back(evaluate(a));
    }

    RVec x;
    RVec term;
    RVec coeff;
    for (const auto& e : report.entries) {
        x.push_back(0.5 + e.alpha);
        term.push_back(e.signed_term_norm);
        coeff.push_back(e.coefficient);
    }
    report.term_fit = fit_line(x, term);
    report.coefficient_fit = fit_line(x, coeff);
    return report;
}

}  // namespace epsqp
