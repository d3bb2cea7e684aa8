#include "epsqp/cli/scenarios.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>

#include <epsqp/epsqp.hpp>

#include "epsqp/cli/registry.hpp"

namespace epsqp::cli {

using nlohmann::ordered_json;

namespace {

constexpr double kPi = std::numbers::pi;

// Fixed states, echoed into every report through fixed_inputs().
constexpr double kCoherentQ0 = 1.0;
constexpr double kCoherentP0 = 0.0;
constexpr double kGaussianQ0 = 0.0;
constexpr double kGaussianP0 = 0.0;
constexpr double kGaussianSigma = 1.0;
constexpr double kBroadP0 = 1.0;
constexpr double kBroadSigma = 2.5;
constexpr double kBroadT = 0.3;
constexpr double kSplitStepDt = 1e-4;

struct Setup {
    explicit Setup(const RunConfig& c)
        : cfg(c),
          harmonic(PhysicalParams::harmonic(1.0)),
          linear(PhysicalParams::linear(1.0)),
          line(make_grid(c.grid_n, -c.extent, c.extent)),
          profile(make_grid(c.profile_grid_n, -c.extent, c.extent)),
          grid{line, line} {}

    const RunConfig& cfg;
    PhysicalParams harmonic;
    PhysicalParams linear;
    Grid1D line;
    Grid1D profile;
    Grid2D grid;

    WaveFunction coherent(double t, const Grid1D& g) const {
        return ho_coherent_state(g, harmonic, kCoherentQ0, kCoherentP0, t);
    }
    WaveFunction coherent(double t) const { return coherent(t, line); }
    WaveFunction falling(double t) const {
        return linear_potential_gaussian(line, linear, kGaussianQ0, kGaussianP0, kGaussianSigma, t);
    }
};

PhaseSpaceField chi_of(const WaveFunction& psi, const Grid2D& g) {
    return chi_build(psi, to_momentum_space(psi, g.p_axis), g);
}

Snapshots<WaveFunction> to_p(const Snapshots<WaveFunction>& s) {
    return map_snapshots(s, [](const WaveFunction& f) { return to_momentum_space(f); });
}

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

void add_check(ScenarioResult& r, std::string name, const std::string& key, double value, std::string note = {}) {
    const Tolerance& t = tolerance(key);
    const bool passed = std::isfinite(value) && (t.bound == Bound::Upper ? value < t.value : value >= t.value);
    r.checks.push_back({std::move(name), key, value, t.value, t.bound, passed, std::move(note)});
}

void add_residual(ScenarioResult& r, ResidualReport rep, const std::string& label) {
    rep.name = label;
    rep.field.clear();
    rep.mask.clear();
    r.residuals.push_back(std::move(rep));
}

// Residual at dt and dt/2; records both and checks the bound and the halving ratio.
template <class Eval>
ResidualReport halving_pair(ScenarioResult& r, const std::string& label, double dt, const std::string& bound_key,
                            const std::string& ratio_key, Eval&& eval) {
    ResidualReport coarse = eval(dt);
    const ResidualReport fine = eval(dt / 2.0);
    add_check(r, label, bound_key, coarse.l2_norm, "dt = " + fmt(dt));
    if (ratio_key == "convergence_order")
        add_check(r, label + ".order", ratio_key, std::log2(coarse.l2_norm / fine.l2_norm), "dt vs dt/2");
    else
        add_check(r, label + ".halving", ratio_key, coarse.l2_norm / fine.l2_norm, "dt vs dt/2");
    ResidualReport kept = coarse;
    add_residual(r, coarse, label);
    add_residual(r, fine, label + ".half_dt");
    return kept;
}

double max_on_mask(const RVec& v, const Mask& m, const std::function<double(std::size_t)>& ref) {
    double e = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i)
        if (m[i]) e = std::max(e, std::abs(v[i] - ref(i)));
    return e;
}

double max_abs(const CVec& v) {
    double m = 0.0;
    for (const cplx& z : v) m = std::max(m, std::abs(z));
    return m;
}

Field1D profile_field(const QuantumPotentialProfile& Q, const std::string& axis) {
    return Field1D{std::get<Grid1D>(Q.grid), Q.values, Q.mask, axis};
}

Field2D real_field(const Grid2D& g, const RVec& v) {
    CVec c(v.begin(), v.end());
    return Field2D{g, std::move(c)};
}

using Wants = std::function<bool(const std::string&)>;

// ---------------------------------------------------------------------------

ScenarioResult harmonic_coherent(const Setup& s, const Wants& wants) {
    ScenarioResult r;
    const double dt = s.cfg.dt;
    const double t = s.cfg.t;
    const PhysicalParams& h = s.harmonic;

    const WaveFunction psi0 = s.coherent(0.0);
    add_check(r, "coherent.norm", "norm", std::abs(psi0.norm() - 1.0));
    add_check(r, "coherent.half_period_splitstep", "splitstep",
              l2_distance(splitstep_propagate(psi0, h, kPi, kSplitStepDt), s.coherent(kPi)),
              "split-step dt = " + fmt(kSplitStepDt));
    double center = 0.0;
    for (int i = 0; i < 10; ++i) {
        const double ti = 0.63 * i;
        const PhasePoint c = harmonic_trajectory(h, kCoherentQ0, kCoherentP0, ti);
        center = std::max(center, std::abs(s.coherent(ti).expectation([](double q) { return q; }) - c.q));
    }
    add_check(r, "coherent.center_tracking", "center", center);

    const WaveFunction g0 = ho_coherent_state(s.line, h, 0.0, 0.0, 0.0);
    add_check(r, "ground.period_splitstep", "splitstep",
              std::abs(1.0 - std::abs(overlap(g0, splitstep_propagate(g0, h, 2.0 * kPi, kSplitStepDt)))),
              "|1 - |<psi(0)|psi(T)>||");

    const WaveFunction ground = ho_coherent_state(s.profile, h, 0.0, 0.0, 0.0);
    const QuantumPotentialProfile Q = quantum_potential_q(polar_decompose(ground), h);
    add_check(r, "ground.quantum_potential_q", "quantum_potential_profile",
              max_on_mask(Q.values, Q.mask, [&](std::size_t i) { return 0.5 - 0.5 * std::pow(s.profile.point(i), 2); }),
              "profile grid n = " + std::to_string(s.profile.size()));
    const WaveFunction ground_p = to_momentum_space(ground);
    const QuantumPotentialProfile Qp = quantum_potential_p(polar_decompose(ground_p), h);
    add_check(r, "ground.quantum_potential_p", "quantum_potential_profile",
              max_on_mask(Qp.values, Qp.mask, [&](std::size_t i) { return 0.5 - 0.5 * std::pow(ground_p.grid.point(i), 2); }),
              "profile grid n = " + std::to_string(s.profile.size()));
    if (wants("quantum_potential")) r.fields.emplace("quantum_potential", profile_field(Q, "q"));
    if (wants("quantum_potential_p")) r.fields.emplace("quantum_potential_p", profile_field(Qp, "p"));

    auto coh_snaps = [&](double step) { return make_snapshots([&](double tt) { return s.coherent(tt); }, t, step); };
    halving_pair(r, "hj_q", dt, "hj_residual", "dt_halving_ratio",
                 [&](double step) { return hj_residual_q(coh_snaps(step), h); });
    halving_pair(r, "hj_p", dt, "hj_residual", "dt_halving_ratio",
                 [&](double step) { return hj_residual_p_harmonic(to_p(coh_snaps(step)), h); });

    // Deleting the quantum potential leaves -Q behind.
    const auto snaps = coh_snaps(dt);
    const ResidualReport classical = hj_residual_q(snaps, h, QuantumTerm::Omit);
    const QuantumPotentialProfile Qc = quantum_potential_q(polar_decompose(snaps.center), h);
    double num = 0.0;
    double den = 0.0;
    for (std::size_t i = 0; i < Qc.values.size(); ++i) {
        if (!Qc.mask[i]) continue;
        const double R2 = std::norm(snaps.center.values[i]);
        num += R2 * std::pow(classical.field[i] + Qc.values[i], 2);
        den += R2;
    }
    add_check(r, "hj_q.classical_plus_Q", "term_deletion", std::sqrt(num / den));
    add_check(r, "hj_q.classical_form", "classical_form_gap", classical.l2_norm);
    add_residual(r, classical, "hj_q.classical");

    const auto chi_snaps = make_snapshots([&](double tt) { return chi_of(s.coherent(tt), s.grid); }, t, dt);
    const ResidualReport eq = eps_equation_residual(chi_snaps, h);
    add_check(r, "eps_equation", "eps_equation", eq.l2_norm, "dt = " + fmt(dt));
    add_residual(r, eq, "eps_equation");
    if (wants("chi")) r.fields.emplace("chi", Field2D{s.grid, chi_snaps.center.values});

    double stationary = 0.0;
    for (int n : {0, 1, 3}) {
        const PhaseSpaceField chi = chi_of(ho_eigenstate(s.line, h, n, 0.8), s.grid);
        stationary = std::max(stationary, max_abs(eps_rhs_apply(chi, h, HamiltonianChoice::original()).values));
    }
    add_check(r, "eigenstates.h_chi", "stationary", stationary, "n = 0, 1, 3");

    const PhaseSpaceField ground_chi = chi_of(g0, s.grid);
    add_check(r, "ground.mean_q_squared", "ground_moment",
              std::abs(expectation([](double, double q) { return q * q; }, ground_chi) - 0.5));
    add_check(r, "ground.mean_energy", "ground_moment",
              std::abs(expectation([&](double p, double q) { return h.hamiltonian(p, q); }, ground_chi) - 0.5));
    double track = 0.0;
    for (int i = 0; i < 10; ++i) {
        const double ti = 0.61 * i;
        const PhaseSpaceField chi = chi_of(s.coherent(ti), s.grid);
        const PhasePoint c = harmonic_trajectory(h, kCoherentQ0, kCoherentP0, ti);
        track = std::max(track, std::abs(expectation([](double, double q) { return q; }, chi) - c.q));
        track = std::max(track, std::abs(expectation([](double p, double) { return p; }, chi) - c.p));
    }
    add_check(r, "coherent.orbit_tracking", "orbit_tracking", track, "10 times over one period");
    return r;
}

ScenarioResult linear_gaussian(const Setup& s, const Wants& wants) {
    ScenarioResult r;
    const double dt = s.cfg.dt;
    const double t = s.cfg.t;
    const PhysicalParams& b = s.linear;

    const WaveFunction psi0 = s.falling(0.0);
    add_check(r, "gaussian.norm", "norm", std::abs(psi0.norm() - 1.0));
    const PhasePoint c = linear_trajectory(b, kGaussianQ0, kGaussianP0, 1.0);
    add_check(r, "gaussian.center_at_t1", "center", std::abs(s.falling(1.0).expectation([](double q) { return q; }) - c.q),
              "q_c(1) = " + fmt(c.q));
    add_check(r, "gaussian.splitstep", "splitstep",
              l2_distance(splitstep_propagate(psi0, b, 0.5, kSplitStepDt), s.falling(0.5)),
              "t = 0.5, split-step dt = " + fmt(kSplitStepDt));

    halving_pair(r, "hj_q", dt, "hj_residual", "dt_halving_ratio", [&](double step) {
        return hj_residual_q(make_snapshots([&](double tt) { return s.falling(tt); }, t, step), b);
    });

    const auto chi_snaps = make_snapshots([&](double tt) { return chi_of(s.falling(tt), s.grid); }, t, dt);
    const ResidualReport eq = eps_equation_residual(chi_snaps, b);
    add_check(r, "eps_equation", "eps_equation", eq.l2_norm, "dt = " + fmt(dt));
    add_residual(r, eq, "eps_equation");

    if (wants("chi")) r.fields.emplace("chi", Field2D{s.grid, chi_snaps.center.values});
    if (wants("quantum_potential"))
        r.fields.emplace("quantum_potential", profile_field(quantum_potential_q(polar_decompose(s.falling(t)), b), "q"));
    return r;
}

ScenarioResult wigner_equivalence(const Setup& s, const Wants& wants) {
    ScenarioResult r;
    const PhysicalParams& h = s.harmonic;
    const double t = s.cfg.t;

    const WaveFunction ground = ho_coherent_state(s.line, h, 0.0, 0.0, 0.0);
    const PhaseSpaceField w0 = wigner_direct(ground, s.grid);
    const PhaseSpaceField u0 = apply_extended_transform(chi_of(ground, s.grid), -0.5);
    const ConstantFit ground_fit = fit_global_constant(w0.values, u0.values);
    add_check(r, "ground.fit", "wigner_fit", ground_fit.relative_deviation);
    double imag = 0.0;
    for (const cplx& z : w0.values) imag = std::max(imag, std::abs(z.imag()));
    add_check(r, "ground.imaginary_part", "wigner_imag", imag);
    const std::size_t mid = s.grid.nq() / 2;
    r.fits["ground_w_origin"] = w0.at(mid, mid).real();
    r.fits["ground_constant"] = {ground_fit.constant.real(), ground_fit.constant.imag()};
    if (wants("wigner")) r.fields.emplace("wigner", Field2D{s.grid, w0.values});
    if (wants("transformed")) r.fields.emplace("transformed", Field2D{s.grid, u0.values});

    // Moving state across three grid sizes.
    ordered_json constants = ordered_json::array();
    std::vector<cplx> cs;
    for (std::size_t n : {s.cfg.grid_n / 2, s.cfg.grid_n, 2 * s.cfg.grid_n}) {
        const Grid1D line = make_grid(n, -s.cfg.extent, s.cfg.extent);
        const Grid2D g{line, line};
        const WaveFunction psi = s.coherent(t, line);
        const ConstantFit fit =
            fit_global_constant(wigner_direct(psi, g).values, apply_extended_transform(chi_of(psi, g), -0.5).values);
        cs.push_back(fit.constant);
        constants.push_back({{"grid_n", n}, {"re", fit.constant.real()}, {"im", fit.constant.imag()},
                             {"relative_deviation", fit.relative_deviation}});
        if (n == s.cfg.grid_n) add_check(r, "coherent.fit", "wigner_fit", fit.relative_deviation);
    }
    r.fits["coherent_constants"] = constants;
    r.fits["expected_constant"] = std::sqrt(2.0 * kPi / h.hbar());
    add_check(r, "coherent.constant_stability", "wigner_constant",
              std::max(std::abs(cs[0] - cs[1]), std::abs(cs[2] - cs[1])),
              "grid n = " + std::to_string(s.cfg.grid_n / 2) + ", " + std::to_string(s.cfg.grid_n) + ", " +
                  std::to_string(2 * s.cfg.grid_n));

    const WaveFunction psi = s.coherent(t);
    const WaveFunction phi = to_momentum_space(psi, s.grid.p_axis);
    const PhaseSpaceField w = wigner_direct(psi, s.grid);
    CVec q_marg(s.grid.nq(), 0.0), q_ref(s.grid.nq());
    CVec p_marg(s.grid.np(), 0.0), p_ref(s.grid.np());
    for (std::size_t ip = 0; ip < s.grid.np(); ++ip)
        for (std::size_t iq = 0; iq < s.grid.nq(); ++iq) {
            q_marg[iq] += w.at(ip, iq) * s.grid.p_axis.spacing();
            p_marg[ip] += w.at(ip, iq) * s.grid.q_axis.spacing();
        }
    for (std::size_t iq = 0; iq < s.grid.nq(); ++iq) q_ref[iq] = 2.0 * kPi * std::norm(psi.values[iq]);
    for (std::size_t ip = 0; ip < s.grid.np(); ++ip) p_ref[ip] = 2.0 * kPi * std::norm(phi.values[ip]);
    add_check(r, "coherent.q_marginal", "wigner_marginal", relative_l2(q_marg, q_ref));
    add_check(r, "coherent.p_marginal", "wigner_marginal", relative_l2(p_marg, p_ref));

    halving_pair(r, "wigner_equation.harmonic", s.cfg.dt, "wigner_equation", "convergence_order", [&](double step) {
        return wigner_equation_residual(make_snapshots([&](double tt) { return s.coherent(tt); }, t, step), h, s.grid);
    });
    halving_pair(r, "wigner_equation.linear", s.cfg.dt, "wigner_equation", "convergence_order", [&](double step) {
        return wigner_equation_residual(make_snapshots([&](double tt) { return s.falling(tt); }, t, step), s.linear,
                                        s.grid);
    });
    return r;
}

ordered_json fit_json(const LineFit& f) {
    return {{"slope", f.slope}, {"intercept", f.intercept}, {"r_squared", f.r_squared}, {"alpha_zero", f.alpha_zero}};
}

ScenarioResult alpha_sweep_scenario(const Setup& s, const Wants& wants) {
    ScenarioResult r;
    const PhysicalParams& h = s.harmonic;
    auto sweep_on = [&](const Grid2D& g) {
        const auto snaps =
            make_snapshots([&](double tt) { return chi_of(s.coherent(tt, g.q_axis), g); }, s.cfg.t, s.cfg.dt);
        return alpha_sweep(snaps, h, s.cfg.alphas, s.cfg.parallel);
    };
    const AlphaSweepReport rep = sweep_on(s.grid);

    ordered_json entries = ordered_json::array();
    const AlphaSweepEntry* half = nullptr;
    const AlphaSweepEntry* largest = &rep.entries.front();
    for (const AlphaSweepEntry& e : rep.entries) {
        entries.push_back({{"alpha", e.alpha},
                           {"term_norm", e.term_norm},
                           {"signed_term_norm", e.signed_term_norm},
                           {"full_residual", e.full_residual},
                           {"classical_residual", e.classical_residual},
                           {"coefficient", e.coefficient},
                           {"masked_fraction", e.masked_fraction}});
        if (e.alpha == -0.5) half = &e;
        if (e.term_norm > largest->term_norm) largest = &e;
        const std::string tag = "alpha=" + fmt(e.alpha);
        add_check(r, "full_residual[" + tag + "]", "hj_residual", e.full_residual);
        if (e.alpha == -0.5)
            add_check(r, "classical_residual[" + tag + "]", "hj_residual", e.classical_residual,
                      "amplitude terms vanish at -1/2");
        else
            add_check(r, "classical_residual[" + tag + "]", "classical_form_gap", e.classical_residual);
    }
    r.fits["entries"] = entries;
    r.fits["term_fit"] = fit_json(rep.term_fit);
    r.fits["coefficient_fit"] = fit_json(rep.coefficient_fit);
    r.fits["alpha_star"] = rep.term_fit.alpha_zero;

    add_check(r, "term_fit.r_squared", "sweep_r_squared", rep.term_fit.r_squared,
              "signed term norm against 1/2 + alpha");
    add_check(r, "term_fit.alpha_star", "sweep_zero", std::abs(rep.term_fit.alpha_zero + 0.5));
    add_check(r, "coefficient_fit.r_squared", "sweep_r_squared", rep.coefficient_fit.r_squared,
              "projected coefficient against 1/2 + alpha");
    add_check(r, "coefficient_fit.alpha_star", "sweep_zero", std::abs(rep.coefficient_fit.alpha_zero + 0.5));
    add_check(r, "term_norm.vanishing", "sweep_vanishing", half->term_norm / largest->term_norm,
              "alpha = -1/2 against alpha = " + fmt(largest->alpha));

    const Grid1D fine_line = make_grid(2 * s.cfg.grid_n, -s.cfg.extent, s.cfg.extent);
    const AlphaSweepReport fine = sweep_on(Grid2D{fine_line, fine_line});
    r.fits["alpha_star_refined"] = fine.term_fit.alpha_zero;
    add_check(r, "alpha_star.grid_refinement", "sweep_grid_shift",
              std::abs(fine.term_fit.alpha_zero - rep.term_fit.alpha_zero),
              "grid n = " + std::to_string(s.cfg.grid_n) + " vs " + std::to_string(2 * s.cfg.grid_n));

    if (wants("chi"))
        r.fields.emplace("chi", Field2D{s.grid, chi_of(s.coherent(s.cfg.t), s.grid).values});
    return r;
}

ScenarioResult pspace_linear(const Setup& s, const Wants& wants) {
    ScenarioResult r;
    const PhysicalParams& b = s.linear;
    auto snaps = [&](double step) {
        return to_p(make_snapshots([&](double tt) { return s.falling(tt); }, s.cfg.t, step));
    };
    const ResidualReport kept = halving_pair(r, "hj_p_linear", s.cfg.dt, "hj_residual", "dt_halving_ratio",
                                             [&](double step) { return hj_residual_p_linear(snaps(step), b); });

    // A broad, nearly plane-wave packet needs a wider line.
    const Grid1D wide = make_grid(2 * s.cfg.grid_n, -4.0 * s.cfg.extent, 4.0 * s.cfg.extent);
    const auto broad = to_p(make_snapshots(
        [&](double tt) { return linear_potential_gaussian(wide, b, kGaussianQ0, kBroadP0, kBroadSigma, tt); }, kBroadT,
        s.cfg.dt));
    const ResidualReport broad_rep = hj_residual_p_linear(broad, b);
    add_check(r, "hj_p_linear.broad_packet", "hj_residual", broad_rep.l2_norm,
              "sigma0 = " + fmt(kBroadSigma) + " on [" + fmt(-4.0 * s.cfg.extent) + ", " + fmt(4.0 * s.cfg.extent) + ")");
    add_residual(r, broad_rep, "hj_p_linear.broad_packet");

    if (wants("hj_residual")) {
        const WaveFunction center = snaps(s.cfg.dt).center;
        Mask mask(kept.mask.begin(), kept.mask.end());
        r.fields.emplace("hj_residual", Field1D{center.grid, kept.field, mask, "p"});
    }
    return r;
}

ScenarioResult eps_residuals(const Setup& s, const Wants& wants) {
    ScenarioResult r;
    const PhysicalParams& h = s.harmonic;
    const double t = s.cfg.t;
    auto coh = [&](double step) {
        return make_snapshots([&](double tt) { return chi_of(s.coherent(tt), s.grid); }, t, step);
    };
    const ResidualReport harm = halving_pair(r, "hj_eps.harmonic", s.cfg.dt, "hj_residual", "dt_halving_ratio",
                                             [&](double step) { return hj_residual_eps(coh(step), h); });
    halving_pair(r, "hj_eps.linear", s.cfg.dt, "hj_residual", "dt_halving_ratio", [&](double step) {
        return hj_residual_eps(make_snapshots([&](double tt) { return chi_of(s.falling(tt), s.grid); }, t, step),
                               s.linear);
    });
    const ResidualReport omitted = hj_residual_eps(coh(s.cfg.dt), h, QuantumTerm::Omit);
    add_check(r, "hj_eps.harmonic.classical_form", "classical_form_gap", omitted.l2_norm);
    add_residual(r, omitted, "hj_eps.harmonic.classical");
    if (wants("hj_residual")) r.fields.emplace("hj_residual", real_field(s.grid, harm.field));

    // Factor structure of chi.
    const WaveFunction psi = s.coherent(t);
    const WaveFunction phi = to_momentum_space(psi, s.grid.p_axis);
    const PhaseSpaceField chi = chi_build(psi, phi, s.grid);
    const ExtendedAction a = polar_decompose_2d(chi);
    const PolarField pq = polar_decompose(psi);
    const PolarField pp = polar_decompose(phi);
    double factor = 0.0;
    double lo = 1e300;
    double hi = -1e300;
    for (std::size_t ip = 0; ip < s.grid.np(); ++ip)
        for (std::size_t iq = 0; iq < s.grid.nq(); ++iq) {
            const std::size_t i = s.grid.index(ip, iq);
            if (!a.mask[i]) continue;
            factor = std::max(factor, std::abs(a.R[i] - pq.R[iq] * pp.R[ip]) / a.R[i]);
            const double rest = a.S[i] + s.grid.p_axis.point(ip) * s.grid.q_axis.point(iq) - pq.S[iq] - pp.S[ip];
            lo = std::min(lo, rest);
            hi = std::max(hi, rest);
        }
    add_check(r, "chi.amplitude_factorization", "factorization", factor);
    add_check(r, "chi.phase_additivity", "phase_additivity", hi - lo);

    const WaveFunction psi_c = s.coherent(t, s.profile);
    const Grid2D pg{s.profile, s.profile};
    const EpsQuantumTerms terms = eps_quantum_terms(chi_of(psi_c, pg), extended_hamiltonian(h));
    const QuantumPotentialProfile Q = quantum_potential_q(polar_decompose(psi_c), h);
    double sep = 0.0;
    for (std::size_t ip = 0; ip < pg.np(); ++ip)
        for (std::size_t iq = 0; iq < pg.nq(); ++iq) {
            const std::size_t i = pg.index(ip, iq);
            if (terms.q_term.mask[i] && Q.mask[iq]) sep = std::max(sep, std::abs(terms.q_term.values[i] - Q.values[iq]));
        }
    add_check(r, "q_term.equals_Q", "term_separability", sep, "profile grid n = " + std::to_string(s.profile.size()));
    return r;
}

ScenarioResult classical_appendix(const Setup& s, const Wants&) {
    ScenarioResult r;
    const PhysicalParams& h = s.harmonic;
    const double dt = s.cfg.dt;
    const double period = 2.0 * kPi / h.omega();

    const Trajectory tq = el_solve_q(h, 1.0, 0.0, period, dt);
    const MomentumInitialConditions ic = translate_initial_conditions(h, 1.0, 0.0);
    const Trajectory tp = el_solve_p(h, ic.p0, ic.pdot0, period, dt);
    const Trajectory unit = el_solve_p(h, 1.0, 0.0, period, dt);
    double eq = 0.0, ev = 0.0, ep = 0.0, cross = 0.0, drift_q = 0.0, drift_p = 0.0;
    const double e0q = trajectory_energy(h, tq, 0);
    const double e0p = trajectory_energy(h, tp, 0);
    for (std::size_t i = 0; i < tq.times.size(); ++i) {
        const double ti = tq.times[i];
        eq = std::max(eq, std::abs(tq.coord[i] - std::cos(ti)));
        ev = std::max(ev, std::abs(tq.velocity[i] + std::sin(ti)));
        ep = std::max(ep, std::abs(unit.coord[i] - std::cos(ti)));
        cross = std::max(cross, std::abs(tp.coord[i] - h.mass() * tq.velocity[i]));
        cross = std::max(cross, std::abs(tp.velocity[i] + h.k() * tq.coord[i]));
        drift_q = std::max(drift_q, std::abs(trajectory_energy(h, tq, i) - e0q));
        drift_p = std::max(drift_p, std::abs(trajectory_energy(h, tp, i) - e0p));
    }
    const std::string note = "one period, dt = " + fmt(dt);
    add_check(r, "el_q.coordinate", "trajectory", eq, note);
    add_check(r, "el_q.velocity", "trajectory", ev, note);
    add_check(r, "el_p.coordinate", "trajectory", ep, note);
    add_check(r, "cross_space", "cross_space", cross, "p = m qdot, pdot = -k q");
    add_check(r, "el_q.energy_drift", "energy_drift", drift_q);
    add_check(r, "el_p.energy_drift", "energy_drift", drift_p);

    std::vector<StateSample> lattice;
    for (int i = 0; i <= 10; ++i)
        for (int j = 0; j <= 10; ++j) lattice.push_back({-2.0 + 0.4 * i, -2.0 + 0.4 * j});
    add_check(r, "legendre.harmonic_q", "legendre", legendre_residual(h, lattice, ClassicalSpace::Q));
    add_check(r, "legendre.harmonic_p", "legendre", legendre_residual(h, lattice, ClassicalSpace::P));
    add_check(r, "legendre.linear_q", "legendre", legendre_residual(s.linear, lattice, ClassicalSpace::Q));
    add_check(r, "legendre.linear_p", "legendre", legendre_residual(s.linear, lattice, ClassicalSpace::P, 0.7),
              "q_bar = 0.7");
    return r;
}

using Runner = ScenarioResult (*)(const Setup&, const Wants&);

struct Entry {
    ScenarioInfo info;
    Runner run;
};

const std::vector<Entry>& table() {
    static const std::vector<Entry> entries{
        {{"harmonic-coherent", "oscillator states: split-step, quantum potentials, HJ and dynamical-equation residuals, averages",
          {"chi", "quantum_potential", "quantum_potential_p"}},
         harmonic_coherent},
        {{"linear-gaussian", "falling Gaussian: trajectory, split-step, HJ and dynamical-equation residuals",
          {"chi", "quantum_potential"}},
         linear_gaussian},
        {{"wigner-equivalence", "half shear of chi against the direct Wigner function, marginals, Wigner equation",
          {"wigner", "transformed"}},
         wigner_equivalence},
        {{"alpha-sweep", "amplitude terms of the sheared HJ equation across alpha", {"chi"}}, alpha_sweep_scenario},
        {{"pspace-linear", "momentum-space HJ equation for the linear potential", {"hj_residual"}}, pspace_linear},
        {{"eps-residuals", "phase-space HJ residuals and the factor structure of chi", {"hj_residual"}}, eps_residuals},
        {{"classical-appendix", "Euler-Lagrange solutions in both spaces and Legendre identities", {}},
         classical_appendix},
    };
    return entries;
}

}  // namespace

bool ScenarioResult::passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
}

const std::vector<ScenarioInfo>& scenarios() {
    static const std::vector<ScenarioInfo> infos = [] {
        std::vector<ScenarioInfo> out;
        for (const Entry& e : table()) out.push_back(e.info);
        return out;
    }();
    return infos;
}

ordered_json fixed_inputs() {
    return {{"physics", {{"mass", 1.0}, {"hbar", 1.0}, {"harmonic_k", 1.0}, {"linear_b", 1.0}}},
            {"coherent_state", {{"q0", kCoherentQ0}, {"p0", kCoherentP0}}},
            {"linear_gaussian", {{"q0", kGaussianQ0}, {"p0", kGaussianP0}, {"sigma0", kGaussianSigma}}},
            {"broad_packet", {{"p0", kBroadP0}, {"sigma0", kBroadSigma}, {"t", kBroadT}, {"extent_factor", 4}, {"grid_factor", 2}}},
            {"splitstep_dt", kSplitStepDt}};
}

ScenarioResult run_scenario(const std::string& name, const RunConfig& config, const Wants& wants) {
    for (const Entry& e : table())
        if (e.info.name == name) {
            const Setup setup(config);
            ScenarioResult r = e.run(setup, wants);
            r.name = name;
            return r;
        }
    throw UsageError("unknown scenario '" + name + "'");
}

}  // namespace epsqp::cli
