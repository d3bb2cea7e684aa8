#include <doctest.h>

#include <epsqp/eps.hpp>

#include <algorithm>

#include "oracles.hpp"

using namespace epsqp;

namespace {

const PhysicalParams kHarmonic = PhysicalParams::harmonic(1.0);
const PhysicalParams kLinear = PhysicalParams::linear(1.0);
const Grid2D kGrid{make_grid(256, -10.0, 10.0), make_grid(256, -10.0, 10.0)};

PhaseSpaceField chi_of(const WaveFunction& psi, const Grid2D& g = kGrid) {
    return chi_build(psi, to_momentum_space(psi, g.p_axis), g);
}

PhaseSpaceField coherent_chi(double q0, double p0, double t) {
    return chi_of(ho_coherent_state(kGrid.q_axis, kHarmonic, q0, p0, t));
}

PhaseSpaceField falling_chi(double t) {
    return chi_of(linear_potential_gaussian(kGrid.q_axis, kLinear, 0.0, 0.0, 1.0, t));
}

double max_abs(const CVec& v) {
    double m = 0.0;
    for (const cplx& z : v) m = std::max(m, std::abs(z));
    return m;
}

}  // namespace

TEST_SUITE("eps_core") {
    TEST_CASE("ground-state chi at the origin") {
        const PhaseSpaceField chi = coherent_chi(0.0, 0.0, 0.0);
        CHECK(chi.kind == FieldKind::chi());
        CHECK(std::abs(chi.at(128, 128) - 1.0 / std::sqrt(oracle::pi)) < 1e-12);
    }

    TEST_CASE("chi matches psi conj(phi) exp(-ipq) from closed forms") {
        const oracle::Gaussian g = oracle::coherent(0.7, -0.3, 1.4);
        const PhaseSpaceField chi = coherent_chi(0.7, -0.3, 1.4);
        double e = 0.0;
        for (std::size_t ip = 0; ip < kGrid.np(); ip += 7)
            for (std::size_t iq = 0; iq < kGrid.nq(); iq += 5) {
                const double p = kGrid.p_axis.point(ip);
                const double q = kGrid.q_axis.point(iq);
                e = std::max(e, std::abs(chi.at(ip, iq) - g(q) * std::conj(g.momentum(p)) * std::exp(-oracle::I * p * q)));
            }
        CHECK(e < 1e-12);
    }

    TEST_CASE("modulus and norm of chi") {
        const WaveFunction psi = ho_coherent_state(kGrid.q_axis, kHarmonic, 1.0, 0.5, 0.3);
        const WaveFunction phi = to_momentum_space(psi, kGrid.p_axis);
        const PhaseSpaceField chi = chi_build(psi, phi, kGrid);
        double e = 0.0;
        for (std::size_t ip = 0; ip < kGrid.np(); ++ip)
            for (std::size_t iq = 0; iq < kGrid.nq(); ++iq)
                e = std::max(e, std::abs(std::abs(chi.at(ip, iq)) - std::abs(psi.values[iq]) * std::abs(phi.values[ip])));
        CHECK(e < 1e-15);
        CHECK(std::abs(chi.norm() - 1.0) < 1e-10);
        const PhaseSpaceField f = separable_f(psi, phi, kGrid);
        CHECK(f.kind == FieldKind::f());
        CHECK(std::abs(f.at(3, 4) - psi.values[4] * std::conj(phi.values[3])) < 1e-16);
    }

    TEST_CASE("chi_build rejects mismatched factors") {
        const WaveFunction psi = ho_coherent_state(kGrid.q_axis, kHarmonic, 0, 0, 0.0);
        const WaveFunction later = ho_coherent_state(kGrid.q_axis, kHarmonic, 0, 0, 0.1);
        const WaveFunction phi = to_momentum_space(psi, kGrid.p_axis);
        CHECK_THROWS_AS(chi_build(psi, to_momentum_space(later, kGrid.p_axis), kGrid), PreconditionError);
        CHECK_THROWS_AS(chi_build(phi, psi, kGrid), PreconditionError);
        WaveFunction other = phi;
        other.params = PhysicalParams::harmonic(2.0);
        CHECK_THROWS_AS(chi_build(psi, other, kGrid), PreconditionError);
        CHECK_THROWS_AS(chi_build(psi, to_momentum_space(psi, make_grid(128, -10, 10)), kGrid), PreconditionError);
    }

    TEST_CASE("stationary chi is annihilated by the extended Hamiltonian") {
        for (int n : {0, 1, 3}) {
            const WaveFunction psi = ho_eigenstate(kGrid.q_axis, kHarmonic, n, 0.8);
            const PhaseSpaceField h = eps_rhs_apply(chi_of(psi), kHarmonic, HamiltonianChoice::original());
            CHECK(max_abs(h.values) < 1e-8);
        }
    }

    TEST_CASE("dynamical equation residual for the coherent state") {
        const auto s = make_snapshots([](double t) { return coherent_chi(1.0, 0.0, t); }, 0.7, 1e-3);
        const ResidualReport r = eps_equation_residual(s, kHarmonic);
        CHECK(r.norm_kind == NormKind::FieldL2);
        CHECK(r.l2_norm < 1e-6);
        CHECK(r.metadata.at("dt") == 1e-3);
    }

    TEST_CASE("property: dynamical equation residual below 1e-6 for both potentials") {
        // Default states of each family at dt = 1e-3.
        const auto harmonic = make_snapshots([](double t) { return coherent_chi(1.0, 0.0, t); }, 0.5, 1e-3);
        const auto linear = make_snapshots(falling_chi, 0.5, 1e-3);
        CHECK(eps_equation_residual(harmonic, kHarmonic).l2_norm < 1e-6);
        CHECK(eps_equation_residual(linear, kLinear).l2_norm < 1e-6);
    }

    TEST_CASE("dynamical equation residual is second order in dt") {
        for (bool harmonic : {true, false}) {
            auto make = [harmonic](double t) { return harmonic ? coherent_chi(1.0, 0.5, t) : falling_chi(t); };
            const PhysicalParams& params = harmonic ? kHarmonic : kLinear;
            const double coarse = eps_equation_residual(make_snapshots(make, 0.4, 2e-3), params).l2_norm;
            const double fine = eps_equation_residual(make_snapshots(make, 0.4, 1e-3), params).l2_norm;
            CHECK(std::log2(coarse / fine) > 1.9);
        }
    }

    TEST_CASE("zero field maps to zero") {
        PhaseSpaceField zero = coherent_chi(0, 0, 0);
        std::fill(zero.values.begin(), zero.values.end(), cplx(0.0));
        CHECK(max_abs(eps_rhs_apply(zero, kHarmonic, HamiltonianChoice::original()).values) == 0.0);
        CHECK(max_abs(eps_rhs_apply(zero, kLinear, HamiltonianChoice::sheared(-0.5)).values) == 0.0);
    }

    TEST_CASE("operator form of the original Hamiltonian") {
        // Compare against -i hbar[(p/m) d_q - V' d_p] - (hbar^2/2)[(1/m) d_q^2 - V'' d_p^2] built by hand.
        const PhaseSpaceField chi = coherent_chi(0.5, 0.5, 0.2);
        const CVec dq = spectral_derivative(chi.values, kGrid, Axis::Q, 1);
        const CVec dq2 = spectral_derivative(chi.values, kGrid, Axis::Q, 2);
        const CVec dp = spectral_derivative(chi.values, kGrid, Axis::P, 1);
        const CVec dp2 = spectral_derivative(chi.values, kGrid, Axis::P, 2);
        for (const PhysicalParams& params : {kHarmonic, kLinear}) {
            const PhaseSpaceField h = eps_rhs_apply(chi, params, HamiltonianChoice::original());
            double e = 0.0;
            for (std::size_t ip = 0; ip < kGrid.np(); ++ip)
                for (std::size_t iq = 0; iq < kGrid.nq(); ++iq) {
                    const std::size_t i = kGrid.index(ip, iq);
                    const double p = kGrid.p_axis.point(ip);
                    const double q = kGrid.q_axis.point(iq);
                    const cplx ref = -oracle::I * (p * dq[i] - params.dV(q) * dp[i]) - 0.5 * (dq2[i] - params.d2V() * dp2[i]);
                    e = std::max(e, std::abs(h.values[i] - ref));
                }
            CHECK(e < 1e-12);
        }
    }

    TEST_CASE("property: the extended Hamiltonian is linear") {
        oracle::Sampler rng(5150);
        const PhaseSpaceField a = coherent_chi(1.0, 0.0, 0.3);
        const PhaseSpaceField b = falling_chi(0.2);
        for (int trial = 0; trial < 4; ++trial) {
            const cplx x{rng.uniform(-2, 2), rng.uniform(-2, 2)};
            const cplx y{rng.uniform(-2, 2), rng.uniform(-2, 2)};
            const HamiltonianChoice choice =
                trial % 2 == 0 ? HamiltonianChoice::original() : HamiltonianChoice::sheared(rng.uniform(-1, 0));
            const PhysicalParams& params = trial < 2 ? kHarmonic : kLinear;
            PhaseSpaceField mix = a;
            for (std::size_t i = 0; i < mix.values.size(); ++i) mix.values[i] = x * a.values[i] + y * b.values[i];
            const CVec lhs = eps_rhs_apply(mix, params, choice).values;
            const CVec ha = eps_rhs_apply(a, params, choice).values;
            const CVec hb = eps_rhs_apply(b, params, choice).values;
            CVec rhs(lhs.size());
            for (std::size_t i = 0; i < rhs.size(); ++i) rhs[i] = x * ha[i] + y * hb[i];
            CHECK(relative_l2(lhs, rhs) < 1e-12);
        }
    }

    TEST_CASE("polar form of the ground-state chi") {
        const PhaseSpaceField chi = coherent_chi(0.0, 0.0, 0.0);
        const ExtendedAction a = polar_decompose_2d(chi);
        double e = 0.0;
        double round_trip = 0.0;
        for (std::size_t ip = 0; ip < kGrid.np(); ++ip)
            for (std::size_t iq = 0; iq < kGrid.nq(); ++iq) {
                const std::size_t i = kGrid.index(ip, iq);
                if (!a.mask[i]) continue;
                e = std::max(e, std::abs(a.S[i] + kGrid.p_axis.point(ip) * kGrid.q_axis.point(iq)));
                round_trip = std::max(round_trip, std::abs(a.R[i] * std::exp(oracle::I * a.S[i]) - chi.values[i]) /
                                                      std::abs(chi.values[i]));
            }
        CHECK(e < 1e-8);
        CHECK(round_trip < 1e-10);
        CHECK(a.masked_fraction() > 0.0);
        CHECK(a.masked_fraction() < 1.0);
    }

    TEST_CASE("separable phase structure of a coherent chi") {
        const PhaseSpaceField chi = coherent_chi(1.0, 0.5, 0.7);
        const ExtendedAction a = polar_decompose_2d(chi);
        const double dp = kGrid.p_axis.spacing();
        const double dq = kGrid.q_axis.spacing();
        double worst = 0.0;
        auto T = [&](std::size_t ip, std::size_t iq) {
            return a.S[kGrid.index(ip, iq)] + kGrid.p_axis.point(ip) * kGrid.q_axis.point(iq);
        };
        for (std::size_t ip = 0; ip + 1 < kGrid.np(); ++ip)
            for (std::size_t iq = 0; iq + 1 < kGrid.nq(); ++iq) {
                if (!(a.mask[kGrid.index(ip, iq)] && a.mask[kGrid.index(ip + 1, iq)] && a.mask[kGrid.index(ip, iq + 1)] &&
                      a.mask[kGrid.index(ip + 1, iq + 1)]))
                    continue;
                const double mixed = (T(ip + 1, iq + 1) - T(ip + 1, iq) - T(ip, iq + 1) + T(ip, iq)) / (dp * dq);
                worst = std::max(worst, std::abs(mixed));
            }
        CHECK(worst < 1e-6);
    }

    TEST_CASE("averaging rule") {
        const PhaseSpaceField chi = coherent_chi(0.0, 0.0, 0.0);
        CHECK(expectation([](double, double) { return 1.0; }, chi) == 1.0);
        CHECK(std::abs(expectation([](double, double q) { return q * q; }, chi) - 0.5) < 1e-8);
        CHECK(std::abs(expectation([](double p, double q) { return 0.5 * p * p + 0.5 * q * q; }, chi) - 0.5) < 1e-8);
    }

    TEST_CASE("averaging rule rejects a vanishing normalization") {
        PhaseSpaceField zero = coherent_chi(0.0, 0.0, 0.0);
        std::fill(zero.values.begin(), zero.values.end(), cplx(0.0));
        CHECK_THROWS_AS(expectation([](double, double) { return 1.0; }, zero), NumericalError);
    }

    TEST_CASE("averaging rule rejects a complex average") {
        // pq is averaged as an ordered product; for the ground state that is +-i hbar/2.
        const PhaseSpaceField chi = coherent_chi(0.0, 0.0, 0.0);
        CHECK_THROWS_AS(expectation([](double p, double q) { return p * q; }, chi), NumericalError);
    }

    TEST_CASE("property: coherent-state averages track the classical orbit") {
        for (int i = 0; i < 10; ++i) {
            const double t = 0.61 * i;
            const PhaseSpaceField chi = coherent_chi(1.0, 0.5, t);
            const PhasePoint c = harmonic_trajectory(kHarmonic, 1.0, 0.5, t);
            CHECK(std::abs(expectation([](double, double q) { return q; }, chi) - c.q) < 1e-7);
            CHECK(std::abs(expectation([](double p, double) { return p; }, chi) - c.p) < 1e-7);
        }
    }
}
