#include <doctest.h>

#include <epsqp/classical.hpp>
#include <epsqp/error.hpp>

#include <cmath>

#include "oracles.hpp"

using namespace epsqp;

namespace {
const PhysicalParams kUnit = PhysicalParams::harmonic(1.0);
}

TEST_SUITE("classical") {
    TEST_CASE("Legendre identities at the worked points") {
        const StateSample q_sample{1.0, 1.0};
        const StateSample p_sample{1.0, -1.0};
        CHECK(kUnit.hamiltonian(1.0, 1.0) == 1.0);
        CHECK(legendre_residual(kUnit, std::span(&q_sample, 1), ClassicalSpace::Q) < 1e-14);
        CHECK(legendre_residual(kUnit, std::span(&p_sample, 1), ClassicalSpace::P) < 1e-14);
        // q = -pdot/k = 1, so both sides of the p-space identity equal 1.
        CHECK(-p_sample.velocity * 1.0 + lagrangian_p(kUnit, 1.0, -1.0) == doctest::Approx(1.0));
    }

    TEST_CASE("property: Legendre identities hold at random samples") {
        oracle::Sampler rng(2024);
        std::vector<StateSample> samples(100);
        for (auto& s : samples) s = {rng.uniform(-2, 2), rng.uniform(-2, 2)};
        for (const PhysicalParams& params : {kUnit, PhysicalParams::harmonic(2.5, 0.7)}) {
            CHECK(legendre_residual(params, samples, ClassicalSpace::Q) < 1e-13);
            CHECK(legendre_residual(params, samples, ClassicalSpace::P) < 1e-13);
        }
    }

    TEST_CASE("linear potential: constant pdot with the conjugate coordinate held fixed") {
        const PhysicalParams lin = PhysicalParams::linear(1.0);
        const std::vector<StateSample> samples{{0.3, -1.0}, {-1.2, -1.0}, {2.0, -1.0}};
        CHECK(legendre_residual(lin, samples, ClassicalSpace::P, 0.8) < 1e-14);
        CHECK(legendre_residual(lin, samples, ClassicalSpace::Q) < 1e-14);
        CHECK(lagrangian_p(lin, 1.0, -1.0, 5.0) == doctest::Approx(0.5));
    }

    TEST_CASE("q-space Euler-Lagrange solution") {
        const Trajectory t = el_solve_q(kUnit, 0.0, 1.0, 2.0 * oracle::pi, 1e-3);
        CHECK(t.space == ClassicalSpace::Q);
        CHECK(t.times.size() == t.coord.size());
        double err_q = 0.0;
        double err_v = 0.0;
        for (std::size_t i = 0; i < t.times.size(); ++i) {
            err_q = std::max(err_q, std::abs(t.coord[i] - std::sin(t.times[i])));
            err_v = std::max(err_v, std::abs(t.velocity[i] - std::cos(t.times[i])));
            if (i > 0) CHECK(t.times[i] > t.times[i - 1]);
        }
        CHECK(err_q < 1e-8);
        CHECK(err_v < 1e-8);
        const Trajectory quarter = el_solve_q(kUnit, 0.0, 1.0, oracle::pi / 2.0, 1e-3);
        CHECK(std::abs(quarter.coord.back() - 1.0) < 1e-8);
    }

    TEST_CASE("equilibrium stays at rest") {
        for (const Trajectory& t : {el_solve_q(kUnit, 0.0, 0.0, 1.0, 1e-3), el_solve_p(kUnit, 0.0, 0.0, 1.0, 1e-3)})
            for (std::size_t i = 0; i < t.times.size(); ++i) {
                CHECK(t.coord[i] == 0.0);
                CHECK(t.velocity[i] == 0.0);
            }
    }

    TEST_CASE("p-space Euler-Lagrange solution") {
        const Trajectory t = el_solve_p(kUnit, 1.0, 0.0, 2.0 * oracle::pi, 1e-3);
        double err = 0.0;
        for (std::size_t i = 0; i < t.times.size(); ++i) err = std::max(err, std::abs(t.coord[i] - std::cos(t.times[i])));
        CHECK(err < 1e-8);
    }

    TEST_CASE("initial-condition translation") {
        const auto a = translate_initial_conditions(kUnit, 0.0, 1.0);
        CHECK(a.p0 == 1.0);
        CHECK(a.pdot0 == 0.0);
        const auto b = translate_initial_conditions(kUnit, 1.0, 0.0);
        CHECK(b.p0 == 0.0);
        CHECK(b.pdot0 == -1.0);
        const auto c = translate_initial_conditions(kUnit, 0.0, 0.0);
        CHECK(c.p0 == 0.0);
        CHECK(c.pdot0 == 0.0);
    }

    TEST_CASE("property: both spaces describe the same motion") {
        oracle::Sampler rng(11);
        for (int trial = 0; trial < 5; ++trial) {
            const PhysicalParams params = PhysicalParams::harmonic(rng.uniform(0.5, 2.0), rng.uniform(0.5, 2.0));
            const double q0 = rng.uniform(-1, 1);
            const double v0 = rng.uniform(-1, 1);
            const double period = 2.0 * oracle::pi / params.omega();
            const Trajectory tq = el_solve_q(params, q0, v0, period, 1e-3);
            const auto ic = translate_initial_conditions(params, q0, v0);
            const Trajectory tp = el_solve_p(params, ic.p0, ic.pdot0, period, 1e-3);
            REQUIRE(tq.times.size() == tp.times.size());
            double e1 = 0.0, e2 = 0.0, eq = 0.0, ep = 0.0;
            for (std::size_t i = 0; i < tq.times.size(); ++i) {
                e1 = std::max(e1, std::abs(tp.coord[i] - params.mass() * tq.velocity[i]));
                e2 = std::max(e2, std::abs(tp.velocity[i] + params.k() * tq.coord[i]));
                eq = std::max(eq, std::abs(trajectory_energy(params, tq, i) - trajectory_energy(params, tq, 0)));
                ep = std::max(ep, std::abs(trajectory_energy(params, tp, i) - trajectory_energy(params, tp, 0)));
            }
            CHECK(e1 < 1e-7);
            CHECK(e2 < 1e-7);
            CHECK(eq < 1e-9);
            CHECK(ep < 1e-9);
        }
    }

    TEST_CASE("preconditions") {
        const PhysicalParams lin = PhysicalParams::linear(1.0);
        CHECK_THROWS_AS(el_solve_q(lin, 0, 1, 1, 1e-3), PreconditionError);
        CHECK_THROWS_AS(el_solve_p(lin, 0, 1, 1, 1e-3), PreconditionError);
        CHECK_THROWS_AS(translate_initial_conditions(lin, 0, 1), PreconditionError);
        CHECK_THROWS_AS(el_solve_q(kUnit, 0, 1, 1, 0.0), PreconditionError);
        CHECK_THROWS_AS(el_solve_q(kUnit, 0, 1, -1, 1e-3), PreconditionError);
    }
}
