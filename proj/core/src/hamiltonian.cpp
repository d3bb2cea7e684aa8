#include "epsqp/hamiltonian.hpp"

namespace epsqp {

std::string to_string(Monomial m) {
    switch (m) {
        case Monomial::PiQSquared: return "pi_q^2";
        case Monomial::PPiQ: return "p*pi_q";
        case Monomial::PiPSquared: return "pi_p^2";
        case Monomial::QPiP: return "q*pi_p";
        case Monomial::PiP: return "pi_p";
    }
    return "?";
}

double HamiltonianCoefficients::operator[](Monomial m) const {
    switch (m) {
        case Monomial::PiQSquared: return pi_q_sq;
        case Monomial::PPiQ: return p_pi_q;
        case Monomial::PiPSquared: return pi_p_sq;
        case Monomial::QPiP: return q_pi_p;
        case Monomial::PiP: return pi_p;
    }
    return 0.0;
}

double ExtendedHamiltonian::evaluate(double pi_p_val, double pi_q_val, double p, double q) const {
    const auto& c = coefficients;
    return c.pi_q_sq * pi_q_val * pi_q_val + c.p_pi_q * p * pi_q_val + c.pi_p_sq * pi_p_val * pi_p_val +
           c.q_pi_p * q * pi_p_val + c.pi_p * pi_p_val;
}

std::vector<Monomial> ExtendedHamiltonian::terms() const {
    std::vector<Monomial> out;
    for (const Monomial m : {Monomial::PiQSquared, Monomial::PPiQ, Monomial::PiPSquared, Monomial::QPiP, Monomial::PiP})
        if (coefficients[m] != 0.0) out.push_back(m);
    return out;
}

ExtendedHamiltonian extended_hamiltonian(const PhysicalParams& params) {
    return transformed_hamiltonian(params, 0.0);
}

ExtendedHamiltonian transformed_hamiltonian(const PhysicalParams& params, double alpha) {
    const double m = params.mass();
    const double weight = 1.0 + 2.0 * alpha;
    HamiltonianCoefficients c;
    c.pi_q_sq = weight / (2.0 * m);
    c.p_pi_q = 1.0 / m;
    if (params.is_linear()) {
        c.pi_p = -params.b();
    } else {
        c.pi_p_sq = -weight * params.k() / 2.0;
        c.q_pi_p = -params.k();
    }
    return {params, alpha, c};
}

}  // namespace epsqp
