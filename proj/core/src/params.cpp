#include "epsqp/params.hpp"

#include <cmath>
#include <sstream>

#include "epsqp/error.hpp"

namespace epsqp {

PhysicalParams PhysicalParams::linear(double b, double mass, double hbar) {
    require(mass > 0.0 && std::isfinite(mass), "PhysicalParams: mass must be positive");
    require(hbar > 0.0 && std::isfinite(hbar), "PhysicalParams: hbar must be positive");
    require(std::isfinite(b), "PhysicalParams: slope b must be finite");
    return PhysicalParams(mass, hbar, LinearPotential{b});
}

PhysicalParams PhysicalParams::harmonic(double k, double mass, double hbar) {
    require(mass > 0.0 && std::isfinite(mass), "PhysicalParams: mass must be positive");
    require(hbar > 0.0 && std::isfinite(hbar), "PhysicalParams: hbar must be positive");
    require(k > 0.0 && std::isfinite(k), "PhysicalParams: spring constant k must be positive");
    return PhysicalParams(mass, hbar, HarmonicPotential{k});
}

double PhysicalParams::b() const {
    const auto* lin = std::get_if<LinearPotential>(&potential_);
    require(lin != nullptr, "PhysicalParams::b: potential is not linear");
    return lin->b;
}

double PhysicalParams::k() const {
    const auto* harm = std::get_if<HarmonicPotential>(&potential_);
    require(harm != nullptr, "PhysicalParams::k: potential is not harmonic");
    return harm->k;
}

double PhysicalParams::omega() const { return std::sqrt(k() / mass_); }

double PhysicalParams::V(double q) const noexcept {
    if (const auto* lin = std::get_if<LinearPotential>(&potential_)) return lin->b * q;
    return 0.5 * std::get<HarmonicPotential>(potential_).k * q * q;
}

double PhysicalParams::dV(double q) const noexcept {
    if (const auto* lin = std::get_if<LinearPotential>(&potential_)) return lin->b;
    return std::get<HarmonicPotential>(potential_).k * q;
}

double PhysicalParams::d2V() const noexcept {
    if (is_linear()) return 0.0;
    return std::get<HarmonicPotential>(potential_).k;
}

std::string PhysicalParams::describe() const {
    std::ostringstream os;
    os.precision(17);
    if (is_linear())
        os << "linear(b=" << b() << ")";
    else
        os << "harmonic(k=" << k() << ")";
    os << " m=" << mass_ << " hbar=" << hbar_;
    return os.str();
}

}  // namespace epsqp
