#pragma once

#include <string>
#include <variant>

namespace epsqp {

struct LinearPotential {
    double b;
    friend bool operator==(const LinearPotential&, const LinearPotential&) = default;
};

struct HarmonicPotential {
    double k;
    friend bool operator==(const HarmonicPotential&, const HarmonicPotential&) = default;
};

using Potential = std::variant<LinearPotential, HarmonicPotential>;

/// Mass, hbar and the external potential of H = p^2/2m + V(q).
/// Only linear (V = bq) and harmonic (V = kq^2/2) potentials exist here.
class PhysicalParams {
public:
    static PhysicalParams linear(double b, double mass = 1.0, double hbar = 1.0);
    static PhysicalParams harmonic(double k, double mass = 1.0, double hbar = 1.0);

    double mass() const noexcept { return mass_; }
    double hbar() const noexcept { return hbar_; }
    const Potential& potential() const noexcept { return potential_; }

    bool is_linear() const noexcept { return std::holds_alternative<LinearPotential>(potential_); }
    bool is_harmonic() const noexcept { return std::holds_alternative<HarmonicPotential>(potential_); }

    /// Slope b; throws PreconditionError for a harmonic potential.
    double b() const;
    /// Spring constant k; throws PreconditionError for a linear potential.
    double k() const;
    /// sqrt(k/m); throws PreconditionError for a linear potential.
    double omega() const;

    double V(double q) const noexcept;
    double dV(double q) const noexcept;
    double d2V() const noexcept;
    double hamiltonian(double p, double q) const noexcept { return p * p / (2.0 * mass_) + V(q); }

    std::string describe() const;

    friend bool operator==(const PhysicalParams&, const PhysicalParams&) = default;

private:
    PhysicalParams(double mass, double hbar, Potential potential)
        : mass_(mass), hbar_(hbar), potential_(potential) {}

    double mass_;
    double hbar_;
    Potential potential_;
};

}  // namespace epsqp
