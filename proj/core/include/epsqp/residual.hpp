#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

namespace epsqp {

/// How ResidualReport::l2_norm was formed.
enum class NormKind {
    /// sqrt(sum |r|^2 dA) over the whole grid; used for field equations.
    FieldL2,
    /// sqrt(sum R^2 r^2 / sum R^2) over the mask; used for Hamilton-Jacobi
    /// residuals, which are the real part of the dynamical equation divided by R.
    DensityWeighted,
};

struct ResidualReport {
    std::string name;
    double l2_norm = 0.0;
    /// Unweighted max |r| over the mask (whole grid for FieldL2).
    double max_norm = 0.0;
    double masked_fraction = 0.0;
    NormKind norm_kind = NormKind::FieldL2;
    std::map<std::string, double> metadata;
    /// Residual samples (|r| for complex residuals); zero where masked.
    std::vector<double> field;
    std::vector<bool> mask;
};

/// Three snapshots at t - dt, t, t + dt for central time differences.
template <class Field>
struct Snapshots {
    Field before;
    Field center;
    Field after;
    double dt;
};

/// Build snapshots from a callable `make(t)`.
template <class Make>
auto make_snapshots(Make&& make, double t, double dt) {
    using Field = decltype(make(t));
    return Snapshots<Field>{make(t - dt), make(t), make(t + dt), dt};
}

/// Apply `f` to every snapshot.
template <class Field, class F>
auto map_snapshots(const Snapshots<Field>& s, F&& f) {
    using Out = decltype(f(s.center));
    return Snapshots<Out>{f(s.before), f(s.center), f(s.after), s.dt};
}

}  // namespace epsqp
