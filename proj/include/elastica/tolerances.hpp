#pragma once

namespace elastica {

/// Numeric thresholds shared by every module. Each field can be overridden
/// per call; the defaults are the ones the test-suite pins.
struct Tolerances {
    /// |p - 1| below this makes K(p) a pole.
    double pole_at_one = 1e-15;
    /// Lattice-reduced distance to a lattice point that counts as a pole.
    double pole = 1e-8;
    /// (e1 - e3) below this means all three roots coincide.
    double degenerate_roots = 1e-12;
    /// Root solves on the closure condition and on the functional targets.
    double root = 1e-10;
    /// Gate for functional equality between the members of an equivalent pair.
    double equivalence = 1e-8;
    /// Geometric closure gate, relative to the length scale R.
    double closure = 1e-6;
    /// |q0 - Q0(m)| above this means z(s) is not periodic.
    double q0_closure = 1e-9;
    /// 1 - gamma^2 below this makes the cylindrical frame singular.
    double frame_degenerate = 1e-12;
    /// Finite-difference step is S / fd_divisions.
    int fd_divisions = 4096;
    /// Default curve sampling density.
    int samples_per_period = 512;
};

inline const Tolerances& default_tolerances() noexcept
{
    static const Tolerances tol{};
    return tol;
}

} // namespace elastica
