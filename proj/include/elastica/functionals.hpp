#pragma once

// Normalized curvature functional, averaged torsion and total torsion.

#include <elastica/parametrization.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>

namespace elastica {

struct FunctionalSet {
    double F_hat = 0.0;
    double tau_avg = 0.0;
    double T_total = 0.0;
    ComplexValue psi{};
    double kappa_hat2 = 1.0;
    double imag_residual = 0.0; // largest imaginary part discarded from the complex forms
};

/// q0 κ̂²: q0 for m >= 0 and q0 - m for m < 0. Stays finite at q0 -> 0.
inline double q0_kappa_hat2(double m, double q0) { return m < 0.0 ? q0 - m : q0; }

inline double kappa_hat2(double m, double q0) { return m < 0.0 ? 1.0 - m / q0 : 1.0; }

/// F̄ = 2/sqrt(q0 κ̂²) [E(m) - (1 - q0) K(m)]; k0 drops out of the normalized value.
inline double curvature_functional(double m, double q0, double k0 = 1.0)
{
    validate({m, q0});
    if (!(k0 > 0.0)) fail(ErrorKind::DomainError, "k0 must be positive");
    return 2.0 / std::sqrt(q0_kappa_hat2(m, q0)) * (ellint_E(m) - (1.0 - q0) * complete_k(m));
}

inline double curvature_functional(double m) { return curvature_functional(m, Q0(m)); }

/// ψ on the ω3 strip with ℘(ψ) = e_a - q0; on this strip ℘′(ψ) = +2 q0^{3/2} ν.
inline ComplexValue psi_of(double m, double q0, const Tolerances& tol = default_tolerances())
{
    validate({m, q0});
    const EllipticContext ctx = ls_roots(m, tol);
    return wp_inverse(ls_ea(m) - q0, ctx, Strip::Omega3, tol);
}

namespace detail {

// ω3 ζ(ψ) - ψ ζ(ω3), the common numerator of ⟨τ⟩ and T.
inline ComplexValue torsion_numerator(const EllipticContext& ctx, ComplexValue psi)
{
    const ComplexValue w3 = ctx.omega3();
    return w3 * weier_zeta(psi, ctx) - psi * ctx.eta3;
}

} // namespace detail

/// All three functionals at (m, q0).
inline FunctionalSet compute_functionals(double m, double q0, const Tolerances& tol = default_tolerances())
{
    validate({m, q0});
    FunctionalSet f;
    const EllipticContext ctx = ls_roots(m, tol);
    f.kappa_hat2 = kappa_hat2(m, q0);
    f.F_hat = curvature_functional(m, q0);
    f.psi = wp_inverse(ls_ea(m) - q0, ctx, Strip::Omega3, tol);
    const ComplexValue num = detail::torsion_numerator(ctx, f.psi);
    const ComplexValue tau = num / (2.0 * std::sqrt(q0_kappa_hat2(m, q0)) * ctx.omega3());
    const ComplexValue T = num / ComplexValue{0.0, std::numbers::pi};
    f.tau_avg = tau.real();
    f.T_total = T.real();
    f.imag_residual = std::max(std::abs(tau.imag()), std::abs(T.imag()));
    return f;
}

/// Functionals on the closed-knot curve q0 = Q0(m).
inline FunctionalSet compute_functionals(double m) { return compute_functionals(m, Q0(m)); }

/// ⟨τ⟩ = [ω3 ζ(ψ) - ψ ζ(ω3)] / (2 sqrt(q0 κ̂²) ω3).
inline double averaged_torsion(double m, double q0, double k0 = 1.0)
{
    if (!(k0 > 0.0)) fail(ErrorKind::DomainError, "k0 must be positive");
    return compute_functionals(m, q0).tau_avg;
}

inline double averaged_torsion(double m) { return averaged_torsion(m, Q0(m)); }

/// T = [ω3 ζ(ψ) - ψ ζ(ω3)] / (π i).
inline double total_torsion(double m, double q0) { return compute_functionals(m, q0).T_total; }

inline double total_torsion(double m) { return total_torsion(m, Q0(m)); }

/// max |f(n(m)) - f(m)| over F̂, ⟨τ⟩, T on the closed-knot curve.
inline double symmetry_check(double m)
{
    const FunctionalSet a = compute_functionals(m);
    const FunctionalSet b = compute_functionals(n_of(m));
    return std::max({std::abs(a.F_hat - b.F_hat), std::abs(a.tau_avg - b.tau_avg),
                     std::abs(a.T_total - b.T_total)});
}

} // namespace elastica
