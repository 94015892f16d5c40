#pragma once

// The two parameter charts: physical (λ, ν, q0) and Langer-Singer (m, q0),
// the closed-knot constraint q0 = Q0(m), and the modulus map n(m).

#include <elastica/brent.hpp>
#include <elastica/weierstrass.hpp>

#include <boost/math/tools/minima.hpp>

#include <cmath>
#include <utility>

namespace elastica {

enum class Branch {
    Classical, // λ <= λ_Δ, e_a = e1, 0 <= m
    Extended,  // λ > λ_Δ, e_a = e2, m < 0
};

struct CurvatureParams {
    double lambda = 0.0;
    double nu = 0.0;
    double k0 = 1.0;
    double lambda_delta = 1.0; // 1 - ν²/2
    double delta = 1.0;        // sqrt((1-2λ)² + 4ν²)

    static CurvatureParams make(double lambda, double nu, double k0 = 1.0)
    {
        detail::require_finite(lambda, "λ");
        detail::require_finite(nu, "ν");
        if (!(k0 > 0.0) || !std::isfinite(k0)) fail(ErrorKind::DomainError, "k0 must be positive");
        CurvatureParams p;
        p.lambda = lambda;
        p.nu = nu;
        p.k0 = k0;
        p.lambda_delta = 1.0 - 0.5 * nu * nu;
        p.delta = std::hypot(1.0 - 2.0 * lambda, 2.0 * nu);
        return p;
    }

    // Ties at λ = λ_Δ go to the classical branch.
    Branch branch() const { return lambda > lambda_delta ? Branch::Extended : Branch::Classical; }
};

struct LangerSingerParams {
    double m = 0.0;
    double q0 = 1.0;
};

inline void validate(const LangerSingerParams& ls)
{
    detail::require_finite(ls.m, "m");
    detail::require_finite(ls.q0, "q0");
    if (!(ls.q0 > 0.0)) fail(ErrorKind::DomainError, "q0 must be positive");
    if (ls.q0 > 1.0 + 1e-14) fail(ErrorKind::DomainError, "q0 must not exceed 1");
    if (ls.m > ls.q0 + 1e-14) fail(ErrorKind::DomainError, "m must not exceed q0");
}

/// Cubic roots from (λ, ν, q0): e_a = (1 - 2λ/3) q0, e_{b,c} = -e_a/2 ± q0 δ/2.
inline EllipticContext roots_from_physical(const CurvatureParams& params, double q0,
                                           const Tolerances& tol = default_tolerances())
{
    if (!(q0 > 0.0)) fail(ErrorKind::DomainError, "q0 must be positive");
    const double ea = (1.0 - 2.0 * params.lambda / 3.0) * q0;
    const double half = 0.5 * q0 * params.delta;
    return make_context(ea, -0.5 * ea + half, -0.5 * ea - half, tol);
}

/// e_a from the physical chart.
inline double ea_of_physical(const CurvatureParams& params, double q0)
{
    return (1.0 - 2.0 * params.lambda / 3.0) * q0;
}

/// Langer-Singer roots, ordered for every real m.
inline EllipticContext ls_roots(double m, const Tolerances& tol = default_tolerances())
{
    detail::require_finite(m, "m");
    const double a = (1.0 + m) / 3.0;
    const double b = (1.0 - 2.0 * m) / 3.0;
    const double c = (m - 2.0) / 3.0;
    return make_context(a, b, c, tol);
}

/// e_a = (1 + m)/3 on every branch.
inline double ls_ea(double m) { return (1.0 + m) / 3.0; }

inline double lambda_of(double m, double q0)
{
    validate({m, q0});
    return 1.5 - (1.0 + m) / (2.0 * q0);
}

inline double nu2_of(double m, double q0)
{
    validate({m, q0});
    return std::max(0.0, (1.0 - q0) * (q0 - m)) / (q0 * q0);
}

/// q0 range on which ν²(m, q0) >= ν².
inline std::pair<double, double> q0_bounds(double m, double nu)
{
    const double disc = (1.0 - m) * (1.0 - m) - 4.0 * nu * nu * m;
    if (disc < 0.0) fail(ErrorKind::NoRealBoundary, "q0 boundary discriminant is negative");
    const double root = std::sqrt(disc);
    const double den = 2.0 * (1.0 + nu * nu);
    return {((1.0 + m) - root) / den, ((1.0 + m) + root) / den};
}

/// Vertical-closure constraint Q0(m) = 2E(m)/K(m) - (1 - m).
inline double Q0(double m)
{
    detail::require_finite(m, "m");
    if (!(m < 1.0)) fail(ErrorKind::DomainError, "Q0 requires m < 1");
    return 2.0 * ellint_E(m) / complete_k(m) - (1.0 - m);
}

inline double n_of(double m)
{
    detail::require_finite(m, "m");
    if (m == 1.0) fail(ErrorKind::DomainError, "n(m) is singular at m = 1");
    return -m / (1.0 - m);
}

struct M0 {
    double minus; // 2E = K
    double plus;  // n(m0-)
};

/// Endpoints of the closed-knot modulus range.
inline M0 find_m0()
{
    static const M0 cached = [] {
        const double mm = brent_root([](double m) { return 2.0 * ellint_E(m) - complete_k(m); }, 0.5, 0.99, 1e-16);
        return M0{mm, n_of(mm)};
    }();
    return cached;
}

namespace detail {

inline void require_knot_range(double m)
{
    const M0 m0 = find_m0();
    if (!(m > m0.plus) || m > m0.minus + 1e-12) {
        fail(ErrorKind::DomainError, "m must lie in (m0+, m0-]");
    }
}

} // namespace detail

/// ν(m) along the closed-knot curve q0 = Q0(m).
inline double nu_of_m(double m)
{
    detail::require_knot_range(m);
    const double q = Q0(m);
    return std::sqrt(std::max(0.0, (1.0 / q - 1.0) * (1.0 - m / q)));
}

inline double lambda_of_m(double m)
{
    detail::require_knot_range(m);
    return 1.5 - (m + 1.0) / (2.0 * Q0(m));
}

/// μ² = 4(1-q0)(q0-m) / [(1+m-q0)² + 4(1-q0)(q0-m)]; the 0/0 point (0, 1)
/// takes its limit 1/3 along the closed-knot curve.
inline double mu2(double m, double q0)
{
    validate({m, q0});
    const double num = 4.0 * std::max(0.0, (1.0 - q0) * (q0 - m));
    const double a = 1.0 + m - q0;
    const double den = a * a + num;
    if (den == 0.0) return 1.0 / 3.0;
    return num / den;
}

struct NuMax {
    double m_star;
    double nu_star;
};

/// Maximum of ν(m) on the classical branch.
inline NuMax find_nu_max()
{
    const M0 m0 = find_m0();
    const auto r = boost::math::tools::brent_find_minima([](double m) { return -nu_of_m(m); },
                                                         0.05, m0.minus - 1e-6, 52);
    return {r.first, -r.second};
}

} // namespace elastica
