#pragma once

// Complete and incomplete elliptic integrals and the Jacobi elliptic
// functions, all in the parameter convention K(m) = int dθ / sqrt(1 - m sin²θ).

#include <elastica/errors.hpp>
#include <elastica/tolerances.hpp>

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <string>

namespace elastica {

using ComplexValue = std::complex<double>;

namespace detail {

inline void require_finite(double x, const char* what)
{
    if (!std::isfinite(x)) {
        fail(ErrorKind::DomainError, std::string(what) + " must be finite");
    }
}

// K(p) for 0 <= p < 1 by the arithmetic-geometric mean.
inline double agm_k(double p)
{
    double a = 1.0;
    double b = std::sqrt(1.0 - p);
    for (int i = 0; i < 64 && std::abs(a - b) > 1e-16 * a; ++i) {
        const double an = 0.5 * (a + b);
        b = std::sqrt(a * b);
        a = an;
    }
    return std::numbers::pi / (a + b);
}

// E(m) for 0 <= m < 1: K (1 - sum 2^(n-1) c_n^2).
inline double agm_e(double m)
{
    double a = 1.0;
    double b = std::sqrt(1.0 - m);
    double sum = 0.5 * m;
    double weight = 0.5;
    for (int i = 0; i < 64; ++i) {
        const double c = 0.5 * (a - b);
        const double an = 0.5 * (a + b);
        b = std::sqrt(a * b);
        a = an;
        weight *= 2.0;
        sum += weight * c * c;
        if (std::abs(c) <= 1e-15 * a) break;
    }
    return std::numbers::pi / (2.0 * a) * (1.0 - sum);
}

} // namespace detail

/// Complete elliptic integral of the first kind, extended to every real p.
/// Real for p < 1; for p > 1 the value [K(1/p) - i K(1 - 1/p)] / sqrt(p).
inline ComplexValue ellint_K(double p, const Tolerances& tol = default_tolerances())
{
    detail::require_finite(p, "modulus p");
    if (std::abs(p - 1.0) < tol.pole_at_one) {
        fail(ErrorKind::PoleAtOne, "K(p) diverges at p = 1");
    }
    if (p >= 0.0 && p < 1.0) return {detail::agm_k(p), 0.0};
    if (p < 0.0) {
        const double pc = 1.0 - p;
        return {detail::agm_k(-p / pc) / std::sqrt(pc), 0.0};
    }
    const double inv = 1.0 / p;
    const double re = detail::agm_k(inv);
    const double im = inv < tol.pole_at_one ? 0.0 : ellint_K(1.0 - inv, tol).real();
    return ComplexValue{re, -im} / std::sqrt(p);
}

/// Real part of ellint_K for p < 1.
inline double complete_k(double p, const Tolerances& tol = default_tolerances())
{
    if (p > 1.0) fail(ErrorKind::DomainError, "complete_k requires p < 1");
    return ellint_K(p, tol).real();
}

/// Complete elliptic integral of the second kind for m <= 1.
inline double ellint_E(double m)
{
    detail::require_finite(m, "parameter m");
    if (m > 1.0) fail(ErrorKind::DomainError, "E(m) requires m <= 1");
    if (m == 1.0) return 1.0;
    if (m >= 0.0) return detail::agm_e(m);
    const double mc = 1.0 - m;
    return std::sqrt(mc) * detail::agm_e(-m / mc);
}

/// Carlson's symmetric integral R_F(x, y, z); at most one argument may be zero.
inline double carlson_rf(double x, double y, double z)
{
    constexpr double errtol = 1e-3;
    for (int i = 0; i < 200; ++i) {
        const double sx = std::sqrt(x), sy = std::sqrt(y), sz = std::sqrt(z);
        const double lambda = sx * (sy + sz) + sy * sz;
        x = 0.25 * (x + lambda);
        y = 0.25 * (y + lambda);
        z = 0.25 * (z + lambda);
        const double ave = (x + y + z) / 3.0;
        const double dx = (ave - x) / ave, dy = (ave - y) / ave, dz = (ave - z) / ave;
        if (std::max({std::abs(dx), std::abs(dy), std::abs(dz)}) < errtol) {
            const double e2 = dx * dy - dz * dz;
            const double e3 = dx * dy * dz;
            return (1.0 + (e2 / 24.0 - 0.1 - 3.0 * e3 / 44.0) * e2 + e3 / 14.0) / std::sqrt(ave);
        }
    }
    return std::numeric_limits<double>::quiet_NaN();
}

/// Carlson's degenerate integral R_D(x, y, z).
inline double carlson_rd(double x, double y, double z)
{
    constexpr double errtol = 1e-3;
    constexpr double c1 = 3.0 / 14.0, c2 = 1.0 / 6.0, c3 = 9.0 / 22.0, c4 = 3.0 / 26.0;
    constexpr double c5 = 0.25 * c3, c6 = 1.5 * c4;
    double sum = 0.0;
    double fac = 1.0;
    for (int i = 0; i < 200; ++i) {
        const double sx = std::sqrt(x), sy = std::sqrt(y), sz = std::sqrt(z);
        const double lambda = sx * (sy + sz) + sy * sz;
        sum += fac / (sz * (z + lambda));
        fac *= 0.25;
        x = 0.25 * (x + lambda);
        y = 0.25 * (y + lambda);
        z = 0.25 * (z + lambda);
        const double ave = 0.2 * (x + y + 3.0 * z);
        const double dx = (ave - x) / ave, dy = (ave - y) / ave, dz = (ave - z) / ave;
        if (std::max({std::abs(dx), std::abs(dy), std::abs(dz)}) < errtol) {
            const double ea = dx * dy;
            const double eb = dz * dz;
            const double ec = ea - eb;
            const double ed = ea - 6.0 * eb;
            const double ee = ed + ec + ec;
            return 3.0 * sum +
                   fac * (1.0 + ed * (-c1 + c5 * ed - c6 * dz * ee) +
                          dz * (c2 * ee + dz * (-c3 * ec + dz * c4 * ea))) /
                       (ave * std::sqrt(ave));
        }
    }
    return std::numeric_limits<double>::quiet_NaN();
}

namespace detail {

// Splits phi = phi0 + j*pi with phi0 in [-pi/2, pi/2].
inline int reduce_amplitude(double phi, double& phi0)
{
    const int j = static_cast<int>(std::nearbyint(phi / std::numbers::pi));
    phi0 = phi - j * std::numbers::pi;
    return j;
}

} // namespace detail

/// Incomplete integral of the first kind F(phi | m), m < 1 (m = 1 for |phi| < pi/2).
inline double ellint_F(double phi, double m)
{
    detail::require_finite(phi, "amplitude");
    if (m > 1.0) fail(ErrorKind::DomainError, "F(phi|m) requires m <= 1");
    double phi0 = 0.0;
    const int j = detail::reduce_amplitude(phi, phi0);
    const double s = std::sin(phi0), c = std::cos(phi0);
    const double base = s * carlson_rf(c * c, 1.0 - m * s * s, 1.0);
    if (j == 0) return base;
    return base + 2.0 * j * complete_k(m);
}

/// Incomplete integral of the second kind E(phi | m), m <= 1.
inline double ellint_E(double phi, double m)
{
    detail::require_finite(phi, "amplitude");
    if (m > 1.0) fail(ErrorKind::DomainError, "E(phi|m) requires m <= 1");
    double phi0 = 0.0;
    const int j = detail::reduce_amplitude(phi, phi0);
    const double s = std::sin(phi0), c = std::cos(phi0);
    const double c2 = c * c, d2 = 1.0 - m * s * s;
    const double base = s * carlson_rf(c2, d2, 1.0) - m / 3.0 * s * s * s * carlson_rd(c2, d2, 1.0);
    if (j == 0) return base;
    return base + 2.0 * j * ellint_E(m);
}

struct JacobiTriple {
    double sn;
    double cn;
    double dn;
};

namespace detail {

// 0 < m < 1, argument already reduced to |u| <= 2K.
inline JacobiTriple sncndn_landen(double u, double m)
{
    constexpr int max_levels = 32;
    double a[max_levels + 1];
    double c[max_levels + 1];
    a[0] = 1.0;
    c[0] = std::sqrt(m);
    double b = std::sqrt(1.0 - m);
    int n = 0;
    while (n < max_levels && std::abs(c[n]) > 1e-16 * a[n]) {
        a[n + 1] = 0.5 * (a[n] + b);
        c[n + 1] = 0.5 * (a[n] - b);
        b = std::sqrt(a[n] * b);
        ++n;
    }
    double phi = std::ldexp(a[n] * u, n);
    for (int k = n; k >= 1; --k) {
        phi = 0.5 * (phi + std::asin(c[k] * std::sin(phi) / a[k]));
    }
    const double sn = std::sin(phi);
    return {sn, std::cos(phi), std::sqrt(1.0 - m * sn * sn)};
}

inline JacobiTriple sncndn_unit_interval(double u, double m)
{
    if (m == 0.0) return {std::sin(u), std::cos(u), 1.0};
    if (m == 1.0) {
        const double sech = 1.0 / std::cosh(u);
        return {std::tanh(u), sech, sech};
    }
    const double two_k = 2.0 * agm_k(m);
    const double j = std::nearbyint(u / two_k);
    JacobiTriple t = sncndn_landen(u - j * two_k, m);
    if (std::fmod(j, 2.0) != 0.0) {
        t.sn = -t.sn;
        t.cn = -t.cn;
    }
    return t;
}

} // namespace detail

/// sn, cn, dn of (xi | m) for every m <= 1. Negative m goes through the
/// imaginary-modulus map sn(u|m) = sd(u sqrt(1-m) | -m/(1-m)) / sqrt(1-m).
inline JacobiTriple jacobi_sn_cn_dn(double xi, double m)
{
    detail::require_finite(xi, "argument");
    detail::require_finite(m, "parameter m");
    if (m > 1.0) fail(ErrorKind::DomainError, "Jacobi functions require m <= 1");
    if (m >= 0.0) return detail::sncndn_unit_interval(xi, m);
    const double mc = 1.0 - m;
    const double root = std::sqrt(mc);
    const JacobiTriple t = detail::sncndn_unit_interval(xi * root, -m / mc);
    return {t.sn / (t.dn * root), t.cn / t.dn, 1.0 / t.dn};
}

/// Jacobi amplitude am(xi | m), continuous and increasing in xi.
inline double jacobi_am(double xi, double m)
{
    const double k = complete_k(m);
    const double j = std::nearbyint(xi / (2.0 * k));
    const JacobiTriple t = jacobi_sn_cn_dn(xi - 2.0 * k * j, m);
    return std::atan2(t.sn, t.cn) + j * std::numbers::pi;
}

/// Jacobi zeta function Z(xi | m) = int_0^xi dn² du - (E/K) xi, for m < 1.
/// Periodic with period 2K(m).
inline double jacobi_zeta(double xi, double m)
{
    detail::require_finite(xi, "argument");
    if (!(m < 1.0)) fail(ErrorKind::DomainError, "Jacobi zeta requires m < 1");
    const double k = complete_k(m);
    const double e = ellint_E(m);
    const double j = std::nearbyint(xi / (2.0 * k));
    const double u0 = xi - 2.0 * k * j;
    const JacobiTriple t = jacobi_sn_cn_dn(u0, m);
    const double phi0 = std::atan2(t.sn, t.cn);
    return ellint_E(phi0, m) - e / k * u0;
}

} // namespace elastica
