#pragma once

// Weierstrass ℘, ℘′, ζ, σ for real ordered roots e1 >= e2 >= e3.
//
// Regular lattices are evaluated with θ1 series on a canonical rectangle
// whose imaginary half-period is the longer one (nome <= e^-π). Lattices
// with a double root degenerate to hyperbolic/trigonometric closed forms.

#include <elastica/elliptic.hpp>

#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>

namespace elastica {

enum class LatticeKind {
    Regular,
    TopDegenerate,    // e1 == e2, ω1 infinite
    BottomDegenerate, // e2 == e3, |ω3| infinite
};

struct EllipticContext {
    double e1 = 0.0, e2 = 0.0, e3 = 0.0;
    double g2 = 0.0, g3 = 0.0, delta = 0.0;
    double p = 0.0, p_prime = 1.0;
    double omega1 = 0.0;
    double omega3_abs = 0.0;
    ComplexValue omega2{};
    ComplexValue eta1{}, eta2{}, eta3{};
    // ± of the imaginary half-period as read from sign(g3); omega3_abs is
    // always the magnitude and omega3() always has positive imaginary part.
    int omega3_sign = 1;
    LatticeKind kind = LatticeKind::Regular;

    // Canonical lattice: real half-period w, imaginary half-period i*wi, wi >= w.
    bool swapped = false;
    double w = 0.0, wi = 0.0;
    double tau = 0.0; // wi / w
    ComplexValue eta_w{}, eta_wi{};
    double theta1p0 = 0.0;
    double pole_tol = 1e-8;

    ComplexValue omega3() const { return {0.0, omega3_abs}; }
};

struct HalfPeriods {
    double omega1;
    ComplexValue omega3;
    int omega3_sign;
};

namespace detail {

struct Theta1 {
    ComplexValue t0, t1, t2, t3; // θ1 and its first three derivatives
};

inline Theta1 theta1_series(ComplexValue v, double tau)
{
    Theta1 r{};
    const double im = std::abs(v.imag());
    for (int n = 0; n < 40; ++n) {
        const double k = 2.0 * n + 1.0;
        const double h = n + 0.5;
        const double c = (n % 2 == 0 ? 2.0 : -2.0) * std::exp(-std::numbers::pi * tau * h * h);
        const ComplexValue s = std::sin(k * v);
        const ComplexValue co = std::cos(k * v);
        r.t0 += c * s;
        r.t1 += c * k * co;
        r.t2 -= c * k * k * s;
        r.t3 -= c * k * k * k * co;
        const double bound = std::abs(c) * std::exp(k * im) * k * k * k;
        const double scale = std::abs(r.t0) + std::abs(r.t1) + std::abs(r.t2) + std::abs(r.t3);
        if (n > 0 && bound < 1e-18 * scale) break;
    }
    return r;
}

// Reduction of z into the canonical cell; returns (a, b) with
// z = z0 + 2a w + 2b i wi.
struct Reduced {
    ComplexValue z0;
    double a;
    double b;
};

inline Reduced reduce_canonical(ComplexValue z, const EllipticContext& c)
{
    const double a = std::nearbyint(z.real() / (2.0 * c.w));
    const double b = std::nearbyint(z.imag() / (2.0 * c.wi));
    return {z - ComplexValue{2.0 * a * c.w, 2.0 * b * c.wi}, a, b};
}

inline void check_pole(ComplexValue z0, double scale, const EllipticContext& c)
{
    if (std::abs(z0) < c.pole_tol * scale) {
        fail(ErrorKind::PoleError, "argument lies on a lattice point");
    }
}

inline void check_argument(ComplexValue z)
{
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
        fail(ErrorKind::DomainError, "Weierstrass argument must be finite");
    }
}

// ---- canonical (regular) lattice -------------------------------------------

inline ComplexValue canon_wp(ComplexValue z, const EllipticContext& c, ComplexValue* prime)
{
    const Reduced r = reduce_canonical(z, c);
    check_pole(r.z0, std::min(c.w, c.wi), c);
    const double f = std::numbers::pi / (2.0 * c.w);
    const Theta1 t = theta1_series(f * r.z0, c.tau);
    const ComplexValue l1 = t.t1 / t.t0;
    const ComplexValue l2 = t.t2 / t.t0;
    if (prime) {
        const ComplexValue l3 = t.t3 / t.t0;
        *prime = -f * f * f * (l3 - 3.0 * l2 * l1 + 2.0 * l1 * l1 * l1);
    }
    return -c.eta_w / c.w - f * f * (l2 - l1 * l1);
}

inline ComplexValue canon_zeta_cell(ComplexValue z0, const EllipticContext& c)
{
    const double f = std::numbers::pi / (2.0 * c.w);
    const Theta1 t = theta1_series(f * z0, c.tau);
    return c.eta_w * z0 / c.w + f * t.t1 / t.t0;
}

inline ComplexValue canon_zeta(ComplexValue z, const EllipticContext& c)
{
    const Reduced r = reduce_canonical(z, c);
    check_pole(r.z0, std::min(c.w, c.wi), c);
    return canon_zeta_cell(r.z0, c) + 2.0 * r.a * c.eta_w + 2.0 * r.b * c.eta_wi;
}

// Quasi-periodic exponent for σ(z0 + 2a w + 2b i wi) / σ(z0).
inline ComplexValue sigma_shift_log(const Reduced& r, const EllipticContext& c)
{
    const ComplexValue eta = r.a * c.eta_w + r.b * c.eta_wi;
    const ComplexValue half = ComplexValue{r.a * c.w, r.b * c.wi};
    const double parity = r.a + r.b + r.a * r.b;
    return ComplexValue{0.0, std::numbers::pi * std::fmod(parity, 2.0)} +
           2.0 * eta * (r.z0 + half);
}

inline ComplexValue canon_log_sigma(ComplexValue z, const EllipticContext& c)
{
    const Reduced r = reduce_canonical(z, c);
    if (std::abs(r.z0) == 0.0) {
        fail(ErrorKind::PoleError, "log σ is singular on the lattice");
    }
    const double f = std::numbers::pi / (2.0 * c.w);
    const Theta1 t = theta1_series(f * r.z0, c.tau);
    const ComplexValue base = std::log(1.0 / f) + c.eta_w * r.z0 * r.z0 / (2.0 * c.w) +
                              std::log(t.t0) - std::log(c.theta1p0);
    return base + sigma_shift_log(r, c);
}

inline ComplexValue canon_sigma(ComplexValue z, const EllipticContext& c)
{
    const Reduced r = reduce_canonical(z, c);
    const double f = std::numbers::pi / (2.0 * c.w);
    const Theta1 t = theta1_series(f * r.z0, c.tau);
    const ComplexValue base =
        std::exp(c.eta_w * r.z0 * r.z0 / (2.0 * c.w)) * t.t0 / (f * c.theta1p0);
    return base * std::exp(sigma_shift_log(r, c));
}

// ---- degenerate lattices ---------------------------------------------------

// Top: e1 = e2 = cc, ℘ = cc + 3cc csch²(kz). Bottom: e2 = e3 = -cc, ℘ = -cc + 3cc csc²(kz).
struct DegenerateData {
    double cc;
    double k;
    bool top;
};

inline DegenerateData degenerate_data(const EllipticContext& c)
{
    if (c.kind == LatticeKind::TopDegenerate) return {c.e1, std::sqrt(3.0 * c.e1), true};
    return {c.e1 / 2.0, std::sqrt(1.5 * c.e1), false};
}

inline ComplexValue deg_reduce(ComplexValue z, const DegenerateData& d)
{
    const double period = std::numbers::pi / d.k;
    if (d.top) {
        const double b = std::nearbyint(z.imag() / period);
        return z - ComplexValue{0.0, b * period};
    }
    const double a = std::nearbyint(z.real() / period);
    return z - ComplexValue{a * period, 0.0};
}

inline ComplexValue deg_s(ComplexValue x, bool top) { return top ? std::sinh(x) : std::sin(x); }
inline ComplexValue deg_c(ComplexValue x, bool top) { return top ? std::cosh(x) : std::cos(x); }

inline ComplexValue deg_wp(ComplexValue z, const EllipticContext& c, ComplexValue* prime)
{
    const DegenerateData d = degenerate_data(c);
    const ComplexValue z0 = deg_reduce(z, d);
    check_pole(z0, std::numbers::pi / (2.0 * d.k), c);
    const ComplexValue s = deg_s(d.k * z0, d.top);
    const ComplexValue co = deg_c(d.k * z0, d.top);
    const ComplexValue inv2 = 1.0 / (s * s);
    if (prime) *prime = -6.0 * d.cc * d.k * inv2 * co / s;
    return (d.top ? d.cc : -d.cc) + 3.0 * d.cc * inv2;
}

inline ComplexValue deg_zeta(ComplexValue z, const EllipticContext& c)
{
    const DegenerateData d = degenerate_data(c);
    const ComplexValue z0 = deg_reduce(z, d);
    check_pole(z0, std::numbers::pi / (2.0 * d.k), c);
    const ComplexValue ratio = deg_c(d.k * z, d.top) / deg_s(d.k * z, d.top);
    return (d.top ? -d.cc : d.cc) * z + d.k * ratio;
}

inline ComplexValue deg_log_sigma(ComplexValue z, const EllipticContext& c)
{
    const DegenerateData d = degenerate_data(c);
    const ComplexValue quad = (d.top ? -0.5 : 0.5) * d.cc * z * z;
    return quad + std::log(deg_s(d.k * z, d.top) / d.k);
}

inline ComplexValue deg_sigma(ComplexValue z, const EllipticContext& c)
{
    const DegenerateData d = degenerate_data(c);
    const ComplexValue quad = (d.top ? -0.5 : 0.5) * d.cc * z * z;
    return std::exp(quad) * deg_s(d.k * z, d.top) / d.k;
}

// Map to the canonical lattice: when swapped, L' = -i L.
inline ComplexValue to_canonical(ComplexValue z, const EllipticContext& c)
{
    return c.swapped ? ComplexValue{z.imag(), -z.real()} : z;
}

} // namespace detail

/// ℘(z) on the lattice of ctx.
inline ComplexValue wp(ComplexValue z, const EllipticContext& ctx)
{
    detail::check_argument(z);
    if (ctx.kind != LatticeKind::Regular) return detail::deg_wp(z, ctx, nullptr);
    const ComplexValue v = detail::canon_wp(detail::to_canonical(z, ctx), ctx, nullptr);
    return ctx.swapped ? -v : v;
}

/// ℘′(z).
inline ComplexValue wp_prime(ComplexValue z, const EllipticContext& ctx)
{
    detail::check_argument(z);
    ComplexValue d{};
    if (ctx.kind != LatticeKind::Regular) {
        detail::deg_wp(z, ctx, &d);
        return d;
    }
    detail::canon_wp(detail::to_canonical(z, ctx), ctx, &d);
    return ctx.swapped ? ComplexValue{0.0, 1.0} * d : d;
}

/// Weierstrass ζ(z), ζ′ = -℘.
inline ComplexValue weier_zeta(ComplexValue z, const EllipticContext& ctx)
{
    detail::check_argument(z);
    if (ctx.kind != LatticeKind::Regular) return detail::deg_zeta(z, ctx);
    const ComplexValue v = detail::canon_zeta(detail::to_canonical(z, ctx), ctx);
    return ctx.swapped ? ComplexValue{0.0, -1.0} * v : v;
}

/// Weierstrass σ(z).
inline ComplexValue weier_sigma(ComplexValue z, const EllipticContext& ctx)
{
    detail::check_argument(z);
    if (ctx.kind != LatticeKind::Regular) return detail::deg_sigma(z, ctx);
    const ComplexValue v = detail::canon_sigma(detail::to_canonical(z, ctx), ctx);
    return ctx.swapped ? ComplexValue{0.0, 1.0} * v : v;
}

/// log σ(z), defined modulo 2πi; avoids overflow of σ for large |z|.
inline ComplexValue log_sigma(ComplexValue z, const EllipticContext& ctx)
{
    detail::check_argument(z);
    if (ctx.kind != LatticeKind::Regular) return detail::deg_log_sigma(z, ctx);
    const ComplexValue v = detail::canon_log_sigma(detail::to_canonical(z, ctx), ctx);
    return ctx.swapped ? v + ComplexValue{0.0, std::numbers::pi / 2.0} : v;
}

/// ω1 = K(p)/sqrt(e1-e3), ω3 = i K(1-p)/sqrt(e1-e3); infinite half-periods
/// are returned for double roots.
inline HalfPeriods half_periods(double e1, double e2, double e3,
                                const Tolerances& tol = default_tolerances())
{
    const double span = e1 - e3;
    const double scale = std::max({1.0, std::abs(e1), std::abs(e3)});
    if (!(span > tol.degenerate_roots * scale)) {
        fail(ErrorKind::DegenerateRoots, "all three cubic roots coincide");
    }
    const double g3 = 4.0 * e1 * e2 * e3;
    const int sign = g3 < 0.0 ? -1 : 1;
    const double p = (e2 - e3) / span;
    const double root = std::sqrt(span);
    const double inf = std::numeric_limits<double>::infinity();
    const double w1 = (1.0 - p) < tol.pole_at_one ? inf : detail::agm_k(p) / root;
    const double w3 = p < tol.pole_at_one ? inf : detail::agm_k(1.0 - p) / root;
    return {w1, {0.0, w3}, sign};
}

/// Builds the immutable lattice context from three real roots (any order).
inline EllipticContext make_context(double a, double b, double c,
                                    const Tolerances& tol = default_tolerances())
{
    std::array<double, 3> r{a, b, c};
    for (double x : r) detail::require_finite(x, "cubic root");
    std::sort(r.begin(), r.end(), std::greater<>());
    EllipticContext ctx;
    ctx.e1 = r[0];
    ctx.e2 = r[1];
    ctx.e3 = r[2];
    const double scale = std::max({std::abs(r[0]), std::abs(r[1]), std::abs(r[2])});
    if (std::abs(r[0] + r[1] + r[2]) > 1e-12 * std::max(scale, 1e-300)) {
        fail(ErrorKind::DomainError, "cubic roots must sum to zero");
    }
    ctx.g2 = 2.0 * (r[0] * r[0] + r[1] * r[1] + r[2] * r[2]);
    ctx.g3 = 4.0 * r[0] * r[1] * r[2];
    ctx.delta = 16.0 * std::pow((r[0] - r[1]) * (r[0] - r[2]) * (r[1] - r[2]), 2);
    ctx.pole_tol = tol.pole;

    const HalfPeriods hp = half_periods(r[0], r[1], r[2], tol);
    const double span = r[0] - r[2];
    ctx.p = (r[1] - r[2]) / span;
    ctx.p_prime = 1.0 - ctx.p;
    ctx.omega1 = hp.omega1;
    ctx.omega3_abs = hp.omega3.imag();
    ctx.omega3_sign = hp.omega3_sign;
    const double inf = std::numeric_limits<double>::infinity();

    if (std::isinf(ctx.omega1)) {
        ctx.kind = LatticeKind::TopDegenerate;
        const double cc = ctx.e1;
        ctx.omega3_abs = std::numbers::pi / (2.0 * std::sqrt(3.0 * cc));
        ctx.eta1 = {-inf, 0.0};
        ctx.eta3 = ComplexValue{0.0, -cc * ctx.omega3_abs};
        ctx.omega2 = {-inf, -ctx.omega3_abs};
        ctx.eta2 = {inf, cc * ctx.omega3_abs};
        return ctx;
    }
    if (std::isinf(ctx.omega3_abs)) {
        ctx.kind = LatticeKind::BottomDegenerate;
        const double cc = ctx.e1 / 2.0;
        ctx.omega1 = std::numbers::pi / (2.0 * std::sqrt(3.0 * cc));
        ctx.eta1 = {cc * ctx.omega1, 0.0};
        ctx.eta3 = {0.0, inf};
        ctx.omega2 = {-ctx.omega1, -inf};
        ctx.eta2 = {-cc * ctx.omega1, -inf};
        return ctx;
    }

    ctx.swapped = ctx.omega3_abs < ctx.omega1;
    ctx.w = ctx.swapped ? ctx.omega3_abs : ctx.omega1;
    ctx.wi = ctx.swapped ? ctx.omega1 : ctx.omega3_abs;
    ctx.tau = ctx.wi / ctx.w;
    const detail::Theta1 t0 = detail::theta1_series(ComplexValue{0.0, 0.0}, ctx.tau);
    ctx.theta1p0 = t0.t1.real();
    ctx.eta_w = -std::numbers::pi * std::numbers::pi * t0.t3.real() / (12.0 * ctx.w * t0.t1.real());
    ctx.eta_wi = detail::canon_zeta_cell(ComplexValue{0.0, ctx.wi}, ctx);
    if (ctx.swapped) {
        ctx.eta1 = ComplexValue{0.0, 1.0} * ctx.eta_wi;
        ctx.eta3 = ComplexValue{0.0, -1.0} * ctx.eta_w;
    } else {
        ctx.eta1 = ctx.eta_w;
        ctx.eta3 = ctx.eta_wi;
    }
    ctx.omega2 = -ctx.omega1 - ctx.omega3();
    ctx.eta2 = -ctx.eta1 - ctx.eta3;
    return ctx;
}

/// Real roots of 4x³ - g2 x - g3 (Δ >= 0), largest first.
inline std::array<double, 3> roots_from_invariants(double g2, double g3)
{
    if (!(g2 > 0.0)) fail(ErrorKind::DegenerateRoots, "g2 must be positive for distinct real roots");
    const double arg = std::clamp(3.0 * std::sqrt(3.0) * g3 / std::pow(g2, 1.5), -1.0, 1.0);
    const double amp = std::sqrt(g2 / 3.0);
    const double phi = std::acos(arg) / 3.0;
    std::array<double, 3> e{};
    for (int k = 0; k < 3; ++k) {
        double x = amp * std::cos(phi - 2.0 * std::numbers::pi * k / 3.0);
        // One Newton polish where the root is simple.
        const double d = 12.0 * x * x - g2;
        if (std::abs(d) > 1e-8 * g2) x -= (4.0 * x * x * x - g2 * x - g3) / d;
        e[k] = x;
    }
    std::sort(e.begin(), e.end(), std::greater<>());
    return e;
}

inline EllipticContext context_from_invariants(double g2, double g3,
                                               const Tolerances& tol = default_tolerances())
{
    const auto e = roots_from_invariants(g2, g3);
    const double shift = (e[0] + e[1] + e[2]) / 3.0;
    return make_context(e[0] - shift, e[1] - shift, e[2] - shift, tol);
}

enum class Strip {
    RealAxis, // z = x, 0 < x <= ω1, ℘ in [e1, ∞)
    Omega3,   // z = ω3 + x, 0 <= x <= ω1, ℘ in [e3, e2]
};

/// Preimage of a real value on the requested half-period strip.
inline ComplexValue wp_inverse(double value, const EllipticContext& ctx, Strip strip = Strip::Omega3,
                               const Tolerances& tol = default_tolerances())
{
    detail::require_finite(value, "℘ target");
    const double span = ctx.e1 - ctx.e3;
    const double slack = tol.root * std::max(1.0, span);
    const double root = std::sqrt(span);
    if (strip == Strip::RealAxis) {
        if (value < ctx.e1 - slack) fail(ErrorKind::NoSolutionInStrip, "target below e1 on the real axis");
        const double s = std::sqrt(std::min(1.0, span / (std::max(value, ctx.e1) - ctx.e3)));
        return {ellint_F(std::asin(s), ctx.p) / root, 0.0};
    }
    const double gap = ctx.e2 - ctx.e3;
    if (value < ctx.e3 - slack || value > ctx.e2 + slack) {
        fail(ErrorKind::NoSolutionInStrip, "target outside [e3, e2] on the ω3 strip");
    }
    if (gap <= 0.0) return ctx.omega3();
    // sn²(x sqrt(e1-e3) | p) = t; near t = 1 use sn(K - u) = cd(u) to keep accuracy.
    const double t = std::clamp((value - ctx.e3) / gap, 0.0, 1.0);
    const double tc = std::clamp((ctx.e2 - value) / gap, 0.0, 1.0);
    if (t <= 0.5) return ctx.omega3() + ComplexValue{ellint_F(std::asin(std::sqrt(t)), ctx.p) / root, 0.0};
    if (ctx.kind == LatticeKind::TopDegenerate) {
        if (tc == 0.0) fail(ErrorKind::NoSolutionInStrip, "target e2 lies at infinity on a degenerate lattice");
        return ctx.omega3() + ComplexValue{ellint_F(std::asin(std::sqrt(t)), ctx.p) / root, 0.0};
    }
    const double u = ellint_F(std::asin(std::sqrt(tc / (1.0 - ctx.p * t))), ctx.p);
    return ctx.omega3() + ComplexValue{(detail::agm_k(ctx.p) - u) / root, 0.0};
}

/// |t²℘(tz; t⁻⁴g2, t⁻⁶g3) - ℘(z; g2, g3)|.
inline double homogeneity_check(double t, ComplexValue z, double g2, double g3,
                                const Tolerances& tol = default_tolerances())
{
    if (t == 0.0) fail(ErrorKind::DomainError, "homogeneity scale must be nonzero");
    const EllipticContext base = context_from_invariants(g2, g3, tol);
    const EllipticContext scaled = context_from_invariants(g2 / std::pow(t, 4), g3 / std::pow(t, 6), tol);
    return std::abs(t * t * wp(t * z, scaled) - wp(z, base));
}

} // namespace elastica
