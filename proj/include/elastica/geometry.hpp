#pragma once

// Cylindrical reconstruction r(s) = (ρ cos θ, ρ sin θ, z), the Frenet triad in
// the cylindrical basis, the azimuthal increment Δθ and the Darboux frame.

#include <elastica/curvature.hpp>
#include <elastica/functionals.hpp>
#include <elastica/parallel.hpp>

#include <array>
#include <cmath>
#include <numbers>
#include <vector>

namespace elastica {

using Vec3 = std::array<double, 3>;

inline Vec3 cross(const Vec3& a, const Vec3& b)
{
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

inline double dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

inline double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }

struct FrameCoeffs {
    double alpha = 0.0;
    double beta = 0.0;
    double gamma = 0.0;
    double R = 0.0;
    double mu = 0.0;
};

struct CurveSample {
    double s = 0.0;
    double kappa = 0.0;
    double tau = 0.0;
    double rho = 0.0;
    double theta = 0.0;
    double z = 0.0;
    Vec3 r{};
    Vec3 t_hat{};
    Vec3 n_hat{};
    Vec3 b_hat{};
    double Theta_darboux = 0.0;
};

struct OmegaParam {
    double Omega = 0.0;
    double wp_prime_residual = 0.0; // |℘′(Ω+ω3) + 2μ q0^{3/2}(μ² - λ)|
};

struct DarbouxFrame {
    double Theta = 0.0;
    double kappa_g = 0.0;
    double kappa_n = 0.0;
    double tau_r = 0.0;
    double kappa_g_closed = 0.0;
};

namespace detail {

// ((1-λ) q0)² + ν² q0², finite on the whole chart and zero only at (0, 1).
inline double radius_denominator(double m, double q0)
{
    const double a = 0.5 * (1.0 + m - q0);
    return a * a + std::max(0.0, (1.0 - q0) * (q0 - m));
}

} // namespace detail

/// R with R⁻⁴ = (k0⁴/4) [(1-λ)² + ν²].
inline double length_scale(const CurvatureSolution& sol)
{
    const double d = detail::radius_denominator(sol.m(), sol.q0());
    if (!(d > 0.0)) fail(ErrorKind::Unbounded, "length scale R is infinite at m = 0, q0 = 1");
    return std::sqrt(2.0 * sol.q0() / (sol.k0 * sol.k0 * std::sqrt(d)));
}

inline double mu_of(const CurvatureSolution& sol) { return std::sqrt(mu2(sol.m(), sol.q0())); }

/// Components of ẑ on the Frenet triad: α = R²(κ²-λk0²)/2, β = R²κ′, γ = μk0/κ.
inline FrameCoeffs frame_coeffs(double s, const CurvatureSolution& sol,
                                const Tolerances& tol = default_tolerances())
{
    FrameCoeffs f;
    f.R = length_scale(sol);
    f.mu = mu_of(sol);
    const double k2 = kappa2(s, sol);
    const double k = std::sqrt(k2);
    const double R2 = f.R * f.R;
    f.alpha = 0.5 * R2 * (k2 - sol.lambda * sol.k0 * sol.k0);
    f.beta = R2 * kappa2_prime(s, sol) / (2.0 * k);
    f.gamma = f.mu * sol.k0 / k;
    if (1.0 - f.gamma * f.gamma < tol.frame_degenerate) {
        fail(ErrorKind::FrameDegenerate, "binormal is aligned with the symmetry axis");
    }
    return f;
}

/// ρ = R² sqrt(κ² - μ²k0²).
inline double rho_of(double s, const CurvatureSolution& sol)
{
    const double R = length_scale(sol);
    const double arg = kappa2(s, sol) - mu2(sol.m(), sol.q0()) * sol.k0 * sol.k0;
    return R * R * std::sqrt(std::max(0.0, arg));
}

/// Vertical coordinate without the closure requirement: the periodic Jacobi
/// zeta term plus the linear drift that vanishes when q0 = Q0(m).
inline double z_of_open(double s, const CurvatureSolution& sol)
{
    const double R = length_scale(sol);
    const double m = sol.m();
    const double xi = sol.xi_of(s);
    const double scale = sol.k0 * R * R / std::sqrt(sol.q0());
    const double drift = 2.0 * ellint_E(m) / complete_k(m) - (1.0 + sol.q0() - m);
    return scale * (jacobi_zeta(xi, m) + 0.5 * xi * drift);
}

/// z drift per period S; zero on the closed-knot curve.
inline double z_drift_per_period(const CurvatureSolution& sol)
{
    return z_of_open(sol.period_S, sol) - z_of_open(0.0, sol);
}

/// z = (k0 R² / sqrt(q0)) Z(ξ|m), periodic when q0 = Q0(m).
inline double z_of(double s, const CurvatureSolution& sol, const Tolerances& tol = default_tolerances())
{
    if (std::abs(sol.q0() - Q0(sol.m())) > tol.q0_closure) {
        fail(ErrorKind::ClosureViolated, "z(s) is periodic only for q0 = Q0(m)");
    }
    const double R = length_scale(sol);
    return sol.k0 * R * R / std::sqrt(sol.q0()) * jacobi_zeta(sol.xi_of(s), sol.m());
}

/// Ω in [0, ω1] with ℘(Ω + ω3) = q0 μ² - (2/3) q0 λ.
inline OmegaParam omega_param(const CurvatureSolution& sol, const Tolerances& tol = default_tolerances())
{
    const double m = sol.m(), q0 = sol.q0();
    const double mu2v = mu2(m, q0);
    const double q0lambda = 1.5 * q0 - 0.5 * (1.0 + m);
    const double target = q0 * mu2v - 2.0 / 3.0 * q0lambda;
    OmegaParam o;
    const ComplexValue z = wp_inverse(target, sol.ctx, Strip::Omega3, tol);
    o.Omega = z.real();
    if (std::isfinite(o.Omega) && sol.ctx.kind == LatticeKind::Regular) {
        const double expected = -2.0 * std::sqrt(mu2v) * std::sqrt(q0) * (q0 * mu2v - q0lambda);
        o.wp_prime_residual = std::abs(wp_prime(z, sol.ctx) - expected);
    }
    return o;
}

inline OmegaParam omega_param(double m) { return omega_param(make_solution(m, Q0(m))); }

namespace detail {

inline double delta_theta_impl(const CurvatureSolution& sol, const OmegaParam& om, double* imag_out)
{
    const EllipticContext& ctx = sol.ctx;
    const ComplexValue w3 = ctx.omega3();
    const ComplexValue v = ComplexValue{om.Omega, 0.0} + w3;
    const double mu = mu_of(sol);
    const ComplexValue bracket = w3 * weier_zeta(v, ctx) - v * ctx.eta3;
    const ComplexValue dt = 2.0 * mu * std::sqrt(sol.q0()) * ctx.omega3_abs + ComplexValue{0.0, 2.0} * bracket;
    if (imag_out) *imag_out = std::abs(dt.imag());
    return dt.real();
}

// log σ(iξ - Ω - ω_b) - log σ(iξ + Ω - ω_b), each modulo 2πi.
inline ComplexValue theta_log_term(double xi, const CurvatureSolution& sol, double Omega)
{
    const ComplexValue ixi{0.0, xi};
    return log_sigma(ixi - Omega - sol.omega_b, sol.ctx) - log_sigma(ixi + Omega - sol.omega_b, sol.ctx);
}

inline double wrap_pi(double x)
{
    return x - 2.0 * std::numbers::pi * std::nearbyint(x / (2.0 * std::numbers::pi));
}

// Continuous Im of the log ratio from 0 to xi (0 <= xi <= one period).
inline double unwrapped_log_imag(double xi, const CurvatureSolution& sol, double Omega, double* real_out)
{
    const double period = 2.0 * sol.ctx.omega3_abs;
    const ComplexValue start = theta_log_term(0.0, sol, Omega);
    for (int refine = 0; refine < 6; ++refine) {
        const int steps = std::max(1, static_cast<int>(std::ceil((64 << refine) * xi / period)));
        double acc = 0.0;
        ComplexValue prev = start;
        bool ok = true;
        for (int k = 1; k <= steps; ++k) {
            const ComplexValue cur = theta_log_term(xi * k / steps, sol, Omega);
            const double inc = wrap_pi(cur.imag() - prev.imag());
            if (std::abs(inc) > std::numbers::pi / 2.0) {
                ok = false;
                break;
            }
            acc += inc;
            prev = cur;
        }
        if (ok) {
            if (real_out) *real_out = prev.real() - start.real();
            return acc;
        }
    }
    fail(ErrorKind::BranchError, "log-σ ratio could not be unwrapped continuously");
}

} // namespace detail

/// Δθ = 2μ sqrt(q0) |ω3| + 2i [ω3 ζ(Ω+ω3) - (Ω+ω3) ζ(ω3)].
inline double delta_theta(const CurvatureSolution& sol)
{
    return detail::delta_theta_impl(sol, omega_param(sol), nullptr);
}

inline double delta_theta(double m) { return delta_theta(make_solution(m, Q0(m))); }

/// θ(ξ) = ξ [μ sqrt(q0) - ζ(Ω+ω3) + ζ(ω3)] + (i/2) ln[σ-ratio], with the
/// logarithm continued from ξ = 0 and periods added as multiples of Δθ.
inline double theta_of(double xi, const CurvatureSolution& sol, const OmegaParam& om, double* imag_out = nullptr)
{
    if (imag_out) *imag_out = 0.0;
    if (sol.m() == 0.0) return 0.0; // constant curvature: θ′ vanishes identically
    const double period = 2.0 * sol.ctx.omega3_abs;
    const double j = std::floor(xi / period);
    double xi0 = xi - j * period;
    double offset = 0.0;
    if (j != 0.0) offset = j * detail::delta_theta_impl(sol, om, nullptr);
    if (xi0 == 0.0) return offset;

    const EllipticContext& ctx = sol.ctx;
    const ComplexValue v = ComplexValue{om.Omega, 0.0} + ctx.omega3();
    const double slope = (mu_of(sol) * std::sqrt(sol.q0()) - (weier_zeta(v, ctx) - ctx.eta3)).real();
    double re = 0.0;
    const double im = detail::unwrapped_log_imag(xi0, sol, om.Omega, &re);
    if (imag_out) *imag_out = std::abs(0.5 * re);
    return offset + xi0 * slope - 0.5 * im;
}

/// θ′(s) = (k0 μ/2)(κ² - λk0²)/(κ² - μ²k0²).
inline double theta_prime(double s, const CurvatureSolution& sol)
{
    const double k2 = kappa2(s, sol);
    const double mu2v = mu2(sol.m(), sol.q0());
    const double k02 = sol.k0 * sol.k0;
    return 0.5 * sol.k0 * std::sqrt(mu2v) * (k2 - sol.lambda * k02) / (k2 - mu2v * k02);
}

/// Normalized radius R̂ = k0 κ̂ R on the closed-knot curve.
inline double normalized_radius(double m, double q0)
{
    const double d = detail::radius_denominator(m, q0);
    if (!(d > 0.0)) fail(ErrorKind::Unbounded, "normalized radius is infinite at m = 0");
    const double qk = q0_kappa_hat2(m, q0);
    return std::pow(4.0 * qk * qk / d, 0.25);
}

inline double normalized_radius(double m) { return normalized_radius(m, Q0(m)); }

/// Frenet triad in cartesian components at azimuth θ.
inline void frenet_triad(const FrameCoeffs& f, double theta, Vec3& t, Vec3& n, Vec3& b)
{
    const double c = std::sqrt(1.0 - f.gamma * f.gamma);
    const Vec3 rho_hat{std::cos(theta), std::sin(theta), 0.0};
    const Vec3 theta_hat{-std::sin(theta), std::cos(theta), 0.0};
    const double tr = f.beta / c, tt = f.alpha * f.gamma / c;
    const double nr = -f.alpha / c, nt = f.beta * f.gamma / c;
    for (int i = 0; i < 3; ++i) {
        t[i] = tr * rho_hat[i] + tt * theta_hat[i];
        n[i] = nr * rho_hat[i] + nt * theta_hat[i];
        b[i] = -c * theta_hat[i];
    }
    t[2] += f.alpha;
    n[2] += f.beta;
    b[2] += f.gamma;
}

/// Darboux angle Θ = arctan(-(κ²)′/(k0³ν)) and the rotated curvatures.
inline DarbouxFrame darboux(double s, const CurvatureSolution& sol, const Tolerances& tol = default_tolerances())
{
    if (sol.nu == 0.0) fail(ErrorKind::DomainError, "Darboux angle requires ν != 0");
    const double k03 = sol.k0 * sol.k0 * sol.k0;
    auto angle = [&](double x) { return std::atan(-kappa2_prime(x, sol) / (k03 * sol.nu)); };
    DarbouxFrame d;
    d.Theta = angle(s);
    const double k2 = kappa2(s, sol);
    const double k = std::sqrt(k2);
    d.kappa_g = k * std::cos(d.Theta);
    d.kappa_n = -k * std::sin(d.Theta);
    const double h = sol.period_S / tol.fd_divisions;
    const double dTheta = (8.0 * (angle(s + h) - angle(s - h)) - (angle(s + 2.0 * h) - angle(s - 2.0 * h))) / (12.0 * h);
    d.tau_r = torsion(s, sol) + dTheta;
    const double k02 = sol.k0 * sol.k0;
    const double a = k2 - sol.lambda * k02;
    const double w = k02 * k02 * ((1.0 - sol.lambda) * (1.0 - sol.lambda) + sol.nu * sol.nu) - a * a;
    d.kappa_g_closed = k03 * sol.nu / std::sqrt(w);
    return d;
}

/// Samples the curve at s_i = i S / N for i = 0 .. N ℓ (N ℓ + 1 rows).
/// Samples are computed independently, so the output does not depend on the
/// number of worker threads.
inline std::vector<CurveSample> reconstruct_curve(const CurvatureSolution& sol, int samples_per_period,
                                                  int num_periods, bool require_closure = true,
                                                  const Tolerances& tol = default_tolerances())
{
    if (samples_per_period < 16) fail(ErrorKind::DomainError, "samples_per_period must be at least 16");
    if (num_periods < 1) fail(ErrorKind::DomainError, "num_periods must be positive");
    if (require_closure && std::abs(sol.q0() - Q0(sol.m())) > tol.q0_closure) {
        fail(ErrorKind::ClosureViolated, "q0 differs from Q0(m)");
    }
    const OmegaParam om = omega_param(sol, tol);
    const std::size_t rows = static_cast<std::size_t>(samples_per_period) * num_periods + 1;
    std::vector<CurveSample> out(rows);
    const double k03 = sol.k0 * sol.k0 * sol.k0;
    parallel_for(rows, [&](std::size_t i) {
        CurveSample c;
        c.s = sol.period_S * static_cast<double>(i) / samples_per_period;
        const double k2 = kappa2(c.s, sol);
        c.kappa = std::sqrt(k2);
        c.tau = sol.nu * k03 / (2.0 * k2);
        c.rho = rho_of(c.s, sol);
        c.theta = theta_of(sol.xi_of(c.s), sol, om);
        c.z = require_closure ? z_of(c.s, sol, tol) : z_of_open(c.s, sol);
        c.r = {c.rho * std::cos(c.theta), c.rho * std::sin(c.theta), c.z};
        const FrameCoeffs f = frame_coeffs(c.s, sol, tol);
        frenet_triad(f, c.theta, c.t_hat, c.n_hat, c.b_hat);
        c.Theta_darboux = std::atan2(-kappa2_prime(c.s, sol), k03 * sol.nu);
        out[i] = c;
    });
    return out;
}

} // namespace elastica
