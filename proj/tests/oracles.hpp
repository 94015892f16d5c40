#pragma once

// Independent reference values: adaptive Gauss-Kronrod quadrature, finite
// differences, and direct period integrals of the Jacobi curvature.

#include <elastica/elastica.hpp>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <numbers>

namespace oracle {

template <class F>
double integrate(F&& f, double a, double b, double rel = 1e-14)
{
    return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, a, b, 20, rel);
}

// K(p) = ∫_0^{π/2} (1 - p sin²)^{-1/2}.
inline double K(double p)
{
    return integrate([p](double t) { return 1.0 / std::sqrt(1.0 - p * std::sin(t) * std::sin(t)); }, 0.0,
                     std::numbers::pi / 2);
}

inline double E(double p)
{
    return integrate([p](double t) { return std::sqrt(1.0 - p * std::sin(t) * std::sin(t)); }, 0.0,
                     std::numbers::pi / 2);
}

// Period integrals split at the quarter periods so each piece is smooth.
template <class F>
double period_integral(F&& f, double S)
{
    double sum = 0.0;
    for (int i = 0; i < 4; ++i) sum += integrate(f, S * i / 4.0, S * (i + 1) / 4.0);
    return sum;
}

struct Functionals {
    double F_hat, tau_avg, T;
};

// F̂ = ∫κ²/(2 k0 κ̂), ⟨τ⟩ = ∫τ/(k0 S κ̂), T = ∫τ/(2π), over one period.
inline Functionals functionals_by_quadrature(double m, double q0, double k0 = 1.0)
{
    using namespace elastica;
    const CurvatureSolution sol = make_solution(m, q0, k0);
    const double kh = std::sqrt(kappa_hat2(m, q0));
    const double S = sol.period_S;
    const double k03 = k0 * k0 * k0;
    const double ik2 = period_integral([&](double s) { return kappa2_jacobi(s, sol); }, S);
    const double itau = period_integral([&](double s) { return sol.nu * k03 / (2.0 * kappa2_jacobi(s, sol)); }, S);
    return {ik2 / (2.0 * k0 * kh), itau / (k0 * S * kh), itau / (2.0 * std::numbers::pi)};
}

template <class F>
double d1(F&& f, double x, double h)
{
    return (-f(x + 2 * h) + 8 * f(x + h) - 8 * f(x - h) + f(x - 2 * h)) / (12 * h);
}

template <class F>
double d2(F&& f, double x, double h)
{
    return (-f(x + 2 * h) + 16 * f(x + h) - 30 * f(x) + 16 * f(x - h) - f(x - 2 * h)) / (12 * h * h);
}

// Fourth-order seven-point stencil; a coarser step keeps roundoff below truncation.
template <class F>
double d3(F&& f, double x, double h)
{
    return (-f(x + 3 * h) + 8 * f(x + 2 * h) - 13 * f(x + h) + 13 * f(x - h) - 8 * f(x - 2 * h) + f(x - 3 * h)) /
           (8 * h * h * h);
}

// Position from the analytic cylindrical coordinates.
inline elastica::Vec3 position(double s, const elastica::CurvatureSolution& sol, const elastica::OmegaParam& om)
{
    const double rho = elastica::rho_of(s, sol);
    const double th = elastica::theta_of(sol.xi_of(s), sol, om);
    return {rho * std::cos(th), rho * std::sin(th), elastica::z_of(s, sol)};
}

struct GeometryErrors {
    double unit_speed = 0.0;   // max | |r'| - 1 |
    double tangent = 0.0;      // max |r' - t̂|
    double orthonormal = 0.0;  // max |t̂·n̂|, |t̂·b̂|, |n̂·b̂|, | |·| - 1 |, |t̂×n̂ - b̂|
    double z_constancy = 0.0;  // ẑ = αt̂ + βn̂ + γb̂ - (0,0,1), α²+β²+γ² - 1, Frenet transport of (α,β,γ)
    double kappa_rel = 0.0;    // |κ_fd - κ| / κ
    double tau_rel = 0.0;      // |τ_fd - τ| / |τ|
};

// Finite-difference reconstruction at n points of one period, h = S/divisions.
inline GeometryErrors geometry_errors(const elastica::CurvatureSolution& sol, int n, int divisions = 4096)
{
    using namespace elastica;
    GeometryErrors g;
    const OmegaParam om = omega_param(sol);
    const double S = sol.period_S;
    const double h = S / divisions;
    auto comp = [&](int i) { return [&, i](double s) { return position(s, sol, om)[static_cast<std::size_t>(i)]; }; };
    for (int j = 0; j < n; ++j) {
        const double s = S * (j + 0.37) / n;
        Vec3 r1, r2, r3;
        for (int i = 0; i < 3; ++i) {
            auto f = comp(i);
            r1[static_cast<std::size_t>(i)] = d1(f, s, h);
            r2[static_cast<std::size_t>(i)] = d2(f, s, h);
            r3[static_cast<std::size_t>(i)] = d3(f, s, S / 512);
        }
        g.unit_speed = std::max(g.unit_speed, std::abs(norm(r1) - 1.0));

        const FrameCoeffs fc = frame_coeffs(s, sol);
        const double th = theta_of(sol.xi_of(s), sol, om);
        Vec3 t, nn, b;
        frenet_triad(fc, th, t, nn, b);
        g.tangent = std::max(g.tangent, norm({r1[0] - t[0], r1[1] - t[1], r1[2] - t[2]}));
        const Vec3 txn = cross(t, nn);
        for (double e : {dot(t, nn), dot(t, b), dot(nn, b), norm(t) - 1.0, norm(nn) - 1.0, norm(b) - 1.0,
                         norm({txn[0] - b[0], txn[1] - b[1], txn[2] - b[2]})}) {
            g.orthonormal = std::max(g.orthonormal, std::abs(e));
        }
        Vec3 zhat;
        for (std::size_t i = 0; i < 3; ++i) zhat[i] = fc.alpha * t[i] + fc.beta * nn[i] + fc.gamma * b[i];
        g.z_constancy = std::max({g.z_constancy, std::abs(zhat[0]), std::abs(zhat[1]), std::abs(zhat[2] - 1.0),
                                  std::abs(fc.alpha * fc.alpha + fc.beta * fc.beta + fc.gamma * fc.gamma - 1.0)});
        // dẑ/ds = 0 through the Frenet equations: α' = κβ, β' = τγ - κα, γ' = -τβ.
        const double kap = kappa_of(s, sol);
        const double tor = torsion(s, sol);
        const double da = d1([&](double x) { return frame_coeffs(x, sol).alpha; }, s, h);
        const double db = d1([&](double x) { return frame_coeffs(x, sol).beta; }, s, h);
        const double dc = d1([&](double x) { return frame_coeffs(x, sol).gamma; }, s, h);
        g.z_constancy = std::max({g.z_constancy, std::abs(da - kap * fc.beta),
                                  std::abs(db - tor * fc.gamma + kap * fc.alpha), std::abs(dc + tor * fc.beta)});

        const Vec3 c12 = cross(r1, r2);
        const double sp = norm(r1);
        const double kfd = norm(c12) / (sp * sp * sp);
        const double tfd = dot(c12, r3) / dot(c12, c12);
        g.kappa_rel = std::max(g.kappa_rel, std::abs(kfd - kap) / kap);
        g.tau_rel = std::max(g.tau_rel, std::abs(tfd - tor) / std::abs(tor));
    }
    return g;
}

} // namespace oracle
