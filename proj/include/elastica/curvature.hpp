#pragma once

// Squared curvature κ²(s) in three equivalent closed forms, torsion, and
// residuals of the governing ODEs.

#include <elastica/parametrization.hpp>

#include <cmath>
#include <vector>

namespace elastica {

enum class SolutionForm { WeierstrassLS, JacobiUnified, WeierstrassTwoParam };

struct CurvatureSolution {
    LangerSingerParams params;
    double k0 = 1.0;
    EllipticContext ctx;
    double period_S = 0.0;
    SolutionForm form = SolutionForm::JacobiUnified;

    double lambda = 0.0;
    double nu = 0.0;
    double e_a = 0.0;
    Branch branch = Branch::Classical;
    ComplexValue omega_a{}; // ℘(ω_a) = e_a
    ComplexValue omega_b{}; // the other finite half-period used by θ(ξ)

    double m() const { return params.m; }
    double q0() const { return params.q0; }
    double xi_of(double s) const { return k0 * s / (2.0 * std::sqrt(params.q0)); }
    double tau0() const { return 0.5 * nu * k0; }
};

/// Builds the solution for chart point (m, q0) with initial curvature k0.
inline CurvatureSolution make_solution(double m, double q0, double k0 = 1.0,
                                       SolutionForm form = SolutionForm::JacobiUnified,
                                       const Tolerances& tol = default_tolerances())
{
    validate({m, q0});
    if (!(k0 > 0.0) || !std::isfinite(k0)) fail(ErrorKind::DomainError, "k0 must be positive");
    if (!(m < 1.0)) fail(ErrorKind::DomainError, "closed-form curvature requires m < 1");
    CurvatureSolution sol;
    sol.params = {m, q0};
    sol.k0 = k0;
    sol.form = form;
    sol.ctx = ls_roots(m, tol);
    sol.period_S = 4.0 * std::sqrt(q0) * complete_k(m) / k0;
    sol.lambda = lambda_of(m, q0);
    sol.nu = std::sqrt(nu2_of(m, q0));
    sol.e_a = ls_ea(m);
    sol.branch = m < 0.0 ? Branch::Extended : Branch::Classical;
    const ComplexValue w1{sol.ctx.omega1, 0.0};
    if (sol.branch == Branch::Classical) {
        sol.omega_a = w1;
        sol.omega_b = sol.ctx.omega2;
    } else {
        sol.omega_a = sol.ctx.omega2;
        sol.omega_b = w1;
    }
    return sol;
}

/// Unified Jacobi form κ² = k0² [1 - (m/q0) sn²(ξ|m)].
inline double kappa2_jacobi(double s, const CurvatureSolution& sol)
{
    const double sn = jacobi_sn_cn_dn(sol.xi_of(s), sol.m()).sn;
    return sol.k0 * sol.k0 * (1.0 - sol.m() / sol.q0() * sn * sn);
}

/// Weierstrass form κ² = (k0²/q0) [q0 + ℘(iξ + ω_a) - e_a].
inline double kappa2_weierstrass_ls(double s, const CurvatureSolution& sol)
{
    if (sol.ctx.kind == LatticeKind::TopDegenerate) {
        // m = 0: ω_a is at infinity and ℘ there equals e_a.
        if (sol.q0() != 1.0) fail(ErrorKind::DomainError, "m = 0 is only admitted with q0 = 1 on the Weierstrass path");
        return sol.k0 * sol.k0;
    }
    const ComplexValue z = ComplexValue{0.0, sol.xi_of(s)} + sol.omega_a;
    const double w = wp(z, sol.ctx).real();
    return sol.k0 * sol.k0 / sol.q0() * (sol.q0() + w - sol.e_a);
}

/// Inverse chart: (λ, ν) -> (m, q0).
inline LangerSingerParams ls_from_physical(const CurvatureParams& params,
                                           const Tolerances& tol = default_tolerances())
{
    const EllipticContext bar = roots_from_physical(params, 1.0, tol);
    if (params.branch() == Branch::Classical) {
        const double span = bar.e1 - bar.e3;
        return {(bar.e1 - bar.e2) / span, 1.0 / span};
    }
    const double span = bar.e2 - bar.e3;
    return {-(bar.e1 - bar.e2) / span, 1.0 / span};
}

/// q0-free form κ² = k0² [1 + ℘(iξ̄ + ω̄_a; ḡ2, ḡ3) - ē_a], ξ̄ = k0 s / 2.
inline double kappa2_two_param(double s, const CurvatureParams& params,
                               const Tolerances& tol = default_tolerances())
{
    const EllipticContext bar = roots_from_physical(params, 1.0, tol);
    if (bar.kind != LatticeKind::Regular || params.lambda == params.lambda_delta) {
        fail(ErrorKind::DegenerateRoots, "two-parameter form is singular at λ = λ_Δ");
    }
    const ComplexValue wa =
        params.branch() == Branch::Classical ? ComplexValue{bar.omega1, 0.0} : bar.omega2;
    const double ea = ea_of_physical(params, 1.0);
    const ComplexValue z = ComplexValue{0.0, 0.5 * params.k0 * s} + wa;
    return params.k0 * params.k0 * (1.0 + wp(z, bar).real() - ea);
}

/// Dispatches on sol.form.
inline double kappa2(double s, const CurvatureSolution& sol)
{
    switch (sol.form) {
        case SolutionForm::WeierstrassLS: return kappa2_weierstrass_ls(s, sol);
        case SolutionForm::WeierstrassTwoParam:
            return kappa2_two_param(s, CurvatureParams::make(sol.lambda, sol.nu, sol.k0));
        case SolutionForm::JacobiUnified: break;
    }
    return kappa2_jacobi(s, sol);
}

inline double kappa_of(double s, const CurvatureSolution& sol) { return std::sqrt(kappa2(s, sol)); }

/// (κ²)′ = -k0³ (m / q0^{3/2}) sn cn dn.
inline double kappa2_prime(double s, const CurvatureSolution& sol)
{
    const JacobiTriple t = jacobi_sn_cn_dn(sol.xi_of(s), sol.m());
    const double k3 = sol.k0 * sol.k0 * sol.k0;
    return -k3 * sol.m() / std::pow(sol.q0(), 1.5) * t.sn * t.cn * t.dn;
}

/// τ = ν k0³ / (2 κ²), so κ²τ = k0² τ0 by construction.
inline double torsion(double s, const CurvatureSolution& sol)
{
    return sol.nu * sol.k0 * sol.k0 * sol.k0 / (2.0 * kappa2(s, sol));
}

/// Λ(s) = -(3/2) κ² + (1/2) λ k0².
inline double lagrange_multiplier(double s, const CurvatureSolution& sol)
{
    return -1.5 * kappa2(s, sol) + 0.5 * sol.lambda * sol.k0 * sol.k0;
}

/// κ²/k̂0² = 1 - (n/q̂) sn²(ξ̂ - K(n) | n) with n = n(m), for m < 0.
inline double kappa2_hat_transform(double s, const CurvatureSolution& sol)
{
    const double m = sol.m();
    if (!(m < 0.0)) fail(ErrorKind::DomainError, "hat transform applies to m < 0");
    const double n = n_of(m);
    const double q0 = sol.q0();
    const double qhat = q0 + n * (1.0 - q0);
    const double khat2 = sol.k0 * sol.k0 * (1.0 - m / q0);
    const double xihat = sol.xi_of(s) * std::sqrt(1.0 - m);
    const double sn = jacobi_sn_cn_dn(xihat - complete_k(n), n).sn;
    return khat2 * (1.0 - n / qhat * sn * sn);
}

struct OdeResiduals {
    double res_kappa_pp = 0.0;     // max relative residual of κ″ = -κ³/2 + k0⁴τ0²/κ³ + λk0²κ/2
    double res_kappa_prime2 = 0.0; // max residual of [(κ²)′]² relative to k0⁶
    double kappa_pp0 = 0.0;        // κ″(0) by central differences
    bool sign_ok = true;           // sign(κ″(0)) == sign(λ - λ_Δ)
};

/// Residuals of the curvature ODEs on a grid of arclength points; derivatives
/// by central differences with step h = S / 10⁴.
inline OdeResiduals ode_residuals(const CurvatureSolution& sol, const std::vector<double>& grid)
{
    OdeResiduals r;
    const double k0 = sol.k0;
    const double h = sol.period_S / 1e4;
    const double t0sq = sol.tau0() * sol.tau0();
    auto kap = [&](double s) { return kappa_of(s, sol); };
    auto k2 = [&](double s) { return kappa2(s, sol); };
    for (double s : grid) {
        const double k = kap(s);
        const double kpp = (kap(s + h) - 2.0 * k + kap(s - h)) / (h * h);
        const double t1 = -0.5 * k * k * k;
        const double t2 = k0 * k0 * k0 * k0 * t0sq / (k * k * k);
        const double t3 = 0.5 * sol.lambda * k0 * k0 * k;
        const double scale = std::abs(t1) + std::abs(t2) + std::abs(t3);
        r.res_kappa_pp = std::max(r.res_kappa_pp, std::abs(kpp - (t1 + t2 + t3)) / scale);

        const double K = k * k;
        const double d = (8.0 * (k2(s + h) - k2(s - h)) - (k2(s + 2.0 * h) - k2(s - 2.0 * h))) / (12.0 * h);
        const double nu2 = sol.nu * sol.nu;
        const double k06 = std::pow(k0, 6);
        const double rhs = -K * K * K + 2.0 * sol.lambda * k0 * k0 * K * K - nu2 * k06 +
                           k0 * k0 * k0 * k0 * K * ((1.0 - 2.0 * sol.lambda) + nu2);
        r.res_kappa_prime2 = std::max(r.res_kappa_prime2, std::abs(d * d - rhs) / k06);
    }
    const double lambda_delta = 1.0 - 0.5 * sol.nu * sol.nu;
    r.kappa_pp0 = (kap(h) - 2.0 * kap(0.0) + kap(-h)) / (h * h);
    const double expected = 0.5 * k0 * k0 * k0 * (sol.lambda - lambda_delta);
    const double tol = 1e-8 * k0 * k0 * k0;
    if (std::abs(expected) <= tol) {
        r.sign_ok = std::abs(r.kappa_pp0) <= tol;
    } else {
        r.sign_ok = (r.kappa_pp0 > 0.0) == (expected > 0.0);
    }
    return r;
}

/// Uniform grid of n points over [0, S).
inline std::vector<double> period_grid(const CurvatureSolution& sol, int n)
{
    std::vector<double> g(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) g[static_cast<std::size_t>(i)] = sol.period_S * i / n;
    return g;
}

} // namespace elastica
