#include "oracles.hpp"

#include <elastica/functionals.hpp>
#include <elastica/geometry.hpp>

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

using namespace elastica;

namespace {

constexpr double pi = std::numbers::pi;

} // namespace

TEST(Functionals, ClosedFormsMatchQuadrature)
{
    for (double m : {-3.0, -1.0, -0.3, 0.2, 0.5, 0.8}) {
        const auto f = compute_functionals(m);
        const auto q = oracle::functionals_by_quadrature(m, Q0(m));
        EXPECT_NEAR(f.F_hat, q.F_hat, 1e-8) << m;
        EXPECT_NEAR(f.tau_avg, q.tau_avg, 1e-7) << m;
        EXPECT_NEAR(f.T_total, q.T, 1e-7) << m;
        EXPECT_LT(f.imag_residual, 1e-9) << m;
    }
}

TEST(Functionals, OffTheClosedKnotCurve)
{
    // The closed forms hold for any admissible q0, and k0 drops out.
    for (auto [m, q0] : {std::pair{0.5, 0.7}, std::pair{-1.2, 0.4}, std::pair{0.1, 0.95}}) {
        const auto f = compute_functionals(m, q0);
        for (double k0 : {1.0, 3.0}) {
            const auto q = oracle::functionals_by_quadrature(m, q0, k0);
            EXPECT_NEAR(f.F_hat, q.F_hat, 1e-8);
            EXPECT_NEAR(f.tau_avg, q.tau_avg, 1e-7);
            EXPECT_NEAR(f.T_total, q.T, 1e-7);
        }
        EXPECT_EQ(curvature_functional(m, q0, 3.0), curvature_functional(m, q0));
    }
}

TEST(Functionals, KappaHat)
{
    EXPECT_EQ(kappa_hat2(0.4, 0.7), 1.0);
    EXPECT_NEAR(kappa_hat2(-1.0, 0.5), 3.0, 1e-15);
    EXPECT_NEAR(q0_kappa_hat2(-1.0, 0.5), 1.5, 1e-15);
}

TEST(Functionals, FixedValues)
{
    const M0 m0 = find_m0();
    const double K0 = complete_k(m0.minus);
    EXPECT_NEAR(curvature_functional(0.0), pi, 1e-12);
    EXPECT_NEAR(averaged_torsion(0.0), 0.0, 1e-12);
    EXPECT_NEAR(total_torsion(0.0), 0.0, 1e-12);
    for (double m : {m0.minus, m0.plus}) {
        EXPECT_NEAR(curvature_functional(m), (2 * m0.minus - 1) * K0 / std::sqrt(m0.minus), 1e-8);
        EXPECT_NEAR(total_torsion(m), 0.5, 1e-6);
        EXPECT_NEAR(averaged_torsion(m), pi / (4 * std::sqrt(m0.minus) * K0), 1e-6);
    }
}

TEST(Psi, BranchValues)
{
    const auto c0 = ls_roots(0.0);
    EXPECT_LT(std::abs(psi_of(0.0, 1.0) - c0.omega3()), 1e-12);
    EXPECT_NEAR(psi_of(0.0, 1.0).imag(), pi / 2, 1e-12);
    // At m0- the target e_a - q0 is the middle root e2.
    const M0 m0 = find_m0();
    const auto c = ls_roots(m0.minus);
    EXPECT_NEAR(wp(psi_of(m0.minus, Q0(m0.minus)), c).real(), c.e2, 1e-8);
}

TEST(Psi, DerivativeBranch)
{
    for (double m : {-2.0, 0.5, 0.75}) {
        const double q0 = Q0(m);
        const auto c = ls_roots(m);
        const ComplexValue psi = psi_of(m, q0);
        EXPECT_NEAR(std::abs(wp(psi, c) - (ls_ea(m) - q0)), 0.0, 1e-9);
        const ComplexValue d = wp_prime(psi, c);
        EXPECT_NEAR(d.real(), 2.0 * std::pow(q0, 1.5) * std::sqrt(nu2_of(m, q0)), 1e-8) << m;
        EXPECT_NEAR(d.imag(), 0.0, 1e-8);
    }
}

TEST(Symmetry, DualEvaluation)
{
    EXPECT_NEAR(curvature_functional(-1.0), curvature_functional(0.5), 1e-9);
    EXPECT_LT(symmetry_check(-1.0), 1e-8);
    EXPECT_LT(symmetry_check(n_of(0.751)), 1e-8);
    EXPECT_LT(symmetry_check(-1e-6), 1e-8);
}

TEST(Symmetry, TwentyPointsOnTheExtendedBranch)
{
    const M0 m0 = find_m0();
    for (int i = 1; i <= 20; ++i) {
        const double m = m0.plus * i / 21.0;
        const double n = n_of(m);
        const auto a = compute_functionals(m);
        const auto b = compute_functionals(n);
        EXPECT_NEAR(a.F_hat, b.F_hat, 1e-8) << m;
        EXPECT_NEAR(a.tau_avg, b.tau_avg, 1e-8) << m;
        EXPECT_NEAR(a.T_total, b.T_total, 1e-8) << m;
        EXPECT_NEAR(normalized_radius(m), normalized_radius(n), 1e-8) << m;
        EXPECT_NEAR(delta_theta(m), delta_theta(n), 1e-8) << m;
    }
}

TEST(Functionals, ContinuousAcrossG3SignChange)
{
    // g3 = 4 e1 e2 e3 changes sign where e2 = 0, at m = 1/2 and m = -1.
    for (double m0 : {0.5, -1.0}) {
        const double a = total_torsion(m0 - 1e-7), b = total_torsion(m0 + 1e-7);
        EXPECT_NEAR(a, b, 1e-6);
        const double ta = averaged_torsion(m0 - 1e-7), tb = averaged_torsion(m0 + 1e-7);
        EXPECT_NEAR(ta, tb, 1e-6);
    }
}

TEST(Functionals, PairValues)
{
    // F = 2 pair. ⟨τ⟩ and T are the quadrature-confirmed values.
    const double m = 0.751815758965313;
    const auto f = compute_functionals(m);
    EXPECT_NEAR(f.F_hat, 2.0, 1e-12);
    EXPECT_NEAR(f.tau_avg, oracle::functionals_by_quadrature(m, Q0(m)).tau_avg, 1e-10);
    EXPECT_NEAR(f.T_total, 0.288, 2e-3);
}
