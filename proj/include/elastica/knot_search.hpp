#pragma once

// Closure condition Δθ(m) = -pπ/q and equivalent pairs related by n(m).

#include <elastica/geometry.hpp>

#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <optional>
#include <vector>

namespace elastica {

struct KnotSolution {
    double m = 0.0;
    double q0 = 1.0;
    int p_int = 0;
    int q_int = 0;
    int ell = 0;
    Branch branch = Branch::Classical;
    double lambda = 0.0;
    double nu = 0.0;
    FunctionalSet functionals;
    double R_hat = 0.0;
    double delta_theta = 0.0;
    bool non_periodic = false; // ℓ = 2q/p is not an integer, or Δθ is not a rational multiple of π
    bool degenerate = false;   // boundary solution m = m0± (ρ(S/2) = 0)
    double closure_error = 0.0; // |r(ℓS) - r(0)| / R when samples were generated
    std::vector<CurveSample> samples;
};

struct EquivalentPair {
    KnotSolution knot_minus; // classical member, 0 <= m < m0-
    KnotSolution knot_plus;  // extended member, m0+ < m <= 0
    double max_functional_gap = 0.0;
};

struct EquivalenceReport {
    double gap_F = 0.0;
    double gap_tau = 0.0;
    double gap_T = 0.0;
    double gap_R_hat = 0.0;
    double gap_delta_theta = 0.0;
    double modulus_gap = 0.0; // |n(m+) - m-|
    double max_gap = 0.0;
    bool passed = false;
};

struct Rational {
    int p;
    int q;
};

/// Smallest q <= max_q with |Δθ + pπ/q| < tol, p > 0, gcd(p, q) = 1.
inline std::optional<Rational> detect_rational(double dtheta, int max_q = 64, double tol = 1e-9)
{
    for (int q = 1; q <= max_q; ++q) {
        const double p = std::nearbyint(-dtheta * q / std::numbers::pi);
        if (p < 1.0) continue;
        if (std::abs(dtheta + p * std::numbers::pi / q) < tol) {
            const int pi = static_cast<int>(p);
            const int g = std::gcd(pi, q);
            return Rational{pi / g, q / g};
        }
    }
    return std::nullopt;
}

namespace detail {

inline double branch_endpoint(Branch b)
{
    const M0 m0 = find_m0();
    return b == Branch::Classical ? m0.minus : m0.plus;
}

// f on the branch; at the open endpoint m0+ the limiting value is supplied.
template <class F>
std::vector<double> scan_roots(F&& f, Branch b, double endpoint_value, int points, double xtol)
{
    const double end = branch_endpoint(b);
    auto g = [&](double m) { return m == end ? endpoint_value : f(m); };
    std::vector<double> grid(static_cast<std::size_t>(points));
    std::vector<double> vals(grid.size());
    for (int i = 0; i < points; ++i) {
        grid[static_cast<std::size_t>(i)] = i == points - 1 ? end : end * i / (points - 1);
    }
    parallel_for(grid.size(), [&](std::size_t i) { vals[i] = g(grid[i]); });
    std::vector<double> roots;
    for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
        if (vals[i] == 0.0) {
            roots.push_back(grid[i]);
            continue;
        }
        if ((vals[i] > 0.0) != (vals[i + 1] > 0.0) && vals[i + 1] != 0.0) {
            roots.push_back(brent_root(g, grid[i], grid[i + 1], xtol));
        }
    }
    if (vals.back() == 0.0) roots.push_back(grid.back());
    return roots;
}

} // namespace detail

/// Fills every derived field of a knot at modulus m on the closed-knot curve.
/// samples_per_period = 0 skips the curve reconstruction.
inline KnotSolution make_knot(double m, int p_int, int q_int, int samples_per_period = 0,
                              const Tolerances& tol = default_tolerances())
{
    KnotSolution k;
    k.m = m;
    k.q0 = Q0(m);
    k.p_int = p_int;
    k.q_int = q_int;
    k.branch = m < 0.0 ? Branch::Extended : Branch::Classical;
    const CurvatureSolution sol = make_solution(m, k.q0, 1.0, SolutionForm::JacobiUnified, tol);
    k.lambda = sol.lambda;
    k.nu = sol.nu;
    k.functionals = compute_functionals(m, k.q0, tol);
    // R̂ diverges at m = 0 (the doubly covered circle limit).
    k.R_hat = m == 0.0 ? std::numeric_limits<double>::infinity() : normalized_radius(m, k.q0);
    k.delta_theta = delta_theta(sol);
    const M0 m0 = find_m0();
    k.degenerate = std::abs(m - m0.minus) < 1e-12 || std::abs(m - m0.plus) < 1e-12;
    if (p_int > 0 && (2 * q_int) % p_int == 0) {
        k.ell = 2 * q_int / p_int;
    } else {
        k.non_periodic = true;
    }
    if (samples_per_period > 0 && !k.degenerate) {
        const int periods = k.ell > 0 ? k.ell : 1;
        k.samples = reconstruct_curve(sol, samples_per_period, periods, true, tol);
        if (k.ell > 0) {
            const Vec3& a = k.samples.front().r;
            const Vec3& b = k.samples.back().r;
            k.closure_error = norm({b[0] - a[0], b[1] - a[1], b[2] - a[2]}) / length_scale(sol);
        }
    }
    return k;
}

/// Every m on the branch with Δθ(m) = -pπ/q.
inline std::vector<KnotSolution> solve_closure_all(int p_int, int q_int, Branch branch,
                                                   int samples_per_period = 0,
                                                   const Tolerances& tol = default_tolerances())
{
    if (p_int <= 0 || q_int < p_int) fail(ErrorKind::DomainError, "closure requires 0 < p <= q");
    const double target = -std::numbers::pi * p_int / q_int;
    std::vector<KnotSolution> out;
    const double end = detail::branch_endpoint(branch);
    if (p_int == q_int) {
        // Δθ = -π is reached only at the boundary m0±; m0+ itself (q0 = 0) is excluded.
        if (branch == Branch::Extended) {
            fail(ErrorKind::TargetOutOfRange, "Δθ = -π is attained on the extended branch only in the limit m -> m0+");
        }
        out.push_back(make_knot(end, p_int, q_int, 0, tol));
        out.back().degenerate = true;
        return out;
    }
    auto f = [&](double m) { return delta_theta(m) - target; };
    const auto roots = detail::scan_roots(f, branch, -std::numbers::pi - target, 200, 1e-15);
    for (double m : roots) out.push_back(make_knot(m, p_int, q_int, samples_per_period, tol));
    if (out.empty()) fail(ErrorKind::TargetOutOfRange, "Δθ never reaches -pπ/q on this branch");
    return out;
}

/// First solution of the closure condition on the branch.
inline KnotSolution solve_closure(int p_int, int q_int, Branch branch = Branch::Classical,
                                  int samples_per_period = 0, const Tolerances& tol = default_tolerances())
{
    return solve_closure_all(p_int, q_int, branch, samples_per_period, tol).front();
}

/// Gaps between the two members of a pair.
inline EquivalenceReport verify_equivalence(const EquivalentPair& pair, const Tolerances& tol = default_tolerances())
{
    const KnotSolution& a = pair.knot_minus;
    const KnotSolution& b = pair.knot_plus;
    EquivalenceReport r;
    r.gap_F = std::abs(a.functionals.F_hat - b.functionals.F_hat);
    r.gap_tau = std::abs(a.functionals.tau_avg - b.functionals.tau_avg);
    r.gap_T = std::abs(a.functionals.T_total - b.functionals.T_total);
    r.gap_R_hat = std::abs(a.R_hat - b.R_hat);
    r.gap_delta_theta = std::abs(a.delta_theta - b.delta_theta);
    r.modulus_gap = std::abs(n_of(b.m) - a.m);
    r.max_gap = std::max({r.gap_F, r.gap_tau, r.gap_T, r.gap_R_hat, r.gap_delta_theta});
    r.passed = r.max_gap < tol.equivalence && r.modulus_gap < 1e-10;
    return r;
}

namespace detail {

inline KnotSolution pair_member(double m, int samples_per_period, const Tolerances& tol)
{
    // Pair members are closed in (ρ, z) but θ closes only if Δθ is rational.
    const double dt = delta_theta(m);
    const auto rat = detect_rational(dt);
    KnotSolution k = rat ? make_knot(m, rat->p, rat->q, samples_per_period, tol)
                         : make_knot(m, 0, 0, samples_per_period, tol);
    return k;
}

} // namespace detail

/// Solves F̂(m) = target independently on both branches.
inline EquivalentPair equivalent_pair_for_functional(double target_F, int samples_per_period = 0,
                                                     const Tolerances& tol = default_tolerances())
{
    detail::require_finite(target_F, "target functional");
    const M0 m0 = find_m0();
    const double f_min = curvature_functional(m0.minus);
    if (target_F > std::numbers::pi + 1e-12 || target_F < f_min - 1e-12) {
        fail(ErrorKind::TargetOutOfRange, "target functional outside [F(m0), π]");
    }
    EquivalentPair pair;
    if (target_F >= std::numbers::pi) {
        pair.knot_minus = make_knot(0.0, 0, 0, 0, tol);
        pair.knot_plus = pair.knot_minus;
        pair.knot_minus.non_periodic = pair.knot_plus.non_periodic = true;
        return pair;
    }
    auto f = [&](double m) { return curvature_functional(m) - target_F; };
    auto solve = [&](Branch b) {
        const auto roots = detail::scan_roots(f, b, f_min - target_F, 200, 1e-16);
        if (roots.empty()) fail(ErrorKind::TargetOutOfRange, "no branch solution for the target functional");
        return roots.front();
    };
    const double m_minus = solve(Branch::Classical);
    const double m_plus = solve(Branch::Extended);
    pair.knot_minus = detail::pair_member(m_minus, samples_per_period, tol);
    pair.knot_plus = detail::pair_member(m_plus, samples_per_period, tol);
    pair.max_functional_gap = verify_equivalence(pair, tol).max_gap;
    return pair;
}

} // namespace elastica
