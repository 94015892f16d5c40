// elastica: closed elastica knots from the explicit elliptic solutions.
//
// Exit codes
//   0  success
//   1  unexpected internal error
//   2  invalid input, domain error, target out of range
//   3  closure failure (q0 != Q0(m), non-periodic knot)
//   4  equivalence gate failed
//
// Human diagnostics go to stderr. Summaries go to stdout, as JSON with --json.

#include <elastica/elastica.hpp>
#include <elastica/io.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <iostream>
#include <limits>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace elastica;
using nlohmann::json;

struct Common {
    int samples = 512;
    double tol_root = 1e-10;
    double tol_equiv = 1e-8;
    double k0 = 1.0;
    std::string format = "csv";
    bool json_summary = false;
    std::string out;
};

void add_common(CLI::App* cmd, Common& c)
{
    cmd->add_option("--samples", c.samples, "Samples per curvature period (>= 16)")->capture_default_str();
    cmd->add_option("--tol-root", c.tol_root, "Root and convergence tolerance")->capture_default_str();
    cmd->add_option("--tol-equiv", c.tol_equiv, "Equivalence gate on functional gaps")->capture_default_str();
    cmd->add_option("--format", c.format, "Output file format")
        ->check(CLI::IsMember({"csv", "json", "obj"}))
        ->capture_default_str();
    cmd->add_flag("--json", c.json_summary, "Machine-readable summary on stdout");
    cmd->add_option("--out", c.out, "Output path");
}

Tolerances tolerances_of(const Common& c)
{
    if (!(c.tol_root > 0.0) || !(c.tol_equiv > 0.0)) fail(ErrorKind::DomainError, "tolerances must be positive");
    if (c.samples < 16) fail(ErrorKind::DomainError, "--samples must be at least 16");
    Tolerances t = default_tolerances();
    t.root = c.tol_root;
    t.equivalence = c.tol_equiv;
    return t;
}

std::string fmt(double x) { return format_double(x); }

std::string extension(const std::string& format) { return "." + format; }

void write_curve(const std::string& path, const std::string& format, const Metadata& meta,
                 const std::vector<CurveSample>& samples)
{
    std::ofstream os(path, std::ios::binary);
    if (!os) fail(ErrorKind::DomainError, "cannot open output file " + path);
    if (format == "json") {
        write_curve_json(os, meta, samples);
    } else if (format == "obj") {
        write_curve_obj(os, meta, samples);
    } else {
        write_curve_csv(os, meta, samples);
    }
    if (!os) fail(ErrorKind::DomainError, "write failed for " + path);
}

Metadata constants_metadata()
{
    const M0 m0 = find_m0();
    return {{"m0_minus", fmt(m0.minus) + " (root of 2E(m) = K(m))"},
            {"m0_plus", fmt(m0.plus) + " (n(m0_minus))"}};
}

// Everything the summary and the file header share.
struct KnotReport {
    double m = 0.0;
    double q0 = 0.0;
    double k0 = 1.0;
    int p = 0;
    int q = 0;
    int ell = 0;
    double lambda = 0.0;
    double nu = 0.0;
    FunctionalSet f;
    double R_hat = 0.0;
    double delta_theta = 0.0;
    double period_S = 0.0;
    bool closed = true;
    bool degenerate = false;
    double z_drift = 0.0;
    double closure_error = 0.0;
    std::size_t rows = 0;
};

Metadata report_metadata(const KnotReport& r, const std::string& command)
{
    Metadata meta{{"command", command},
                  {"m", fmt(r.m)},
                  {"q0", fmt(r.q0)},
                  {"k0", fmt(r.k0)},
                  {"lambda", fmt(r.lambda)},
                  {"nu", fmt(r.nu)},
                  {"period_S", fmt(r.period_S)},
                  {"F_hat", fmt(r.f.F_hat)},
                  {"tau_avg", fmt(r.f.tau_avg)},
                  {"T", fmt(r.f.T_total)},
                  {"R_hat", fmt(r.R_hat)},
                  {"delta_theta", fmt(r.delta_theta)}};
    if (r.closed) {
        meta.emplace_back("p", std::to_string(r.p));
        meta.emplace_back("q", std::to_string(r.q));
        meta.emplace_back("ell", std::to_string(r.ell));
        meta.emplace_back("closure_error", fmt(r.closure_error));
    } else {
        meta.emplace_back("closed", "false");
        meta.emplace_back("z_drift_per_period", fmt(r.z_drift));
    }
    meta.emplace_back("rows", std::to_string(r.rows));
    for (auto& kv : constants_metadata()) meta.push_back(kv);
    return meta;
}

json report_json(const KnotReport& r)
{
    json j;
    j["m"] = r.m;
    j["q0"] = r.q0;
    j["k0"] = r.k0;
    j["lambda"] = r.lambda;
    j["nu"] = r.nu;
    j["period_S"] = r.period_S;
    j["F_hat"] = r.f.F_hat;
    j["tau_avg"] = r.f.tau_avg;
    j["T"] = r.f.T_total;
    j["R_hat"] = std::isfinite(r.R_hat) ? json(r.R_hat) : json(fmt(r.R_hat));
    j["delta_theta"] = r.delta_theta;
    j["closed"] = r.closed;
    j["degenerate"] = r.degenerate;
    if (r.closed) {
        j["p"] = r.p;
        j["q"] = r.q;
        j["ell"] = r.ell;
        j["closure_error"] = r.closure_error;
    } else {
        j["z_drift_per_period"] = r.z_drift;
    }
    j["rows"] = r.rows;
    return j;
}

void print_report_table(std::ostream& os, const KnotReport& r)
{
    auto line = [&](const char* k, const std::string& v) { os << "  " << k << std::string(14 - std::strlen(k), ' ') << v << '\n'; };
    line("m", fmt(r.m));
    line("q0", fmt(r.q0));
    line("lambda", fmt(r.lambda));
    line("nu", fmt(r.nu));
    line("F_hat", fmt(r.f.F_hat));
    line("tau_avg", fmt(r.f.tau_avg));
    line("T", fmt(r.f.T_total));
    line("R_hat", fmt(r.R_hat));
    line("delta_theta", fmt(r.delta_theta));
    if (r.closed) {
        line("(p,q)", "(" + std::to_string(r.p) + "," + std::to_string(r.q) + ")");
        line("ell", std::to_string(r.ell));
        if (r.rows) line("closure_err", fmt(r.closure_error));
    } else {
        line("z_drift", fmt(r.z_drift));
    }
}

KnotReport report_of(const CurvatureSolution& sol, const Tolerances& tol)
{
    KnotReport r;
    r.m = sol.m();
    r.q0 = sol.q0();
    r.k0 = sol.k0;
    r.lambda = sol.lambda;
    r.nu = sol.nu;
    r.f = compute_functionals(r.m, r.q0, tol);
    r.R_hat = normalized_radius(r.m, r.q0);
    r.delta_theta = delta_theta(sol);
    r.period_S = sol.period_S;
    return r;
}

struct SolveArgs {
    Common c;
    std::optional<double> m, q0;
    std::optional<int> p, q;
    std::string branch = "classical";
    bool no_closure = false;
    int periods = 1;
};

int cmd_solve(const SolveArgs& a)
{
    const Tolerances tol = tolerances_of(a.c);
    if (!(a.c.k0 > 0.0)) fail(ErrorKind::DomainError, "--k0 must be positive");
    const bool by_pq = a.p || a.q;
    if (by_pq && (!a.p || !a.q)) fail(ErrorKind::DomainError, "--p and --q must be given together");
    if (by_pq == a.m.has_value()) fail(ErrorKind::DomainError, "give either --m or --p/--q");
    if (by_pq && a.no_closure) fail(ErrorKind::DomainError, "--no-closure applies to --m only");

    KnotReport r;
    std::optional<CurvatureSolution> sol;
    int periods = 1;
    if (by_pq) {
        const Branch b = a.branch == "extended" ? Branch::Extended : Branch::Classical;
        const KnotSolution k = solve_closure(*a.p, *a.q, b, 0, tol);
        if (k.non_periodic) {
            fail(ErrorKind::NonPeriodic, "ell = 2q/p is not an integer; the curve does not close in (rho, z)");
        }
        sol = make_solution(k.m, k.q0, a.c.k0, SolutionForm::JacobiUnified, tol);
        r = report_of(*sol, tol);
        r.p = k.p_int;
        r.q = k.q_int;
        r.ell = k.ell;
        r.degenerate = k.degenerate;
        periods = k.ell;
    } else {
        const double m = *a.m;
        if (m == 0.0) {
            fail(ErrorKind::Unbounded, "m = 0 is degenerate: F_hat(0) = pi is the boundary value and R_hat is infinite");
        }
        const double q0 = a.q0 ? *a.q0 : Q0(m);
        if (a.no_closure) {
            sol = make_solution(m, q0, a.c.k0, SolutionForm::JacobiUnified, tol);
            r = report_of(*sol, tol);
            r.closed = false;
            r.z_drift = z_drift_per_period(*sol);
            if (a.periods < 1) fail(ErrorKind::DomainError, "--periods must be positive");
            periods = a.periods;
        } else {
            if (std::abs(q0 - Q0(m)) > tol.q0_closure) {
                fail(ErrorKind::ClosureViolated, "closed knots require q0 = Q0(m) = " + fmt(Q0(m)));
            }
            sol = make_solution(m, Q0(m), a.c.k0, SolutionForm::JacobiUnified, tol);
            r = report_of(*sol, tol);
            const auto rat = detect_rational(r.delta_theta);
            if (!rat) fail(ErrorKind::NonPeriodic, "delta_theta is not -p pi/q for any q <= 64; use --no-closure");
            if ((2 * rat->q) % rat->p != 0) {
                fail(ErrorKind::NonPeriodic, "ell = 2q/p is not an integer for (p,q) = (" + std::to_string(rat->p) +
                                                 "," + std::to_string(rat->q) + ")");
            }
            r.p = rat->p;
            r.q = rat->q;
            r.ell = 2 * rat->q / rat->p;
            periods = r.ell;
        }
    }

    if (r.degenerate) std::cerr << "warning: boundary knot m = m0, the curve meets the axis\n";

    if (!a.c.out.empty()) {
        const auto samples = reconstruct_curve(*sol, a.c.samples, periods, r.closed, tol);
        r.rows = samples.size();
        if (r.closed) {
            const Vec3& s0 = samples.front().r;
            const Vec3& s1 = samples.back().r;
            r.closure_error = norm({s1[0] - s0[0], s1[1] - s0[1], s1[2] - s0[2]}) / length_scale(*sol);
            if (r.closure_error > tol.closure) {
                fail(ErrorKind::ClosureViolated, "curve fails to close: |r(ell S) - r(0)| / R = " + fmt(r.closure_error));
            }
        }
        write_curve(a.c.out, a.c.format, report_metadata(r, "solve"), samples);
    }

    if (a.c.json_summary) {
        std::cout << report_json(r).dump(1) << '\n';
    } else {
        print_report_table(std::cout, r);
    }
    return 0;
}

struct SweepArgs {
    Common c;
    std::optional<double> m;
    double m_min = -4.7;
    double m_max = 0.82;
    int points = 500;
};

int cmd_sweep(const SweepArgs& a)
{
    tolerances_of(a.c);
    if (a.c.format == "obj") fail(ErrorKind::DomainError, "sweep writes csv or json tables");
    std::vector<double> grid;
    if (a.m) {
        grid.push_back(*a.m);
    } else {
        if (a.points < 1) fail(ErrorKind::DomainError, "--points must be positive");
        if (!(a.m_min <= a.m_max)) fail(ErrorKind::DomainError, "--m-min must not exceed --m-max");
        if (a.points == 1 && a.m_min != a.m_max) fail(ErrorKind::DomainError, "one point needs --m-min = --m-max");
        for (int i = 0; i < a.points; ++i) {
            grid.push_back(a.points == 1 ? a.m_min : a.m_min + (a.m_max - a.m_min) * i / (a.points - 1));
        }
    }
    const M0 m0 = find_m0();
    for (double m : grid) {
        if (!std::isfinite(m) || m <= m0.plus || m > m0.minus) {
            fail(ErrorKind::DomainError, "grid point " + fmt(m) + " outside the knot range (m0+, m0-]");
        }
    }

    const std::vector<std::string> cols{"m",     "Q0",      "nu", "lambda", "p",   "omega1", "omega3_abs",
                                        "F_hat", "tau_avg", "T",  "R_hat",  "mu2", "Omega",  "delta_theta"};
    std::vector<std::vector<double>> rows(grid.size());
    parallel_for(grid.size(), [&](std::size_t i) {
        const double m = grid[i];
        const double q0 = Q0(m);
        const EllipticContext ctx = ls_roots(m);
        const FunctionalSet f = compute_functionals(m, q0);
        rows[i] = {m,
                   q0,
                   nu_of_m(m),
                   lambda_of_m(m),
                   ctx.p,
                   ctx.omega1,
                   ctx.omega3_abs,
                   f.F_hat,
                   f.tau_avg,
                   f.T_total,
                   m == 0.0 ? std::numeric_limits<double>::infinity() : normalized_radius(m, q0),
                   mu2(m, q0),
                   omega_param(m).Omega,
                   delta_theta(m)};
    });

    const Metadata meta = [&] {
        Metadata md{{"command", "sweep"}, {"points", std::to_string(grid.size())}};
        for (auto& kv : constants_metadata()) md.push_back(kv);
        return md;
    }();
    std::ostringstream body;
    if (a.c.format == "json") {
        write_table_json(body, meta, cols, rows);
    } else {
        write_table_csv(body, meta, cols, rows);
    }
    if (a.c.out.empty()) {
        std::cout << body.str();
    } else {
        std::ofstream os(a.c.out, std::ios::binary);
        if (!os) fail(ErrorKind::DomainError, "cannot open output file " + a.c.out);
        os << body.str();
        if (a.c.json_summary) {
            json j{{"points", grid.size()}, {"out", a.c.out}};
            std::cout << j.dump(1) << '\n';
        }
    }
    return 0;
}

KnotReport report_of_knot(const KnotSolution& k)
{
    KnotReport r;
    r.m = k.m;
    r.q0 = k.q0;
    r.lambda = k.lambda;
    r.nu = k.nu;
    r.f = k.functionals;
    r.R_hat = k.R_hat;
    r.delta_theta = k.delta_theta;
    r.period_S = 4.0 * std::sqrt(k.q0) * complete_k(k.m);
    r.p = k.p_int;
    r.q = k.q_int;
    r.ell = k.ell;
    r.closed = !k.non_periodic;
    r.degenerate = k.degenerate;
    r.closure_error = k.closure_error;
    r.rows = k.samples.size();
    return r;
}

json equivalence_json(const EquivalenceReport& e)
{
    return json{{"gap_F_hat", e.gap_F},         {"gap_tau_avg", e.gap_tau},
                {"gap_T", e.gap_T},             {"gap_R_hat", e.gap_R_hat},
                {"gap_delta_theta", e.gap_delta_theta}, {"modulus_gap", e.modulus_gap},
                {"max_gap", e.max_gap},         {"passed", e.passed}};
}

int report_pair(const Common& c, const EquivalentPair& pair, const Tolerances& tol, const std::string& command)
{
    const EquivalenceReport e = verify_equivalence(pair, tol);
    const KnotReport minus = report_of_knot(pair.knot_minus);
    const KnotReport plus = report_of_knot(pair.knot_plus);
    if (!c.out.empty()) {
        for (const auto* k : {&pair.knot_minus, &pair.knot_plus}) {
            const std::string tag = k == &pair.knot_minus ? ".minus" : ".plus";
            Metadata meta = report_metadata(report_of_knot(*k), command);
            meta.emplace_back("max_functional_gap", fmt(e.max_gap));
            write_curve(c.out + tag + extension(c.format), c.format, meta, k->samples);
        }
    }
    if (c.json_summary) {
        json j{{"knot_minus", report_json(minus)}, {"knot_plus", report_json(plus)}, {"equivalence", equivalence_json(e)}};
        std::cout << j.dump(1) << '\n';
    } else {
        std::cout << "knot_minus\n";
        print_report_table(std::cout, minus);
        std::cout << "knot_plus\n";
        print_report_table(std::cout, plus);
        std::cout << "equivalence\n";
        for (const auto& [k, v] : equivalence_json(e).items()) {
            std::cout << "  " << k << std::string(k.size() < 16 ? 16 - k.size() : 1, ' ')
                      << (v.is_boolean() ? (v.get<bool>() ? "true" : "false") : fmt(v.get<double>())) << '\n';
        }
    }
    if (!e.passed) {
        std::cerr << "error: equivalence gate failed (max gap " << fmt(e.max_gap) << ", modulus gap "
                  << fmt(e.modulus_gap) << ")\n";
        return 4;
    }
    return 0;
}

struct PairArgs {
    Common c;
    double target_f = 0.0;
};

int cmd_pair(const PairArgs& a)
{
    const Tolerances tol = tolerances_of(a.c);
    if (std::abs(a.target_f - std::numbers::pi) < 1e-3 && a.target_f <= std::numbers::pi + 1e-12) {
        std::cerr << "warning: target near F_hat(0) = pi, the pair is near-degenerate (m -> 0, R_hat -> infinity)\n";
    }
    const int samples = a.c.out.empty() ? 0 : a.c.samples;
    const EquivalentPair pair = equivalent_pair_for_functional(a.target_f, samples, tol);
    return report_pair(a.c, pair, tol, "pair");
}

struct VerifyArgs {
    Common c;
    double m = 0.0;
};

int cmd_verify(const VerifyArgs& a)
{
    const Tolerances tol = tolerances_of(a.c);
    const M0 m0 = find_m0();
    if (!(a.m > m0.plus && a.m < m0.minus) || a.m == 0.0) {
        fail(ErrorKind::DomainError, "verify needs m in (m0+, m0-) excluding 0");
    }
    const double partner = n_of(a.m);
    const double m_minus = a.m > 0.0 ? a.m : partner;
    const double m_plus = a.m > 0.0 ? partner : a.m;
    const int samples = a.c.out.empty() ? 0 : a.c.samples;
    EquivalentPair pair;
    pair.knot_minus = detail::pair_member(m_minus, samples, tol);
    pair.knot_plus = detail::pair_member(m_plus, samples, tol);
    return report_pair(a.c, pair, tol, "verify");
}

int cmd_constants(bool as_json)
{
    const M0 m0 = find_m0();
    const NuMax nm = find_nu_max();
    const FunctionalSet f0 = compute_functionals(m0.minus);
    struct Row {
        const char* name;
        double value;
        const char* provenance;
    };
    const std::vector<Row> rows{
        {"m0_minus", m0.minus, "root of 2E(m) = K(m) on (0,1)"},
        {"m0_plus", m0.plus, "n(m0_minus) = -m0/(1-m0)"},
        {"m_star", nm.m_star, "argmax of nu(m) on (0, m0_minus)"},
        {"nu_star", nm.nu_star, "nu(m_star)"},
        {"lambda_star", lambda_of_m(nm.m_star), "lambda(m_star)"},
        {"F_hat_m0", f0.F_hat, "(2 m0 - 1) K(m0) / sqrt(m0)"},
        {"tau_avg_m0", f0.tau_avg, "pi / (4 sqrt(m0) K(m0))"},
        {"T_m0", f0.T_total, "1/2"},
        {"R_hat_m0", normalized_radius(m0.minus), "2 sqrt(m0)"},
        {"F_hat_0", curvature_functional(0.0), "pi"},
        {"mu2_0_1", mu2(0.0, 1.0), "limit 1/3"},
        {"Omega_0", omega_param(0.0).Omega, "arctanh(1/sqrt(3))"},
    };
    if (as_json) {
        json j = json::object();
        for (const auto& r : rows) j[r.name] = {{"value", r.value}, {"provenance", r.provenance}};
        std::cout << j.dump(1) << '\n';
    } else {
        for (const auto& r : rows) {
            std::printf("%-12s %-22s %s\n", r.name, fmt(r.value).c_str(), r.provenance);
        }
    }
    return 0;
}

int exit_code(ErrorKind k)
{
    switch (k) {
    case ErrorKind::ClosureViolated:
    case ErrorKind::NonPeriodic:
        return 3;
    default:
        return 2;
    }
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Closed elastica knots from explicit elliptic solutions"};
    app.require_subcommand(1);

    SolveArgs solve;
    auto* s = app.add_subcommand("solve", "Solve a closed knot from --p/--q or --m and export the curve");
    add_common(s, solve.c);
    s->add_option("--m", solve.m, "Jacobi parameter m");
    s->add_option("--q0", solve.q0, "Curvature amplitude parameter (defaults to Q0(m))");
    s->add_option("--k0", solve.c.k0, "Length scale k0")->capture_default_str();
    s->add_option("--p", solve.p, "Closure numerator");
    s->add_option("--q", solve.q, "Closure denominator");
    s->add_option("--branch", solve.branch, "Branch searched with --p/--q")
        ->check(CLI::IsMember({"classical", "extended"}))
        ->capture_default_str();
    s->add_flag("--no-closure", solve.no_closure, "Export an open curve for any (m, q0)");
    s->add_option("--periods", solve.periods, "Periods exported with --no-closure")->capture_default_str();

    SweepArgs sweep;
    auto* w = app.add_subcommand("sweep", "Tabulate chart quantities and functionals over an m grid");
    add_common(w, sweep.c);
    w->add_option("--m", sweep.m, "Single grid point");
    w->add_option("--m-min", sweep.m_min, "Grid start")->capture_default_str();
    w->add_option("--m-max", sweep.m_max, "Grid end")->capture_default_str();
    w->add_option("--points", sweep.points, "Grid size")->capture_default_str();

    PairArgs pair;
    auto* p = app.add_subcommand("pair", "Equivalent pair with a prescribed curvature functional");
    add_common(p, pair.c);
    p->add_option("--target-f", pair.target_f, "Target value of F_hat")->required();

    VerifyArgs verify;
    auto* v = app.add_subcommand("verify", "Check the equivalence of m and n(m)");
    add_common(v, verify.c);
    v->add_option("--m", verify.m, "Either member of the pair")->required();

    bool constants_json = false;
    auto* c = app.add_subcommand("constants", "Print the fixed constants");
    c->add_flag("--json", constants_json, "JSON output");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    try {
        if (*s) return cmd_solve(solve);
        if (*w) return cmd_sweep(sweep);
        if (*p) return cmd_pair(pair);
        if (*v) return cmd_verify(verify);
        if (*c) return cmd_constants(constants_json);
    } catch (const Error& e) {
        std::cerr << "error: " << to_string(e.kind()) << ": " << e.what() << '\n';
        return exit_code(e.kind());
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return 1;
    }
    return 1;
}
