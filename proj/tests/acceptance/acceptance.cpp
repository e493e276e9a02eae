// Acceptance suite. Each criterion prints one PASS/FAIL line; the process
// exits nonzero if any criterion fails. Tolerances are pinned here, not
// configurable.

#include "common/test_support.hpp"
#include "wron/cartan.hpp"
#include "wron/report.hpp"
#include "wron/verify.hpp"
#include "wron/wronskian.hpp"

#include <json.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace wron;
using testsupport::max_abs;
using testsupport::max_abs_diff;

namespace {

int g_checks_failed = 0;

void expect(bool ok, const std::string& what, std::string& detail) {
    if (ok) return;
    ++g_checks_failed;
    if (detail.size() < 400) detail += (detail.empty() ? "" : "; ") + what;
}

FunctionSystem system_of(std::initializer_list<std::string> sources) {
    const std::vector<std::string> v(sources);
    return FunctionSystem::parse(v);
}

// Per-sample records shared between the criteria that quantify over "every
// suite above".
struct Record {
    WronskianData d;
    CartanData c;
    std::vector<double> p;
};

std::vector<Record> g_records;

void collect_records(const FunctionSystem& sys, double t0, double t1, int samples) {
    for (int i = 0; i < samples; ++i) {
        const double t = (samples == 1) ? t0 : t0 + (t1 - t0) * i / (samples - 1);
        WronskianData d;
        try {
            d = build_wronskian(sys, t);
        } catch (const JetError&) {
            continue;
        }
        if (d.degenerate) continue;
        Record r;
        r.c = build_cartan(d);
        try {
            r.p = solve_coefficients(d);
        } catch (const CrossCheckError& e) {
            r.p = e.p_solve();
        }
        r.d = std::move(d);
        g_records.push_back(std::move(r));
    }
}

// --------------------------------------------------------------------------
// criterion bodies
// --------------------------------------------------------------------------

void criterion_euler_fixture(std::string& detail) {
    const WronskianData d = build_wronskian(system_of({"t", "t^2"}), 1.0);
    const CartanData c = build_cartan(d);
    const auto p = solve_coefficients(d);
    expect((c.R - Matrix{{0, 1}, {-2, 2}}).max_abs() <= 1e-12, "R mismatch", detail);
    expect(max_abs_diff(p, std::vector<double>{2, -2}) <= 1e-12, "p mismatch", detail);
    expect(max_abs_diff(c.q_desc, std::vector<double>{2, -2}) <= 1e-12, "q_desc mismatch", detail);
    expect(std::fabs(trace(c.R) - 2.0) <= 1e-12, "trace R != 2", detail);
    expect(std::fabs(d.wprime / d.w - 2.0) <= 1e-12, "w'/w != 2", detail);
    expect(std::fabs(det(c.R) - 2.0) <= 1e-12, "det R != 2", detail);
    expect(std::fabs(det(c.R) - (-1.0) * (-1.0) * (-1.0) * p[1]) <= 1e-12,
           "det R != (-1)^3 p_2", detail);
    collect_records(system_of({"t", "t^2"}), 0.25, 1.0, 7);
    collect_records(system_of({"cos(t)", "sin(t)"}), 0.0, 1.0, 7);
    collect_records(system_of({"1", "t", "t^2"}), 0.0, 1.0, 7);
    collect_records(system_of({"exp(3*t)"}), 0.0, 1.0, 5);
}

void criterion_exponential_oracle(std::string& detail) {
    std::mt19937_64 rng(2024);
    int degenerate = 0;
    for (int iter = 0; iter < 100; ++iter) {
        const int n = 2 + static_cast<int>(uniform_unit(rng) * 4);
        std::vector<double> rates;
        while (static_cast<int>(rates.size()) < n) {
            const double r = static_cast<double>(static_cast<int>(uniform_unit(rng) * 9) - 4);
            bool dup = false;
            for (double x : rates) dup = dup || (x == r);
            if (!dup) rates.push_back(r);
        }
        const auto expected = exponential_oracle(rates);
        const FunctionSystem sys = testsupport::exponential_system(rates);
        const VerifyReport report = sweep_grid(sys, 0.0, 1.0, 11, 2024 + iter);
        for (const SampleResult& s : report.samples) {
            if (!s.evaluated()) {
                ++degenerate;
                continue;
            }
            expect(max_abs_diff(s.p, expected) <= 1e-7 * (1.0 + max_abs(expected)),
                   "p differs from oracle", detail);
            expect(s.residuals.duality_identity <= 1e-7, "duality residual over 1e-7", detail);
        }
        collect_records(sys, 0.0, 1.0, 11);
    }
    std::ostringstream s;
    s << "100 systems, " << degenerate << " degenerate samples";
    if (!detail.empty()) detail += "; ";
    detail += s.str();
}

void criterion_duality(std::string& detail) {
    // polynomial, exponential, trigonometric atoms only
    const std::vector<std::string> atoms = {
        "1",        "t",        "t^2",      "t^3",      "exp(t)",   "exp(-t)",
        "exp(2*t)", "sin(t)",   "cos(t)",   "sin(2*t)", "cos(2*t)",
    };
    std::mt19937_64 rng(31415);
    for (int iter = 0; iter < 100; ++iter) {
        const int n = 2 + static_cast<int>(uniform_unit(rng) * 4);
        collect_records(testsupport::random_system_from(atoms, n, rng), 0.0, 1.0, 11);
    }
    expect(!g_records.empty(), "no samples collected", detail);
    for (const Record& r : g_records) {
        const double tol = 1e-7 * r.d.kappa * (1.0 + max_abs(r.p));
        expect(max_abs_diff(r.c.q_desc, r.p) <= tol, "||q_desc - p|| over tolerance", detail);
        // the ascending reading reverses both sequences, which is the same number
        std::vector<double> q_rev(r.c.q_desc.rbegin(), r.c.q_desc.rend());
        std::vector<double> p_rev(r.p.rbegin(), r.p.rend());
        expect(max_abs_diff(q_rev, p_rev) <= tol, "reversed comparison over tolerance", detail);
    }
    std::ostringstream s;
    s << g_records.size() << " samples checked, both index readings";
    if (!detail.empty()) detail += "; ";
    detail += s.str();
}

void criterion_abel(std::string& detail) {
    for (const Record& r : g_records) {
        const double tol = 1e-7 * r.d.kappa * (1.0 + max_abs(r.p));
        expect(std::fabs(trace(r.c.R) - r.p.front()) <= tol, "trace R != p_1", detail);
        expect(std::fabs(r.d.wprime / r.d.w - r.p.front()) <= tol, "w'/w != p_1", detail);
    }
    const WronskianData rot = build_wronskian(system_of({"cos(t)", "sin(t)"}), 0.6);
    const auto p = solve_coefficients(rot);
    expect(std::fabs(rot.wprime) <= 1e-12, "w' of {cos, sin} not 0", detail);
    expect(std::fabs(p.front()) <= 1e-12, "p_1 of {cos, sin} not 0", detail);
}

void criterion_companion(std::string& detail) {
    for (const Record& r : g_records) {
        const double tol = 1e-9 * (1.0 + r.d.Wprime.max_abs());
        expect(r.c.split.off_companion_residual <= tol, "off-companion residual", detail);
        const Matrix recombined = (r.c.split.shift + r.c.split.last_row) * r.d.W;
        expect((r.d.Wprime - recombined).max_abs() <= tol, "W' != (a+b) W", detail);

        const Matrix shifted = r.c.split.shift * r.d.W;
        bool exact = true;
        for (int i = 0; i + 1 < r.d.n; ++i)
            for (int j = 0; j < r.d.n; ++j) exact = exact && (shifted(i, j) == r.d.W(i + 1, j));
        expect(exact, "a W does not shift the rows of W exactly", detail);
    }
}

void criterion_lemmas(std::string& detail) {
    std::mt19937_64 rng(27182);
    const std::vector<FunctionSystem> systems = {
        system_of({"t", "t^2"}),
        system_of({"cos(t)", "sin(t)"}),
        system_of({"exp(t)", "exp(2*t)"}),
        system_of({"1", "t", "t^2"}),
        system_of({"exp(t)", "sin(t)", "t^2"}),
        system_of({"1", "exp(-t)", "cos(2*t)", "t^3"}),
    };
    for (const FunctionSystem& sys : systems) {
        const double t = 0.3 + 0.4 * uniform_unit(rng);
        const WronskianData d = build_wronskian(sys, t);
        if (d.degenerate) continue;
        const Matrix r = compute_R(d);
        const Matrix l = compute_L(d);
        const int n = d.n;
        for (int k = 0; k < 50; ++k) {
            const Matrix T = random_invertible(n, rng);
            const WronskianData dt = wronskian_from_jets(apply_basis_change(d.jets, T), t);
            const Matrix wt = d.W * T;
            expect((dt.W - wt).max_abs() <= 1e-8 * d.kappa * (1.0 + wt.max_abs()),
                   "W(AT) != W(A) T", detail);
            if (dt.degenerate) continue;
            expect((compute_R(dt) - r).max_abs() <= 1e-8 * d.kappa * (1.0 + r.max_abs()),
                   "R not basis invariant", detail);
            const Matrix conjugated = solve(T, Matrix::identity(n)) * l * T;
            expect((compute_L(dt) - conjugated).max_abs() <=
                       1e-8 * d.kappa * condition_estimate(T) * (1.0 + l.max_abs()),
                   "L does not conjugate", detail);
        }
    }
}

void criterion_cayley_hamilton(std::string& detail) {
    for (const Record& r : g_records) {
        const double bound = 1e-8 * (1.0 + std::pow(r.c.R.max_abs(), r.d.n));
        expect(r.c.cayley_residual.max_abs() <= bound, "Cayley-Hamilton residual", detail);
    }
}

void criterion_abel_probe(std::string& detail) {
    const WronskianData d = build_wronskian(system_of({"exp(t)", "exp(2*t)"}), 0.0);
    const AbelProbe probe = abel_probe(d, compute_R(d));
    expect(std::fabs(probe.det_Wprime - 2.0) <= 1e-9, "det W' != 2", detail);
    expect(std::fabs(probe.ddet_W - 3.0) <= 1e-9, "(det W)' != 3", detail);
    expect(std::fabs(probe.trace_R - 3.0) <= 1e-9, "trace R != 3", detail);
    expect(std::fabs(probe.det_R - 2.0) <= 1e-9, "det R != 2", detail);
    expect(std::fabs(probe.p1 - 3.0) <= 1e-9, "p_1 != 3", detail);
    expect(std::fabs(probe.pn + 2.0) <= 1e-9, "p_n != -2", detail);
    // the chain det(W') = (det W)' fails while the corollary itself holds
    expect(std::fabs(probe.det_Wprime - probe.ddet_W) > 0.5, "gap not exhibited", detail);
    expect(std::fabs(probe.ddet_W / d.w - probe.p1) <= 1e-9, "corollary broken", detail);
    detail = "det(W')=2 vs (det W)'=3=trace R; corollary intact";
}

ExprPtr random_tree(std::mt19937_64& rng, int depth) {
    static const double constants[] = {0.0, 1.0, 2.0, 3.0, 0.5, 2.5, 0.125, 10.0};
    const auto unit = [&] { return uniform_unit(rng); };
    if (depth == 0 || unit() < 0.25) {
        if (unit() < 0.5) return Expr::variable();
        return Expr::constant(constants[static_cast<int>(unit() * 8)]);
    }
    switch (static_cast<int>(unit() * 8)) {
        case 0: return Expr::neg(random_tree(rng, depth - 1));
        case 1: return Expr::add(random_tree(rng, depth - 1), random_tree(rng, depth - 1));
        case 2: return Expr::sub(random_tree(rng, depth - 1), random_tree(rng, depth - 1));
        case 3: return Expr::mul(random_tree(rng, depth - 1), random_tree(rng, depth - 1));
        case 4: return Expr::div(random_tree(rng, depth - 1), random_tree(rng, depth - 1));
        case 5: return Expr::pow(random_tree(rng, depth - 1), random_tree(rng, depth - 1));
        default: {
            static const Builtin fns[] = {Builtin::Exp, Builtin::Ln, Builtin::Sin, Builtin::Cos,
                                          Builtin::Sqrt};
            return Expr::call(fns[static_cast<int>(unit() * 5)], random_tree(rng, depth - 1));
        }
    }
}

void criterion_parser_and_jets(std::string& detail) {
    std::mt19937_64 rng(577);
    int failures = 0;
    for (int i = 0; i < 1000; ++i) {
        const ExprPtr tree = random_tree(rng, 6);
        if (!structurally_equal(*tree, *parse_expression(format(*tree)))) ++failures;
    }
    expect(failures == 0, "round-trip failures", detail);

    const char* exprs[] = {"exp(t)", "ln(t)", "sin(t)", "cos(t)", "sqrt(t)"};
    for (const char* src : exprs) {
        const ExprPtr e = parse_expression(src);
        for (int i = 0; i < 20; ++i) {
            const double t0 = 0.4 + 2.0 * uniform_unit(rng);
            const Jet j = evaluate_jet(*e, t0, 2);
            const double fd1 = testsupport::central_diff1(*e, t0, 1e-5);
            const double fd2 = testsupport::central_diff2(*e, t0, 1e-4);
            expect(std::fabs(j.derivative(1) - fd1) <= 1e-6 * std::max(1.0, std::fabs(fd1)),
                   "first derivative vs finite differences", detail);
            expect(std::fabs(j.derivative(2) - fd2) <= 1e-6 * std::max(1.0, std::fabs(fd2)),
                   "second derivative vs finite differences", detail);
        }
    }
    if (detail.empty()) detail = "1000 round trips, 5 catalog functions x 20 points";
}

void criterion_cli_contract(std::string& detail) {
    const std::string cli = WRON_CLI_PATH;
    const auto verify_ok =
        testsupport::run_process(cli + " verify --funcs \"exp(t),exp(2*t)\" --t0 0 --t1 1 --samples 11 2>/dev/null");
    expect(verify_ok.exit_code == 0, "verify exit code", detail);
    try {
        const auto doc = nlohmann::json::parse(verify_ok.output);
        for (const char* key : {"command", "n", "grid", "samples", "summary"})
            expect(doc.contains(key), std::string("missing key ") + key, detail);
        expect(doc["summary"]["verdict"] == "pass", "verdict not pass", detail);
    } catch (const std::exception&) {
        expect(false, "verify output is not valid JSON", detail);
    }

    const auto degenerate =
        testsupport::run_process(cli + " verify --funcs \"t,2*t\" --t0 0 --t1 1 --samples 5 2>/dev/null");
    expect(degenerate.exit_code == 2, "degenerate exit code", detail);

    const auto recover = testsupport::run_process(
        cli + " recover --funcs \"t,t^2\" --t0 1 --t1 1 --samples 1 --format csv 2>/dev/null");
    expect(recover.exit_code == 0, "recover exit code", detail);
    expect(recover.output == "t,p_1,p_2\n1,2,-2\n", "recover CSV bytes", detail);

    const auto rerun =
        testsupport::run_process(cli + " verify --funcs \"exp(t),exp(2*t)\" --t0 0 --t1 1 --samples 11 2>/dev/null");
    expect(rerun.output == verify_ok.output, "reruns not byte-identical", detail);
}

struct Criterion {
    int id;
    const char* title;
    double time_limit_s; // 0 = no limit enforced
    std::function<void(std::string&)> run;
};

} // namespace

int main() {
    const std::vector<Criterion> criteria = {
        {1, "Euler fixture {t, t^2} at t=1", 0.1, criterion_euler_fixture},
        {2, "constant-coefficient systems match the exponential oracle", 5.0, criterion_exponential_oracle},
        {3, "characteristic coefficients of R equal p (both index readings)", 10.0, criterion_duality},
        {4, "Abel identity: trace R = p_1 = w'/w", 0.0, criterion_abel},
        {5, "companion decomposition W' = (a+b) W", 0.0, criterion_companion},
        {6, "W transforms as WT; R basis-invariant; L conjugates", 0.0, criterion_lemmas},
        {7, "Cayley-Hamilton residual of R", 0.0, criterion_cayley_hamilton},
        {8, "probe documents det(W') != (det W)' while the corollary holds", 0.0, criterion_abel_probe},
        {9, "parser round trip and jet derivatives vs finite differences", 5.0, criterion_parser_and_jets},
        {10, "CLI contract: exit codes, schema, byte-identical reruns", 0.0, criterion_cli_contract},
    };

    int failed = 0;
    const auto suite_start = std::chrono::steady_clock::now();
    for (const Criterion& c : criteria) {
        g_checks_failed = 0;
        std::string detail;
        const auto start = std::chrono::steady_clock::now();
        try {
            c.run(detail);
        } catch (const std::exception& e) {
            ++g_checks_failed;
            detail += std::string("exception: ") + e.what();
        }
        const double elapsed =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (c.time_limit_s > 0.0 && elapsed > c.time_limit_s) {
            ++g_checks_failed;
            detail += (detail.empty() ? "" : "; ") + std::string("over time limit");
        }
        const bool ok = g_checks_failed == 0;
        if (!ok) ++failed;
        std::printf("[%s] criterion %2d (%6.3f s): %s%s%s\n", ok ? "PASS" : "FAIL", c.id, elapsed,
                    c.title, detail.empty() ? "" : " -- ", detail.c_str());
    }
    const double total =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - suite_start).count();
    std::printf("acceptance: %d/%zu criteria passed in %.2f s\n",
                static_cast<int>(criteria.size()) - failed, criteria.size(), total);
    return failed == 0 ? 0 : 1;
}
