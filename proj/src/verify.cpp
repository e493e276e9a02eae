#include "wron/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace wron {

const std::array<const char*, ResidualSet::kCount>& ResidualSet::names() {
    static const std::array<const char*, kCount> kNames = {
        "duality_identity", "duality_reversed", "abel_trace",
        "abel_logderiv",    "companion",        "cayley_hamilton",
        "cramer_vs_solve",  "det_sign",         "basis_invariance",
    };
    return kNames;
}

std::array<double, ResidualSet::kCount> ResidualSet::values() const {
    return {duality_identity, duality_reversed, abel_trace,     abel_logderiv,   companion,
            cayley_hamilton,  cramer_vs_solve,  det_sign,       basis_invariance};
}

double& ResidualSet::at(int index) {
    switch (index) {
        case 0: return duality_identity;
        case 1: return duality_reversed;
        case 2: return abel_trace;
        case 3: return abel_logderiv;
        case 4: return companion;
        case 5: return cayley_hamilton;
        case 6: return cramer_vs_solve;
        case 7: return det_sign;
        default: return basis_invariance;
    }
}

ResidualSet residual_tolerances(double kappa, double p_inf, double wprime_max, double r_max,
                                int n, double multiplier) {
    ResidualSet tol;
    const double coeff_scale = kappa * (1.0 + p_inf);
    tol.duality_identity = multiplier * 1e-7 * coeff_scale;
    tol.duality_reversed = std::numeric_limits<double>::infinity(); // audit only
    tol.abel_trace = multiplier * 1e-7 * coeff_scale;
    tol.abel_logderiv = multiplier * 1e-7 * coeff_scale;
    tol.companion = multiplier * 1e-9 * (1.0 + wprime_max);
    tol.cayley_hamilton = multiplier * 1e-8 * (1.0 + std::pow(r_max, n));
    tol.cramer_vs_solve = multiplier * 1e-7 * coeff_scale;
    tol.det_sign = multiplier * 1e-8 * coeff_scale;
    tol.basis_invariance = multiplier * 1e-8 * kappa * (1.0 + r_max);
    return tol;
}

const char* verdict_name(Verdict v) {
    switch (v) {
        case Verdict::Pass: return "pass";
        case Verdict::Fail: return "fail";
        case Verdict::Degenerate: return "degenerate";
    }
    return "?";
}

double uniform_unit(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

Matrix random_invertible(int n, std::mt19937_64& rng) {
    for (int attempt = 0; attempt < 1000; ++attempt) {
        Matrix t(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) t(i, j) = 2.0 * uniform_unit(rng) - 1.0;
        if (std::fabs(det(t)) >= 0.1) return t;
    }
    throw Error("random_invertible: rejection sampling failed");
}

namespace {

double max_abs_diff(std::span<const double> a, std::span<const double> b) {
    double m = 0.0;
    for (size_t i = 0; i < a.size(); ++i) m = std::max(m, std::fabs(a[i] - b[i]));
    return m;
}

double max_abs(std::span<const double> a) {
    double m = 0.0;
    for (double x : a) m = std::max(m, std::fabs(x));
    return m;
}

} // namespace

SampleResult verify_sample(const FunctionSystem& sys, double t, std::uint64_t seed,
                           double tol_multiplier) {
    SampleResult s;
    s.t = t;

    WronskianData d;
    try {
        d = build_wronskian(sys, t);
    } catch (const JetError& e) {
        s.domain_error = e.what();
        return s;
    }
    s.kappa = d.kappa;
    if (d.degenerate) {
        s.degenerate = true;
        return s;
    }

    try {
        s.p_cramer = cramer_coefficients(d);
        try {
            s.p = solve_coefficients(d);
            s.residuals.cramer_vs_solve = max_abs_diff(s.p, s.p_cramer);
        } catch (const CrossCheckError& e) {
            // disagreement is recorded, never dropped; the gate will fail it
            s.p = e.p_solve();
            s.residuals.cramer_vs_solve = e.residual();
        }

        const int n = d.n;
        CartanData cart = build_cartan(d);
        s.q_desc = cart.q_desc;
        s.p_hat = cart.p_hat;

        s.residuals.duality_identity = max_abs_diff(s.q_desc, s.p);
        std::vector<double> q_rev(s.q_desc.rbegin(), s.q_desc.rend());
        s.residuals.duality_reversed = max_abs_diff(q_rev, s.p);

        const double p1 = s.p.front();
        const double pn = s.p.back();
        s.residuals.abel_trace = std::fabs(trace(cart.R) - p1);
        s.residuals.abel_logderiv = std::fabs(d.wprime / d.w - p1);

        const Matrix recombined = (cart.split.shift + cart.split.last_row) * d.W;
        s.residuals.companion = std::max(cart.split.off_companion_residual,
                                         (d.Wprime - recombined).max_abs());
        s.residuals.cayley_hamilton = cart.cayley_residual.max_abs();

        const double sign = (n % 2 == 0) ? -1.0 : 1.0; // (-1)^(n+1)
        s.residuals.det_sign = std::fabs(det(cart.R) - sign * pn);

        // basis invariance of R under a random change of basis
        std::mt19937_64 rng(seed);
        const Matrix T = random_invertible(n, rng);
        const WronskianData dt = wronskian_from_jets(apply_basis_change(d.jets, T), t);
        if (dt.degenerate) {
            s.residuals.basis_invariance = std::numeric_limits<double>::infinity();
        } else {
            s.residuals.basis_invariance = (compute_R(dt) - cart.R).max_abs();
        }

        s.tolerances = residual_tolerances(d.kappa, max_abs(s.p), d.Wprime.max_abs(),
                                           cart.R.max_abs(), n, tol_multiplier);
        s.pass = true;
        for (int i = 0; i < ResidualSet::kCount; ++i) {
            if (!ResidualSet::gated(i)) continue;
            if (!(s.residuals.at(i) <= s.tolerances.at(i))) s.pass = false;
        }
    } catch (const DegenerateWronskianError&) {
        s.degenerate = true;
        s.p.clear();
        s.p_cramer.clear();
        s.q_desc.clear();
        s.p_hat.clear();
        s.residuals = ResidualSet{};
    }
    return s;
}

VerifyReport sweep_grid(const FunctionSystem& sys, double t0, double t1, int samples,
                        std::uint64_t seed, double tol_multiplier) {
    if (samples < 1) throw InvalidGridError("samples must be >= 1");
    if (samples > 1 && !(t0 < t1)) throw InvalidGridError("grid requires t0 < t1");

    VerifyReport report;
    report.n = sys.size();
    report.grid = {t0, t1, samples, seed, tol_multiplier};
    report.samples.reserve(static_cast<size_t>(samples));

    for (int i = 0; i < samples; ++i) {
        const double t =
            (samples == 1) ? t0 : t0 + (t1 - t0) * static_cast<double>(i) / (samples - 1);
        SampleResult s = verify_sample(sys, t, seed + static_cast<std::uint64_t>(i), tol_multiplier);
        if (s.degenerate) {
            ++report.degenerate_count;
        } else if (s.domain_error) {
            ++report.domain_error_count;
        } else {
            ++report.evaluated_count;
            for (int c = 0; c < ResidualSet::kCount; ++c)
                report.worst.at(c) = std::max(report.worst.at(c), s.residuals.at(c));
        }
        report.samples.push_back(std::move(s));
    }

    if (report.evaluated_count == 0) {
        report.verdict = Verdict::Degenerate;
    } else {
        report.verdict = Verdict::Pass;
        for (const SampleResult& s : report.samples)
            if (s.evaluated() && !s.pass) report.verdict = Verdict::Fail;
    }
    return report;
}

std::vector<double> exponential_oracle(std::span<const double> rates) {
    const size_t n = rates.size();
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i + 1; j < n; ++j)
            if (rates[i] == rates[j])
                throw DuplicateRatesError("exponential_oracle requires pairwise distinct rates");
    // expand prod_k (x - r_k); coeffs[j] multiplies x^(n-j)
    std::vector<double> coeffs(1, 1.0);
    for (double r : rates) {
        std::vector<double> next(coeffs.size() + 1, 0.0);
        for (size_t j = 0; j < coeffs.size(); ++j) {
            next[j] += coeffs[j];
            next[j + 1] -= r * coeffs[j];
        }
        coeffs = std::move(next);
    }
    std::vector<double> p(n);
    for (size_t j = 0; j < n; ++j) p[j] = -coeffs[j + 1];
    return p;
}

} // namespace wron
