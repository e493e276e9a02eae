#include "wron/wronskian.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <utility>

namespace wron {

FunctionSystem FunctionSystem::parse(std::span<const std::string> sources) {
    if (sources.empty()) throw Error("function system must contain at least one function");
    if (static_cast<int>(sources.size()) > kMaxSystemSize)
        throw Error("function system supports at most " + std::to_string(kMaxSystemSize) +
                    " functions");
    FunctionSystem sys;
    sys.functions.reserve(sources.size());
    for (size_t k = 0; k < sources.size(); ++k) {
        try {
            sys.functions.push_back(parse_expression(sources[k]));
        } catch (const ParseError& e) {
            throw ParseError(e.kind(), e.position(),
                             "function " + std::to_string(k + 1) + ": " + e.what());
        }
    }
    return sys;
}

WronskianData wronskian_from_jets(std::vector<Jet> jets, double t) {
    const int n = static_cast<int>(jets.size());
    WronskianData d;
    d.t = t;
    d.n = n;
    d.jets = std::move(jets);
    d.W = Matrix(n, n);
    d.Wprime = Matrix(n, n);
    for (int k = 0; k < n; ++k) {
        const Jet& jet = d.jets[static_cast<size_t>(k)];
        for (int r = 0; r < n; ++r) {
            d.W(r, k) = jet.derivative(r);
            d.Wprime(r, k) = jet.derivative(r + 1);
        }
    }

    LuFactorization lu = lu_factor(d.W);
    d.w = lu.determinant();
    d.kappa = lu.singular ? std::numeric_limits<double>::infinity()
                          : d.W.norm_one() * lu.solve(Matrix::identity(n)).norm_one();

    // w' from the jet determinant of the order-1 truncations: coefficient 0
    // recovers w, coefficient 1 is w'.
    std::vector<std::vector<Jet>> jm(static_cast<size_t>(n));
    for (int r = 0; r < n; ++r) {
        auto& row = jm[static_cast<size_t>(r)];
        row.reserve(static_cast<size_t>(n));
        for (int k = 0; k < n; ++k)
            row.push_back(Jet(t, {d.W(r, k), d.Wprime(r, k)}));
    }
    d.wprime = det_jet(jm).coeff(1);

    double hadamard = 1.0;
    for (int r = 0; r < n; ++r) hadamard *= d.W.row_norm2(r);
    d.degenerate = (hadamard == 0.0) ||
                   std::fabs(d.w) < WronskianData::kDegeneracyThreshold * hadamard ||
                   lu.singular;
    return d;
}

WronskianData build_wronskian(const FunctionSystem& sys, double t) {
    const int n = sys.size();
    std::vector<Jet> jets;
    jets.reserve(static_cast<size_t>(n));
    for (int k = 0; k < n; ++k) {
        try {
            jets.push_back(evaluate_jet(*sys.functions[static_cast<size_t>(k)], t, n));
        } catch (const JetError& e) {
            throw JetError(e.kind(), "function " + std::to_string(k + 1) + ": " + e.what());
        }
    }
    return wronskian_from_jets(std::move(jets), t);
}

static void require_not_degenerate(const WronskianData& d) {
    if (d.degenerate) {
        std::ostringstream msg;
        msg << "degenerate Wronskian at t=" << d.t << " (w=" << d.w << ")";
        throw DegenerateWronskianError(msg.str());
    }
}

std::vector<double> cramer_coefficients(const WronskianData& d) {
    require_not_degenerate(d);
    const int n = d.n;
    std::vector<double> p(static_cast<size_t>(n));
    for (int i = 1; i <= n; ++i) {
        Matrix wi = d.W;
        const int row = n - i; // 1-indexed row n+1-i
        for (int k = 0; k < n; ++k) wi(row, k) = d.Wprime(n - 1, k);
        p[static_cast<size_t>(i - 1)] = det(wi) / d.w;
    }
    return p;
}

std::vector<double> solve_coefficients(const WronskianData& d) {
    require_not_degenerate(d);
    const int n = d.n;
    Matrix m(n, n);
    Matrix rhs(n, 1);
    for (int k = 0; k < n; ++k) {
        const Jet& jet = d.jets[static_cast<size_t>(k)];
        for (int j = 1; j <= n; ++j) m(k, j - 1) = jet.derivative(n - j);
        rhs(k, 0) = jet.derivative(n);
    }
    Matrix x;
    try {
        x = solve(m, rhs);
    } catch (const SingularMatrixError&) {
        std::ostringstream msg;
        msg << "coefficient system singular at t=" << d.t;
        throw DegenerateWronskianError(msg.str());
    }
    std::vector<double> p(static_cast<size_t>(n));
    double p_inf = 0.0;
    for (int i = 0; i < n; ++i) {
        p[static_cast<size_t>(i)] = x(i, 0);
        p_inf = std::max(p_inf, std::fabs(x(i, 0)));
    }

    const std::vector<double> pc = cramer_coefficients(d);
    double residual = 0.0;
    for (int i = 0; i < n; ++i)
        residual = std::max(residual, std::fabs(p[static_cast<size_t>(i)] - pc[static_cast<size_t>(i)]));
    const double tolerance = 1e-7 * d.kappa * (1.0 + p_inf);
    if (residual > tolerance) {
        std::ostringstream msg;
        msg << "Cramer and solve routes disagree at t=" << d.t << " (residual " << residual
            << " > " << tolerance << ")";
        throw CrossCheckError(msg.str(), std::move(p), pc, residual, tolerance);
    }
    return p;
}

std::vector<Jet> apply_basis_change(std::span<const Jet> jets, const Matrix& T) {
    const int n = static_cast<int>(jets.size());
    if (T.rows() != n || T.cols() != n)
        throw DimensionError("basis change matrix shape mismatch");
    if (lu_factor(T).singular) throw SingularMatrixError("basis change matrix is singular");
    std::vector<Jet> out;
    out.reserve(static_cast<size_t>(n));
    for (int k = 0; k < n; ++k) {
        Jet acc = T(0, k) * jets[0];
        for (int m = 1; m < n; ++m) acc = acc + T(m, k) * jets[static_cast<size_t>(m)];
        out.push_back(std::move(acc));
    }
    return out;
}

} // namespace wron
