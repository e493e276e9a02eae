#include "wron/cartan.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace wron {

namespace {

LuFactorization factor_checked(const WronskianData& d) {
    if (d.degenerate) {
        std::ostringstream msg;
        msg << "degenerate Wronskian at t=" << d.t << " (w=" << d.w << ")";
        throw DegenerateWronskianError(msg.str());
    }
    LuFactorization lu = lu_factor(d.W);
    if (lu.singular) {
        std::ostringstream msg;
        msg << "Wronskian matrix singular at t=" << d.t;
        throw DegenerateWronskianError(msg.str());
    }
    return lu;
}

} // namespace

Matrix compute_R(const WronskianData& d) {
    // R W = W'  <=>  W^T R^T = W'^T
    LuFactorization lu = factor_checked(d);
    return lu.solve_transposed(d.Wprime.transposed()).transposed();
}

Matrix compute_L(const WronskianData& d) {
    LuFactorization lu = factor_checked(d);
    return lu.solve(d.Wprime);
}

CompanionSplit companion_split(const Matrix& r) {
    if (!r.square()) throw DimensionError("companion_split requires a square matrix");
    const int n = r.rows();
    CompanionSplit s;
    s.shift = Matrix(n, n);
    for (int i = 0; i + 1 < n; ++i) s.shift(i, i + 1) = 1.0;
    s.last_row = r - s.shift;
    s.off_companion_residual = 0.0;
    for (int i = 0; i + 1 < n; ++i)
        for (int j = 0; j < n; ++j)
            s.off_companion_residual = std::max(s.off_companion_residual, std::fabs(s.last_row(i, j)));
    return s;
}

std::vector<double> extract_p_hat(const Matrix& r) {
    if (!r.square()) throw DimensionError("extract_p_hat requires a square matrix");
    const int n = r.rows();
    std::vector<double> p(static_cast<size_t>(n));
    for (int i = 1; i <= n; ++i) p[static_cast<size_t>(i - 1)] = r(n - 1, n - i);
    return p;
}

AbelProbe abel_probe(const WronskianData& d, const Matrix& r) {
    if (d.degenerate) {
        std::ostringstream msg;
        msg << "degenerate Wronskian at t=" << d.t;
        throw DegenerateWronskianError(msg.str());
    }
    const std::vector<double> p = cramer_coefficients(d);
    AbelProbe probe;
    probe.det_Wprime = det(d.Wprime);
    probe.ddet_W = d.wprime;
    probe.trace_R = trace(r);
    probe.det_R = det(r);
    probe.p1 = p.front();
    probe.pn = p.back();
    return probe;
}

CartanData build_cartan(const WronskianData& d) {
    LuFactorization lu = factor_checked(d);
    CartanData c;
    c.R = lu.solve_transposed(d.Wprime.transposed()).transposed();
    c.L = lu.solve(d.Wprime);
    FaddeevResult fr = faddeev_leverrier(c.R);
    c.q_desc = fr.poly.q_desc;
    c.cayley_residual = fr.cayley_residual;
    c.q_desc_L = faddeev_leverrier(c.L).poly.q_desc;
    c.split = companion_split(c.R);
    c.p_hat = extract_p_hat(c.R);
    return c;
}

} // namespace wron
