#pragma once

// Wronskian assembly and ODE coefficient recovery. For a system of n
// functions a_1..a_n, row r of W holds the (r-1)-th derivatives (1-indexed
// convention in all reports). Every function of the system satisfies
//   a^(n) = p_1 a^(n-1) + ... + p_n a,
// and p is recovered per sample point both by Cramer's rule and by a direct
// linear solve.

#include "wron/expr.hpp"
#include "wron/jet.hpp"
#include "wron/matrix.hpp"

#include <span>
#include <vector>

namespace wron {

class DegenerateWronskianError : public Error {
public:
    explicit DegenerateWronskianError(const std::string& what) : Error(what) {}
};

/// Thrown when the Cramer and linear-solve routes disagree beyond the
/// conditioning-scaled tolerance. Carries both results so callers can
/// report the disagreement instead of dropping it.
class CrossCheckError : public Error {
public:
    CrossCheckError(std::string what, std::vector<double> p_solve, std::vector<double> p_cramer,
                    double residual, double tolerance)
        : Error(std::move(what)),
          p_solve_(std::move(p_solve)),
          p_cramer_(std::move(p_cramer)),
          residual_(residual),
          tolerance_(tolerance) {}

    const std::vector<double>& p_solve() const { return p_solve_; }
    const std::vector<double>& p_cramer() const { return p_cramer_; }
    double residual() const { return residual_; }
    double tolerance() const { return tolerance_; }

private:
    std::vector<double> p_solve_, p_cramer_;
    double residual_, tolerance_;
};

struct FunctionSystem {
    std::vector<ExprPtr> functions;

    int size() const { return static_cast<int>(functions.size()); }

    /// Parse one expression per entry. Enforces 1 <= n <= 8.
    static FunctionSystem parse(std::span<const std::string> sources);
};

constexpr int kMaxSystemSize = 8;

struct WronskianData {
    // |w| below 1e-12 * prod_r ||row r of W||_2 (Hadamard scaling) marks the
    // sample degenerate: the w != 0 hypothesis is violated there.
    static constexpr double kDegeneracyThreshold = 1e-12;

    double t = 0.0;
    int n = 0;
    Matrix W;           // W(r,k) = a_k^(r)(t), 0-based r = 0..n-1
    Matrix Wprime;      // rows 0..n-2 equal rows 1..n-1 of W; last row holds a_k^(n)
    double w = 0.0;     // det W
    double wprime = 0.0; // d/dt det W, exact via det_jet
    std::vector<Jet> jets; // the n function jets of order n at t
    double kappa = 0.0; // one-norm condition estimate of W
    bool degenerate = false;
};

WronskianData build_wronskian(const FunctionSystem& sys, double t);

/// Same assembly starting from already-evaluated jets of order n.
WronskianData wronskian_from_jets(std::vector<Jet> jets, double t);

/// p_i = w_i / w with w_i the determinant of W after replacing row n+1-i
/// (1-indexed) by the n-th derivative row.
std::vector<double> cramer_coefficients(const WronskianData& d);

/// Direct route: solves M p = rhs with M(k,j) = a_k^(n-j)(t) and
/// rhs(k) = a_k^(n)(t), then cross-checks against Cramer within
/// 1e-7 * kappa(W) * (1 + ||p||_inf). This is the production route.
std::vector<double> solve_coefficients(const WronskianData& d);

/// Output jet k = sum_m T(m,k) * input jet m, so the transformed system has
/// Wronskian matrix W * T.
std::vector<Jet> apply_basis_change(std::span<const Jet> jets, const Matrix& T);

} // namespace wron
