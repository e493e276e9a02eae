#pragma once

// Truncated Taylor jets. A Jet of order m at basepoint t0 stores the
// coefficients u_k = f^(k)(t0)/k! for k = 0..m. Arithmetic is the usual
// truncated power-series arithmetic, so coefficient k of a product never
// reads past index k of either operand. The normalized storage keeps the
// convolution formulas factorial-free.

#include "wron/errors.hpp"
#include "wron/expr.hpp"

#include <span>
#include <string>
#include <vector>

namespace wron {

enum class JetErrorKind {
    OrderMismatch,
    BasepointMismatch,
    JetDivisionByZero,
    DomainError,
    OrderExceeded,
};

class JetError : public Error {
public:
    JetError(JetErrorKind kind, const std::string& what) : Error(what), kind_(kind) {}
    JetErrorKind kind() const { return kind_; }

private:
    JetErrorKind kind_;
};

class Jet {
public:
    // |g_0| below this is treated as a true zero divisor; conditioning is
    // judged downstream, not here.
    static constexpr double kDivisionThreshold = 1e-300;

    Jet(double basepoint, std::vector<double> coefficients);

    static Jet constant(double value, double basepoint, int order);
    static Jet variable(double basepoint, int order); // f(t) = t

    int order() const { return static_cast<int>(coeff_.size()) - 1; }
    double basepoint() const { return basepoint_; }
    double coeff(int k) const { return coeff_[static_cast<size_t>(k)]; }
    std::span<const double> coeffs() const { return coeff_; }

    /// k-th derivative at the basepoint, i.e. k! * u_k.
    double derivative(int k) const;

    friend Jet operator-(const Jet& f);
    friend Jet operator+(const Jet& f, const Jet& g);
    friend Jet operator-(const Jet& f, const Jet& g);
    friend Jet operator*(const Jet& f, const Jet& g);
    friend Jet operator/(const Jet& f, const Jet& g);
    friend Jet operator*(double s, const Jet& f);

private:
    double basepoint_;
    std::vector<double> coeff_;
};

Jet jet_exp(const Jet& f);
Jet jet_ln(const Jet& f);
std::pair<Jet, Jet> jet_sincos(const Jet& f);
Jet jet_sin(const Jet& f);
Jet jet_cos(const Jet& f);
Jet jet_sqrt(const Jet& f); // exp(0.5 * ln f)

Jet jet_elementary(Builtin f, const Jet& arg);

/// Integer exponents go through repeated squaring (negative ones through a
/// reciprocal); anything else requires f_0 > 0 and uses exp(e * ln f).
Jet jet_pow(const Jet& f, double exponent);

/// Evaluate an expression in jet arithmetic. Coefficients of the result are
/// the Taylor coefficients of the denoted function at t0. Domain errors are
/// annotated with the AST path and the basepoint.
Jet evaluate_jet(const Expr& e, double t0, int order);

} // namespace wron
