#include "wron/jet.hpp"

#include <cmath>
#include <sstream>
#include <utility>

namespace wron {

namespace {

[[noreturn]] void fail(JetErrorKind kind, const std::string& msg) { throw JetError(kind, msg); }

void require_compatible(const Jet& f, const Jet& g) {
    if (f.order() != g.order())
        fail(JetErrorKind::OrderMismatch, "jet order mismatch: " + std::to_string(f.order()) +
                                              " vs " + std::to_string(g.order()));
    if (f.basepoint() != g.basepoint())
        fail(JetErrorKind::BasepointMismatch, "jet basepoint mismatch");
}

} // namespace

Jet::Jet(double basepoint, std::vector<double> coefficients)
    : basepoint_(basepoint), coeff_(std::move(coefficients)) {
    if (coeff_.empty()) fail(JetErrorKind::OrderMismatch, "jet needs at least one coefficient");
}

Jet Jet::constant(double value, double basepoint, int order) {
    std::vector<double> c(static_cast<size_t>(order) + 1, 0.0);
    c[0] = value;
    return Jet(basepoint, std::move(c));
}

Jet Jet::variable(double basepoint, int order) {
    std::vector<double> c(static_cast<size_t>(order) + 1, 0.0);
    c[0] = basepoint;
    if (order >= 1) c[1] = 1.0;
    return Jet(basepoint, std::move(c));
}

double Jet::derivative(int k) const {
    if (k < 0 || k > order())
        fail(JetErrorKind::OrderExceeded,
             "derivative order " + std::to_string(k) + " exceeds jet order " +
                 std::to_string(order()));
    double factorial = 1.0;
    for (int i = 2; i <= k; ++i) factorial *= i;
    return factorial * coeff_[static_cast<size_t>(k)];
}

Jet operator-(const Jet& f) {
    std::vector<double> c(f.coeff_);
    for (double& x : c) x = -x;
    return Jet(f.basepoint_, std::move(c));
}

Jet operator+(const Jet& f, const Jet& g) {
    require_compatible(f, g);
    std::vector<double> c(f.coeff_);
    for (size_t k = 0; k < c.size(); ++k) c[k] += g.coeff_[k];
    return Jet(f.basepoint_, std::move(c));
}

Jet operator-(const Jet& f, const Jet& g) {
    require_compatible(f, g);
    std::vector<double> c(f.coeff_);
    for (size_t k = 0; k < c.size(); ++k) c[k] -= g.coeff_[k];
    return Jet(f.basepoint_, std::move(c));
}

Jet operator*(const Jet& f, const Jet& g) {
    require_compatible(f, g);
    const size_t m = f.coeff_.size();
    std::vector<double> c(m, 0.0);
    for (size_t k = 0; k < m; ++k) {
        double s = 0.0;
        for (size_t i = 0; i <= k; ++i) s += f.coeff_[i] * g.coeff_[k - i];
        c[k] = s;
    }
    return Jet(f.basepoint_, std::move(c));
}

Jet operator/(const Jet& f, const Jet& g) {
    require_compatible(f, g);
    const double g0 = g.coeff_[0];
    if (std::fabs(g0) < Jet::kDivisionThreshold)
        fail(JetErrorKind::JetDivisionByZero, "jet division by zero constant term");
    const size_t m = f.coeff_.size();
    std::vector<double> c(m, 0.0);
    for (size_t k = 0; k < m; ++k) {
        double s = f.coeff_[k];
        for (size_t i = 1; i <= k; ++i) s -= g.coeff_[i] * c[k - i];
        c[k] = s / g0;
    }
    return Jet(f.basepoint_, std::move(c));
}

Jet operator*(double s, const Jet& f) {
    std::vector<double> c(f.coeff_);
    for (double& x : c) x *= s;
    return Jet(f.basepoint_, std::move(c));
}

Jet jet_exp(const Jet& f) {
    const int m = f.order();
    std::vector<double> e(static_cast<size_t>(m) + 1, 0.0);
    e[0] = std::exp(f.coeff(0));
    for (int k = 1; k <= m; ++k) {
        double s = 0.0;
        for (int i = 1; i <= k; ++i) s += i * f.coeff(i) * e[static_cast<size_t>(k - i)];
        e[static_cast<size_t>(k)] = s / k;
    }
    return Jet(f.basepoint(), std::move(e));
}

Jet jet_ln(const Jet& f) {
    if (!(f.coeff(0) > 0.0))
        fail(JetErrorKind::DomainError,
             "ln of non-positive value " + std::to_string(f.coeff(0)));
    const int m = f.order();
    std::vector<double> l(static_cast<size_t>(m) + 1, 0.0);
    l[0] = std::log(f.coeff(0));
    for (int k = 1; k <= m; ++k) {
        double s = 0.0;
        for (int i = 1; i <= k - 1; ++i) s += i * l[static_cast<size_t>(i)] * f.coeff(k - i);
        l[static_cast<size_t>(k)] = (f.coeff(k) - s / k) / f.coeff(0);
    }
    return Jet(f.basepoint(), std::move(l));
}

std::pair<Jet, Jet> jet_sincos(const Jet& f) {
    const int m = f.order();
    std::vector<double> s(static_cast<size_t>(m) + 1, 0.0), c(static_cast<size_t>(m) + 1, 0.0);
    s[0] = std::sin(f.coeff(0));
    c[0] = std::cos(f.coeff(0));
    for (int k = 1; k <= m; ++k) {
        double as = 0.0, ac = 0.0;
        for (int i = 1; i <= k; ++i) {
            const double fi = i * f.coeff(i);
            as += fi * c[static_cast<size_t>(k - i)];
            ac += fi * s[static_cast<size_t>(k - i)];
        }
        s[static_cast<size_t>(k)] = as / k;
        c[static_cast<size_t>(k)] = -ac / k;
    }
    return {Jet(f.basepoint(), std::move(s)), Jet(f.basepoint(), std::move(c))};
}

Jet jet_sin(const Jet& f) { return jet_sincos(f).first; }
Jet jet_cos(const Jet& f) { return jet_sincos(f).second; }

Jet jet_sqrt(const Jet& f) {
    if (!(f.coeff(0) > 0.0))
        fail(JetErrorKind::DomainError,
             "sqrt of non-positive value " + std::to_string(f.coeff(0)));
    return jet_exp(0.5 * jet_ln(f));
}

Jet jet_elementary(Builtin fn, const Jet& arg) {
    switch (fn) {
        case Builtin::Exp: return jet_exp(arg);
        case Builtin::Ln: return jet_ln(arg);
        case Builtin::Sin: return jet_sin(arg);
        case Builtin::Cos: return jet_cos(arg);
        case Builtin::Sqrt: return jet_sqrt(arg);
    }
    fail(JetErrorKind::DomainError, "unknown elementary function");
}

Jet jet_pow(const Jet& f, double exponent) {
    const bool integral =
        std::floor(exponent) == exponent && std::fabs(exponent) <= 9.007199254740992e15;
    if (integral) {
        long long e = static_cast<long long>(exponent);
        const bool negative = e < 0;
        if (negative) e = -e;
        Jet result = Jet::constant(1.0, f.basepoint(), f.order());
        Jet base = f;
        while (e > 0) {
            if (e & 1) result = result * base;
            e >>= 1;
            if (e > 0) base = base * base;
        }
        if (!negative) return result;
        return Jet::constant(1.0, f.basepoint(), f.order()) / result;
    }
    if (!(f.coeff(0) > 0.0))
        fail(JetErrorKind::DomainError, "non-integer power of non-positive base " +
                                            std::to_string(f.coeff(0)));
    return jet_exp(exponent * jet_ln(f));
}

// ---------------------------------------------------------------------------
// Expression evaluation
// ---------------------------------------------------------------------------

namespace {

const char* node_label(const Expr& e) {
    switch (e.kind) {
        case ExprKind::Constant: return "const";
        case ExprKind::Variable: return "t";
        case ExprKind::Neg: return "neg";
        case ExprKind::Add: return "add";
        case ExprKind::Sub: return "sub";
        case ExprKind::Mul: return "mul";
        case ExprKind::Div: return "div";
        case ExprKind::Pow: return "pow";
        case ExprKind::Call: return builtin_name(e.func);
    }
    return "?";
}

// Plain numeric evaluation, used for constant exponent subtrees.
double eval_constant(const Expr& e) {
    switch (e.kind) {
        case ExprKind::Constant: return e.value;
        case ExprKind::Variable:
            fail(JetErrorKind::DomainError, "variable in constant context");
        case ExprKind::Neg: return -eval_constant(*e.lhs);
        case ExprKind::Add: return eval_constant(*e.lhs) + eval_constant(*e.rhs);
        case ExprKind::Sub: return eval_constant(*e.lhs) - eval_constant(*e.rhs);
        case ExprKind::Mul: return eval_constant(*e.lhs) * eval_constant(*e.rhs);
        case ExprKind::Div: return eval_constant(*e.lhs) / eval_constant(*e.rhs);
        case ExprKind::Pow: return std::pow(eval_constant(*e.lhs), eval_constant(*e.rhs));
        case ExprKind::Call:
            switch (e.func) {
                case Builtin::Exp: return std::exp(eval_constant(*e.lhs));
                case Builtin::Ln: return std::log(eval_constant(*e.lhs));
                case Builtin::Sin: return std::sin(eval_constant(*e.lhs));
                case Builtin::Cos: return std::cos(eval_constant(*e.lhs));
                case Builtin::Sqrt: return std::sqrt(eval_constant(*e.lhs));
            }
    }
    fail(JetErrorKind::DomainError, "unreachable expression kind");
}

Jet eval_impl(const Expr& e, double t0, int order, std::vector<const char*>& path) {
    path.push_back(node_label(e));
    Jet result = [&]() -> Jet {
        switch (e.kind) {
            case ExprKind::Constant: return Jet::constant(e.value, t0, order);
            case ExprKind::Variable: return Jet::variable(t0, order);
            case ExprKind::Neg: return -eval_impl(*e.lhs, t0, order, path);
            case ExprKind::Add:
                return eval_impl(*e.lhs, t0, order, path) + eval_impl(*e.rhs, t0, order, path);
            case ExprKind::Sub:
                return eval_impl(*e.lhs, t0, order, path) - eval_impl(*e.rhs, t0, order, path);
            case ExprKind::Mul:
                return eval_impl(*e.lhs, t0, order, path) * eval_impl(*e.rhs, t0, order, path);
            case ExprKind::Div:
                return eval_impl(*e.lhs, t0, order, path) / eval_impl(*e.rhs, t0, order, path);
            case ExprKind::Pow: {
                Jet base = eval_impl(*e.lhs, t0, order, path);
                if (!contains_variable(*e.rhs)) {
                    double exponent = eval_constant(*e.rhs);
                    if (!std::isfinite(exponent))
                        fail(JetErrorKind::DomainError, "non-finite constant exponent");
                    return jet_pow(base, exponent);
                }
                if (!(base.coeff(0) > 0.0))
                    fail(JetErrorKind::DomainError, "variable power of non-positive base");
                return jet_exp(eval_impl(*e.rhs, t0, order, path) * jet_ln(base));
            }
            case ExprKind::Call: return jet_elementary(e.func, eval_impl(*e.lhs, t0, order, path));
        }
        fail(JetErrorKind::DomainError, "unreachable expression kind");
    }();
    path.pop_back();
    return result;
}

} // namespace

Jet evaluate_jet(const Expr& e, double t0, int order) {
    std::vector<const char*> path;
    try {
        Jet result = eval_impl(e, t0, order, path);
        for (double c : result.coeffs())
            if (!std::isfinite(c))
                fail(JetErrorKind::DomainError, "non-finite jet coefficient");
        return result;
    } catch (const JetError& err) {
        std::ostringstream msg;
        msg << err.what() << " (at ";
        if (path.empty()) {
            msg << "<root>";
        } else {
            for (size_t i = 0; i < path.size(); ++i) msg << (i ? "/" : "") << path[i];
        }
        msg << ", t0=" << t0 << ")";
        throw JetError(err.kind(), msg.str());
    }
}

} // namespace wron
