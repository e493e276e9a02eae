#pragma once

// Expression ASTs for univariate real functions of t: numeric constants,
// the variable t, + - * / ^ with the usual precedence, unary minus before
// any factor, and calls to the fixed catalog {exp, ln, sin, cos, sqrt}.

#include "wron/errors.hpp"

#include <memory>
#include <string>
#include <vector>

namespace wron {

enum class TokenKind {
    Number,
    Identifier,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    Comma,
};

struct Token {
    TokenKind kind;
    std::string lexeme;
    int position; // character offset into the source
};

enum class ParseErrorKind {
    UnknownCharacter,
    MalformedNumber,
    UnexpectedToken,
    UnknownFunction,
    UnbalancedParens,
};

class ParseError : public Error {
public:
    ParseError(ParseErrorKind kind, int position, const std::string& what)
        : Error(what), kind_(kind), position_(position) {}

    ParseErrorKind kind() const { return kind_; }
    int position() const { return position_; }

private:
    ParseErrorKind kind_;
    int position_;
};

enum class ExprKind { Constant, Variable, Neg, Add, Sub, Mul, Div, Pow, Call };

enum class Builtin { Exp, Ln, Sin, Cos, Sqrt };

const char* builtin_name(Builtin f);

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

/// Immutable expression node. Children are shared, never mutated.
struct Expr {
    ExprKind kind;
    double value = 0.0;           // Constant only
    Builtin func = Builtin::Exp;  // Call only
    ExprPtr lhs;                  // unary child / left operand / call argument
    ExprPtr rhs;                  // right operand

    static ExprPtr constant(double v);
    static ExprPtr variable();
    static ExprPtr neg(ExprPtr e);
    static ExprPtr add(ExprPtr l, ExprPtr r);
    static ExprPtr sub(ExprPtr l, ExprPtr r);
    static ExprPtr mul(ExprPtr l, ExprPtr r);
    static ExprPtr div(ExprPtr l, ExprPtr r);
    static ExprPtr pow(ExprPtr base, ExprPtr exponent);
    static ExprPtr call(Builtin f, ExprPtr arg);
};

bool structurally_equal(const Expr& a, const Expr& b);
bool contains_variable(const Expr& e);

std::vector<Token> tokenize(const std::string& source);

ExprPtr parse(const std::vector<Token>& tokens);

/// tokenize + parse in one step.
ExprPtr parse_expression(const std::string& source);

/// Canonical rendering: atoms bare, calls as name(arg), every other node
/// wrapped in one pair of parentheses. parse(format(e)) reproduces e
/// node-for-node for any tree whose constants are non-negative (which is
/// every tree parse itself can produce).
std::string format(const Expr& e);

} // namespace wron
