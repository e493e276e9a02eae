#include "wron/expr.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <optional>

namespace wron {

const char* builtin_name(Builtin f) {
    switch (f) {
        case Builtin::Exp: return "exp";
        case Builtin::Ln: return "ln";
        case Builtin::Sin: return "sin";
        case Builtin::Cos: return "cos";
        case Builtin::Sqrt: return "sqrt";
    }
    return "?";
}

static std::optional<Builtin> lookup_builtin(const std::string& name) {
    if (name == "exp") return Builtin::Exp;
    if (name == "ln") return Builtin::Ln;
    if (name == "sin") return Builtin::Sin;
    if (name == "cos") return Builtin::Cos;
    if (name == "sqrt") return Builtin::Sqrt;
    return std::nullopt;
}

ExprPtr Expr::constant(double v) {
    auto e = std::make_shared<Expr>();
    e->kind = ExprKind::Constant;
    e->value = v;
    return e;
}

ExprPtr Expr::variable() {
    auto e = std::make_shared<Expr>();
    e->kind = ExprKind::Variable;
    return e;
}

static std::shared_ptr<Expr> make_node(ExprKind kind, ExprPtr l, ExprPtr r = nullptr) {
    auto e = std::make_shared<Expr>();
    e->kind = kind;
    e->lhs = std::move(l);
    e->rhs = std::move(r);
    return e;
}

ExprPtr Expr::neg(ExprPtr e) { return make_node(ExprKind::Neg, std::move(e)); }
ExprPtr Expr::add(ExprPtr l, ExprPtr r) { return make_node(ExprKind::Add, std::move(l), std::move(r)); }
ExprPtr Expr::sub(ExprPtr l, ExprPtr r) { return make_node(ExprKind::Sub, std::move(l), std::move(r)); }
ExprPtr Expr::mul(ExprPtr l, ExprPtr r) { return make_node(ExprKind::Mul, std::move(l), std::move(r)); }
ExprPtr Expr::div(ExprPtr l, ExprPtr r) { return make_node(ExprKind::Div, std::move(l), std::move(r)); }
ExprPtr Expr::pow(ExprPtr base, ExprPtr exponent) {
    return make_node(ExprKind::Pow, std::move(base), std::move(exponent));
}

ExprPtr Expr::call(Builtin f, ExprPtr arg) {
    auto e = make_node(ExprKind::Call, std::move(arg));
    e->func = f;
    return e;
}

bool structurally_equal(const Expr& a, const Expr& b) {
    if (a.kind != b.kind) return false;
    switch (a.kind) {
        case ExprKind::Constant: return a.value == b.value;
        case ExprKind::Variable: return true;
        case ExprKind::Neg: return structurally_equal(*a.lhs, *b.lhs);
        case ExprKind::Call:
            return a.func == b.func && structurally_equal(*a.lhs, *b.lhs);
        default:
            return structurally_equal(*a.lhs, *b.lhs) && structurally_equal(*a.rhs, *b.rhs);
    }
}

bool contains_variable(const Expr& e) {
    switch (e.kind) {
        case ExprKind::Constant: return false;
        case ExprKind::Variable: return true;
        case ExprKind::Neg:
        case ExprKind::Call: return contains_variable(*e.lhs);
        default: return contains_variable(*e.lhs) || contains_variable(*e.rhs);
    }
}

// ---------------------------------------------------------------------------
// Lexer
// ---------------------------------------------------------------------------

static bool is_digit(char c) { return c >= '0' && c <= '9'; }
static bool is_ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
static bool is_ident_char(char c) { return is_ident_start(c) || is_digit(c); }

std::vector<Token> tokenize(const std::string& source) {
    std::vector<Token> out;
    const size_t n = source.size();
    size_t i = 0;
    while (i < n) {
        char c = source[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
            continue;
        }
        const int pos = static_cast<int>(i);
        if (is_digit(c) || c == '.') {
            size_t start = i;
            while (i < n && is_digit(source[i])) ++i;
            if (i < n && source[i] == '.') {
                const int dot = static_cast<int>(i);
                ++i;
                // a decimal point must be followed by at least one digit
                if (i >= n || !is_digit(source[i]))
                    throw ParseError(ParseErrorKind::MalformedNumber, dot,
                                     "malformed number at offset " + std::to_string(dot));
                while (i < n && is_digit(source[i])) ++i;
            }
            if (i < n && (source[i] == 'e' || source[i] == 'E')) {
                // consume an exponent only when it is well-formed; otherwise
                // the 'e' starts the next token
                size_t j = i + 1;
                if (j < n && (source[j] == '+' || source[j] == '-')) ++j;
                if (j < n && is_digit(source[j])) {
                    while (j < n && is_digit(source[j])) ++j;
                    i = j;
                }
            }
            std::string lexeme = source.substr(start, i - start);
            double value = std::strtod(lexeme.c_str(), nullptr);
            if (!std::isfinite(value))
                throw ParseError(ParseErrorKind::MalformedNumber, pos,
                                 "number literal overflows at offset " + std::to_string(pos));
            out.push_back({TokenKind::Number, std::move(lexeme), pos});
            continue;
        }
        if (is_ident_start(c)) {
            size_t start = i;
            while (i < n && is_ident_char(source[i])) ++i;
            out.push_back({TokenKind::Identifier, source.substr(start, i - start), pos});
            continue;
        }
        TokenKind kind;
        switch (c) {
            case '+': kind = TokenKind::Plus; break;
            case '-': kind = TokenKind::Minus; break;
            case '*': kind = TokenKind::Star; break;
            case '/': kind = TokenKind::Slash; break;
            case '^': kind = TokenKind::Caret; break;
            case '(': kind = TokenKind::LParen; break;
            case ')': kind = TokenKind::RParen; break;
            case ',': kind = TokenKind::Comma; break;
            default:
                throw ParseError(ParseErrorKind::UnknownCharacter, pos,
                                 std::string("unknown character '") + c + "' at offset " +
                                     std::to_string(pos));
        }
        out.push_back({kind, std::string(1, c), pos});
        ++i;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Parser
//
// expression := term (('+' | '-') term)*
// term       := factor (('*' | '/') factor)*
// factor     := '-' factor | power
// power      := atom ('^' factor)?        -- right-associative
// atom       := Number | 't' | name '(' expression ')' | '(' expression ')'
// ---------------------------------------------------------------------------

namespace {

class Parser {
public:
    explicit Parser(const std::vector<Token>& tokens) : tokens_(tokens) {}

    ExprPtr run() {
        ExprPtr e = expression();
        if (!at_end()) {
            const Token& t = peek();
            if (t.kind == TokenKind::RParen)
                throw ParseError(ParseErrorKind::UnbalancedParens, t.position,
                                 "unmatched ')' at offset " + std::to_string(t.position));
            throw ParseError(ParseErrorKind::UnexpectedToken, t.position,
                             "unexpected '" + t.lexeme + "' at offset " + std::to_string(t.position));
        }
        return e;
    }

private:
    const std::vector<Token>& tokens_;
    size_t pos_ = 0;

    bool at_end() const { return pos_ >= tokens_.size(); }
    const Token& peek() const { return tokens_[pos_]; }

    int end_position() const {
        if (tokens_.empty()) return 0;
        const Token& last = tokens_.back();
        return last.position + static_cast<int>(last.lexeme.size());
    }

    bool match(TokenKind kind) {
        if (!at_end() && peek().kind == kind) {
            ++pos_;
            return true;
        }
        return false;
    }

    [[noreturn]] void unexpected() const {
        if (at_end())
            throw ParseError(ParseErrorKind::UnexpectedToken, end_position(),
                             "unexpected end of input at offset " + std::to_string(end_position()));
        const Token& t = peek();
        throw ParseError(ParseErrorKind::UnexpectedToken, t.position,
                         "unexpected '" + t.lexeme + "' at offset " + std::to_string(t.position));
    }

    ExprPtr expression() {
        ExprPtr e = term();
        while (!at_end()) {
            if (match(TokenKind::Plus))
                e = Expr::add(std::move(e), term());
            else if (match(TokenKind::Minus))
                e = Expr::sub(std::move(e), term());
            else
                break;
        }
        return e;
    }

    ExprPtr term() {
        ExprPtr e = factor();
        while (!at_end()) {
            if (match(TokenKind::Star))
                e = Expr::mul(std::move(e), factor());
            else if (match(TokenKind::Slash))
                e = Expr::div(std::move(e), factor());
            else
                break;
        }
        return e;
    }

    ExprPtr factor() {
        if (match(TokenKind::Minus)) return Expr::neg(factor());
        return power();
    }

    ExprPtr power() {
        ExprPtr base = atom();
        if (match(TokenKind::Caret)) return Expr::pow(std::move(base), factor());
        return base;
    }

    ExprPtr atom() {
        if (at_end()) unexpected();
        const Token& t = peek();
        switch (t.kind) {
            case TokenKind::Number: {
                ++pos_;
                return Expr::constant(std::strtod(t.lexeme.c_str(), nullptr));
            }
            case TokenKind::Identifier: {
                ++pos_;
                if (t.lexeme == "t") return Expr::variable();
                auto f = lookup_builtin(t.lexeme);
                if (!f)
                    throw ParseError(ParseErrorKind::UnknownFunction, t.position,
                                     "unknown identifier '" + t.lexeme + "' at offset " +
                                         std::to_string(t.position));
                if (!match(TokenKind::LParen)) unexpected();
                ExprPtr arg = expression();
                if (!match(TokenKind::RParen))
                    throw ParseError(ParseErrorKind::UnbalancedParens, t.position,
                                     "missing ')' for call at offset " + std::to_string(t.position));
                return Expr::call(*f, std::move(arg));
            }
            case TokenKind::LParen: {
                const int open = t.position;
                ++pos_;
                ExprPtr e = expression();
                if (!match(TokenKind::RParen))
                    throw ParseError(ParseErrorKind::UnbalancedParens, open,
                                     "missing ')' for group at offset " + std::to_string(open));
                return e;
            }
            case TokenKind::RParen:
                throw ParseError(ParseErrorKind::UnbalancedParens, t.position,
                                 "unmatched ')' at offset " + std::to_string(t.position));
            default:
                unexpected();
        }
    }
};

} // namespace

ExprPtr parse(const std::vector<Token>& tokens) { return Parser(tokens).run(); }

ExprPtr parse_expression(const std::string& source) { return parse(tokenize(source)); }

// ---------------------------------------------------------------------------
// Formatting
// ---------------------------------------------------------------------------

static std::string format_constant(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string format(const Expr& e) {
    switch (e.kind) {
        case ExprKind::Constant: return format_constant(e.value);
        case ExprKind::Variable: return "t";
        case ExprKind::Neg: return "(-" + format(*e.lhs) + ")";
        case ExprKind::Add: return "(" + format(*e.lhs) + "+" + format(*e.rhs) + ")";
        case ExprKind::Sub: return "(" + format(*e.lhs) + "-" + format(*e.rhs) + ")";
        case ExprKind::Mul: return "(" + format(*e.lhs) + "*" + format(*e.rhs) + ")";
        case ExprKind::Div: return "(" + format(*e.lhs) + "/" + format(*e.rhs) + ")";
        case ExprKind::Pow: return "(" + format(*e.lhs) + "^" + format(*e.rhs) + ")";
        case ExprKind::Call: return std::string(builtin_name(e.func)) + "(" + format(*e.lhs) + ")";
    }
    return "?";
}

} // namespace wron
