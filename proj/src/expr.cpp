#include "meancomp/expr.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <utility>

namespace meancomp {

namespace {

bool is_exact_integer(double v) {
    return std::isfinite(v) && std::floor(v) == v && std::fabs(v) <= 9.007199254740992e15;
}

std::string fmt_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

double checked(double v, const char* what) {
    if (!std::isfinite(v)) throw OverflowError(std::string("overflow in ") + what);
    return v;
}

}  // namespace

double Expr::constant_value() const {
    if (!is_constant()) throw InvalidArgument("constant_value() on a non-constant node");
    return value_;
}

ExprPtr Expr::make(ExprKind kind, double value, ExprPtr lhs, ExprPtr rhs) {
    return ExprPtr(new Expr(kind, value, std::move(lhs), std::move(rhs)));
}

ExprPtr Expr::constant(double value) {
    if (!std::isfinite(value)) throw InvalidArgument("constants must be finite");
    return make(ExprKind::constant, value, nullptr, nullptr);
}

ExprPtr Expr::variable() { return make(ExprKind::variable, 0.0, nullptr, nullptr); }

ExprPtr Expr::sum(ExprPtr a, ExprPtr b) {
    if (a->is_constant() && b->is_constant()) {
        double v = a->value_ + b->value_;
        if (std::isfinite(v)) return constant(v);
    }
    if (a->is_constant(0.0)) return b;
    if (b->is_constant(0.0)) return a;
    return make(ExprKind::sum, 0.0, std::move(a), std::move(b));
}

ExprPtr Expr::difference(ExprPtr a, ExprPtr b) { return sum(std::move(a), negate(std::move(b))); }

ExprPtr Expr::product(ExprPtr a, ExprPtr b) {
    if (a->is_constant() && b->is_constant()) {
        double v = a->value_ * b->value_;
        if (std::isfinite(v)) return constant(v);
    }
    if (a->is_constant(0.0) || b->is_constant(0.0)) return constant(0.0);
    if (a->is_constant(1.0)) return b;
    if (b->is_constant(1.0)) return a;
    return make(ExprKind::product, 0.0, std::move(a), std::move(b));
}

ExprPtr Expr::quotient(ExprPtr a, ExprPtr b) {
    // Only fold when the constant denominator is nonzero; 0 must keep the
    // division so the domain error still surfaces at eval time.
    if (a->is_constant() && b->is_constant() && b->value_ != 0.0) {
        double v = a->value_ / b->value_;
        if (std::isfinite(v)) return constant(v);
    }
    if (b->is_constant(1.0)) return a;
    return make(ExprKind::quotient, 0.0, std::move(a), std::move(b));
}

ExprPtr Expr::power(ExprPtr base, ExprPtr exponent) {
    if (exponent->is_constant(1.0)) return base;
    if (exponent->is_constant(0.0)) return constant(1.0);  // u^0 == 1 with 0^0 := 1
    if (base->is_constant() && exponent->is_constant()) {
        double v = std::pow(base->value_, exponent->value_);
        if (std::isfinite(v)) return constant(v);
    }
    return make(ExprKind::power, 0.0, std::move(base), std::move(exponent));
}

ExprPtr Expr::exp_of(ExprPtr a) {
    if (a->is_constant()) {
        double v = std::exp(a->value_);
        if (std::isfinite(v)) return constant(v);
    }
    return make(ExprKind::exp_fn, 0.0, std::move(a), nullptr);
}

ExprPtr Expr::log_of(ExprPtr a) {
    if (a->is_constant() && a->value_ > 0.0) {
        double v = std::log(a->value_);
        if (std::isfinite(v)) return constant(v);
    }
    return make(ExprKind::log_fn, 0.0, std::move(a), nullptr);
}

ExprPtr Expr::negate(ExprPtr a) {
    if (a->is_constant()) return constant(-a->value_);
    if (a->kind() == ExprKind::negate) return a->lhs_;
    return make(ExprKind::negate, 0.0, std::move(a), nullptr);
}

double Expr::eval(double x) const {
    switch (kind_) {
        case ExprKind::constant:
            return value_;
        case ExprKind::variable:
            if (!std::isfinite(x)) throw DomainError("evaluation point is not finite");
            return x;
        case ExprKind::sum:
            return checked(lhs_->eval(x) + rhs_->eval(x), "sum");
        case ExprKind::product:
            return checked(lhs_->eval(x) * rhs_->eval(x), "product");
        case ExprKind::quotient: {
            double den = rhs_->eval(x);
            if (den == 0.0) throw DomainError("division by zero");
            return checked(lhs_->eval(x) / den, "quotient");
        }
        case ExprKind::power: {
            double base = lhs_->eval(x);
            double expo = rhs_->eval(x);
            if (base == 0.0) {
                if (expo > 0.0) return 0.0;
                if (expo == 0.0) return 1.0;
                throw DomainError("zero base raised to a negative power");
            }
            if (base < 0.0) {
                if (!is_exact_integer(expo))
                    throw DomainError("negative base with non-integer exponent");
                return checked(std::pow(base, expo), "power");
            }
            return checked(std::pow(base, expo), "power");
        }
        case ExprKind::exp_fn:
            return checked(std::exp(lhs_->eval(x)), "exp");
        case ExprKind::log_fn: {
            double v = lhs_->eval(x);
            if (v <= 0.0) throw DomainError("log of a non-positive value");
            return checked(std::log(v), "log");
        }
        case ExprKind::negate:
            return -lhs_->eval(x);
    }
    throw InternalError("unreachable expression kind");
}

ExprPtr Expr::derivative() const {
    switch (kind_) {
        case ExprKind::constant:
            return constant(0.0);
        case ExprKind::variable:
            return constant(1.0);
        case ExprKind::sum:
            return sum(lhs_->derivative(), rhs_->derivative());
        case ExprKind::product:
            return sum(product(lhs_->derivative(), rhs_), product(lhs_, rhs_->derivative()));
        case ExprKind::quotient:
            // (u/v)' = (u'v - uv') / v^2
            return quotient(
                difference(product(lhs_->derivative(), rhs_), product(lhs_, rhs_->derivative())),
                power(rhs_, constant(2.0)));
        case ExprKind::power: {
            if (rhs_->is_constant()) {
                // (u^c)' = c u^(c-1) u'
                double c = rhs_->value_;
                return product(product(constant(c), power(lhs_, constant(c - 1.0))),
                               lhs_->derivative());
            }
            // General case via u^v = exp(v log u):
            // (u^v)' = u^v (v' log u + v u'/u)
            ExprPtr self = power(lhs_, rhs_);
            ExprPtr inner = sum(product(rhs_->derivative(), log_of(lhs_)),
                                product(rhs_, quotient(lhs_->derivative(), lhs_)));
            return product(self, inner);
        }
        case ExprKind::exp_fn:
            return product(exp_of(lhs_), lhs_->derivative());
        case ExprKind::log_fn:
            return quotient(lhs_->derivative(), lhs_);
        case ExprKind::negate:
            return negate(lhs_->derivative());
    }
    throw InternalError("unreachable expression kind");
}

namespace {

// precedence levels for the serializer; higher binds tighter
int prec(ExprKind k) {
    switch (k) {
        case ExprKind::sum: return 10;
        case ExprKind::product:
        case ExprKind::quotient: return 20;
        case ExprKind::negate: return 30;
        case ExprKind::power: return 40;
        default: return 50;
    }
}

void write(const Expr& e, std::string& out, int min_prec);

void write_child(const ExprPtr& c, std::string& out, int min_prec) {
    // negative constants need protection wherever a bare '-' would rebind
    bool neg_const = c->is_constant() && c->constant_value() < 0.0;
    int p = neg_const ? prec(ExprKind::negate) : prec(c->kind());
    if (p < min_prec) {
        out += '(';
        write(*c, out, 0);
        out += ')';
    } else {
        write(*c, out, 0);
    }
}

void write(const Expr& e, std::string& out, int /*min_prec*/) {
    switch (e.kind()) {
        case ExprKind::constant:
            out += fmt_double(e.constant_value());
            return;
        case ExprKind::variable:
            out += 'x';
            return;
        case ExprKind::sum: {
            write_child(e.left(), out, prec(ExprKind::sum));
            const ExprPtr& r = e.right();
            if (r->kind() == ExprKind::negate) {
                out += " - ";
                write_child(r->left(), out, prec(ExprKind::sum) + 1);
            } else if (r->is_constant() && r->constant_value() < 0.0) {
                out += " - ";
                out += fmt_double(-r->constant_value());
            } else {
                out += " + ";
                write_child(r, out, prec(ExprKind::sum) + 1);
            }
            return;
        }
        case ExprKind::product:
            write_child(e.left(), out, prec(ExprKind::product));
            out += " * ";
            write_child(e.right(), out, prec(ExprKind::product) + 1);
            return;
        case ExprKind::quotient:
            write_child(e.left(), out, prec(ExprKind::quotient));
            out += " / ";
            write_child(e.right(), out, prec(ExprKind::quotient) + 1);
            return;
        case ExprKind::power: {
            write_child(e.left(), out, prec(ExprKind::power) + 1);
            out += '^';
            const ExprPtr& r = e.right();
            if (r->kind() == ExprKind::negate) {
                out += '-';
                write_child(r->left(), out, 50);
            } else if (r->is_constant() && r->constant_value() < 0.0) {
                out += '-';
                out += fmt_double(-r->constant_value());
            } else {
                write_child(r, out, 50);
            }
            return;
        }
        case ExprKind::exp_fn:
            out += "exp(";
            write(*e.left(), out, 0);
            out += ')';
            return;
        case ExprKind::log_fn:
            out += "log(";
            write(*e.left(), out, 0);
            out += ')';
            return;
        case ExprKind::negate:
            out += '-';
            write_child(e.left(), out, prec(ExprKind::negate));
            return;
    }
}

}  // namespace

std::string Expr::str() const {
    std::string out;
    write(*this, out, 0);
    return out;
}

bool structurally_equal(const ExprPtr& a, const ExprPtr& b) {
    if (a.get() == b.get()) return true;
    if (!a || !b) return false;
    if (a->kind() != b->kind()) return false;
    if (a->kind() == ExprKind::constant) return a->constant_value() == b->constant_value();
    if (a->left() || b->left()) {
        if (!structurally_equal(a->left(), b->left())) return false;
    }
    if (a->right() || b->right()) {
        if (!structurally_equal(a->right(), b->right())) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// parser
// ---------------------------------------------------------------------------

namespace {

struct Token {
    enum Type { number, ident, plus, minus, star, slash, caret, lparen, rparen, end } type;
    double value = 0.0;
    std::string text;
    std::size_t pos = 0;
};

class Lexer {
public:
    explicit Lexer(std::string_view src) : src_(src) { advance(); }

    const Token& peek() const { return tok_; }

    Token take() {
        Token t = tok_;
        advance();
        return t;
    }

private:
    void advance() {
        while (i_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[i_]))) ++i_;
        tok_.pos = i_;
        if (i_ >= src_.size()) {
            tok_.type = Token::end;
            tok_.text = "end of input";
            return;
        }
        char c = src_[i_];
        switch (c) {
            case '+': tok_ = {Token::plus, 0, "+", i_++}; return;
            case '-': tok_ = {Token::minus, 0, "-", i_++}; return;
            case '*': tok_ = {Token::star, 0, "*", i_++}; return;
            case '/': tok_ = {Token::slash, 0, "/", i_++}; return;
            case '^': tok_ = {Token::caret, 0, "^", i_++}; return;
            case '(': tok_ = {Token::lparen, 0, "(", i_++}; return;
            case ')': tok_ = {Token::rparen, 0, ")", i_++}; return;
            default: break;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            std::string buf(src_.substr(i_));
            const char* begin = buf.c_str();
            char* endp = nullptr;
            double v = std::strtod(begin, &endp);
            if (endp == begin || !std::isfinite(v))
                throw ParseError(i_, "malformed numeric literal");
            std::size_t len = static_cast<std::size_t>(endp - begin);
            tok_ = {Token::number, v, buf.substr(0, len), i_};
            i_ += len;
            return;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t j = i_;
            while (j < src_.size() &&
                   (std::isalnum(static_cast<unsigned char>(src_[j])) || src_[j] == '_'))
                ++j;
            tok_ = {Token::ident, 0, std::string(src_.substr(i_, j - i_)), i_};
            i_ = j;
            return;
        }
        throw ParseError(i_, std::string("unexpected character '") + c + "'");
    }

    std::string_view src_;
    std::size_t i_ = 0;
    Token tok_;
};

class Parser {
public:
    explicit Parser(std::string_view src) : lex_(src) {}

    ExprPtr parse() {
        ExprPtr e = expression();
        const Token& t = lex_.peek();
        if (t.type != Token::end)
            throw ParseError(t.pos, "expected operator or end of input, found '" + t.text + "'");
        return e;
    }

private:
    ExprPtr expression() {
        ExprPtr e = term();
        for (;;) {
            const Token& t = lex_.peek();
            if (t.type == Token::plus) {
                lex_.take();
                e = Expr::sum(e, term());
            } else if (t.type == Token::minus) {
                lex_.take();
                e = Expr::difference(e, term());
            } else {
                return e;
            }
        }
    }

    ExprPtr term() {
        ExprPtr e = factor();
        for (;;) {
            const Token& t = lex_.peek();
            if (t.type == Token::star) {
                lex_.take();
                e = Expr::product(e, factor());
            } else if (t.type == Token::slash) {
                lex_.take();
                e = Expr::quotient(e, factor());
            } else {
                return e;
            }
        }
    }

    ExprPtr factor() {
        if (lex_.peek().type == Token::minus) {
            lex_.take();
            return Expr::negate(factor());
        }
        return power_chain();
    }

    ExprPtr power_chain() {
        ExprPtr e = atom();
        while (lex_.peek().type == Token::caret) {
            lex_.take();
            e = Expr::power(e, exponent());
        }
        return e;
    }

    ExprPtr exponent() {
        if (lex_.peek().type == Token::minus) {
            lex_.take();
            return Expr::negate(exponent());
        }
        return atom();
    }

    ExprPtr atom() {
        Token t = lex_.take();
        switch (t.type) {
            case Token::number:
                return Expr::constant(t.value);
            case Token::ident: {
                if (t.text == "x") return Expr::variable();
                if (t.text == "exp" || t.text == "log") {
                    Token open = lex_.take();
                    if (open.type != Token::lparen)
                        throw ParseError(open.pos,
                                         "expected '(' after '" + t.text + "', found '" +
                                             open.text + "'");
                    ExprPtr arg = expression();
                    Token close = lex_.take();
                    if (close.type != Token::rparen)
                        throw ParseError(close.pos,
                                         "expected ')' to close '" + t.text + "(', found '" +
                                             close.text + "'");
                    return t.text == "exp" ? Expr::exp_of(arg) : Expr::log_of(arg);
                }
                throw ParseError(t.pos, "unknown identifier '" + t.text + "'");
            }
            case Token::lparen: {
                ExprPtr e = expression();
                Token close = lex_.take();
                if (close.type != Token::rparen)
                    throw ParseError(close.pos, "expected ')', found '" + close.text + "'");
                return e;
            }
            default:
                throw ParseError(t.pos,
                                 "expected a number, 'x', 'exp', 'log' or '(', found '" +
                                     t.text + "'");
        }
    }

    Lexer lex_;
};

}  // namespace

ExprPtr parse_expr(std::string_view source) { return Parser(source).parse(); }

}  // namespace meancomp
