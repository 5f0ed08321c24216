#pragma once

#include <memory>
#include <string>
#include <string_view>

#include "meancomp/errors.hpp"

namespace meancomp {

class Expr;
using ExprPtr = std::shared_ptr<const Expr>;

enum class ExprKind {
    constant,
    variable,  // the single variable x
    sum,
    product,
    quotient,
    power,  // lhs ^ rhs; rhs is usually a constant exponent
    exp_fn,
    log_fn,
    negate
};

// Immutable expression tree over one variable. Nodes are built through the
// static factories below, which fold constants and the usual 0/1 identities
// (and nothing else). Function nodes take arbitrary subexpressions, so
// composition like exp(x^2) is represented directly.
//
// Evaluation either returns a finite double or throws DomainError /
// OverflowError; differentiation is closed over the node set, so second
// derivatives always exist.
class Expr : public std::enable_shared_from_this<Expr> {
public:
    static ExprPtr constant(double value);
    static ExprPtr variable();
    static ExprPtr sum(ExprPtr a, ExprPtr b);
    static ExprPtr difference(ExprPtr a, ExprPtr b);  // sugar for sum(a, negate(b))
    static ExprPtr product(ExprPtr a, ExprPtr b);
    static ExprPtr quotient(ExprPtr a, ExprPtr b);
    static ExprPtr power(ExprPtr base, ExprPtr exponent);
    static ExprPtr exp_of(ExprPtr a);
    static ExprPtr log_of(ExprPtr a);
    static ExprPtr negate(ExprPtr a);

    ExprKind kind() const { return kind_; }
    bool is_constant() const { return kind_ == ExprKind::constant; }
    bool is_constant(double v) const { return is_constant() && value_ == v; }
    double constant_value() const;  // throws unless is_constant()
    const ExprPtr& left() const { return lhs_; }
    const ExprPtr& right() const { return rhs_; }

    double eval(double x) const;
    ExprPtr derivative() const;
    std::string str() const;

private:
    Expr(ExprKind kind, double value, ExprPtr lhs, ExprPtr rhs)
        : kind_(kind), value_(value), lhs_(std::move(lhs)), rhs_(std::move(rhs)) {}

    static ExprPtr make(ExprKind kind, double value, ExprPtr lhs, ExprPtr rhs);

    ExprKind kind_;
    double value_;
    ExprPtr lhs_;
    ExprPtr rhs_;
};

// Recursive-descent parser for the expression DSL:
//
//   expression := term (('+'|'-') term)*
//   term       := factor (('*'|'/') factor)*
//   factor     := '-' factor | power
//   power      := atom ('^' exponent)*        left-associative
//   exponent   := '-' exponent | atom
//   atom       := NUMBER | 'x' | 'exp' '(' expression ')'
//               | 'log' '(' expression ')' | '(' expression ')'
//
// NUMBER is a decimal literal with optional fraction and exponent part.
// Throws ParseError with the offending position.
ExprPtr parse_expr(std::string_view source);

bool structurally_equal(const ExprPtr& a, const ExprPtr& b);

}  // namespace meancomp
