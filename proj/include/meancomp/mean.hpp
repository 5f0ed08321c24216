#pragma once

#include <optional>
#include <span>
#include <vector>

#include "meancomp/expr.hpp"
#include "meancomp/interval.hpp"
#include "meancomp/numeric.hpp"

namespace meancomp {

enum class Direction { increasing, decreasing };

struct CertificationOptions {
    int samples = 4096;
    // working window for sampling/checks; defaults to default_window(domain)
    std::optional<Window> window;
};

// A generator f: strictly monotone, twice differentiable, with nonvanishing
// first derivative. Construction certifies the derivative sign on a dense
// sample of the working window and precomputes f' and f''. Certification is
// sample-based: "certified on samples", not a proof.
class GeneratorSpec {
public:
    static GeneratorSpec create(ExprPtr f, const Interval& domain,
                                const CertificationOptions& opts = {});
    // x^a for a != 0, log(x) for a == 0 (domain must be positive).
    static GeneratorSpec power(double a, const Interval& domain,
                               const CertificationOptions& opts = {});

    const ExprPtr& expr() const { return f_; }
    const ExprPtr& deriv_expr() const { return d1_; }
    const ExprPtr& deriv2_expr() const { return d2_; }
    const Interval& domain() const { return domain_; }
    const Window& window() const { return window_; }
    Direction direction() const { return direction_; }

    double value(double x) const { return f_->eval(x); }
    double deriv(double x) const { return d1_->eval(x); }
    double deriv2(double x) const { return d2_->eval(x); }
    // f''/f' — the logarithmic derivative of |f'|.
    double curvature(double x) const { return d2_->eval(x) / d1_->eval(x); }

    // Solve f(x) = y over the whole domain: bracket by geometric expansion
    // from the working window, then bisection with safeguarded Newton steps.
    // Postcondition: |f(x) - y| <= 1e-12 * (1 + |y|).
    double invert(double y) const;
    // Same solver with a caller-supplied bracket [lo, hi].
    double invert_within(double y, double lo, double hi) const;

private:
    GeneratorSpec() = default;

    ExprPtr f_, d1_, d2_;
    Interval domain_;
    Window window_;
    Direction direction_ = Direction::increasing;
};

// n >= 2 positive weight functions p_1..p_n with their derivatives; the sum
// p_0 and its derivative are evaluated with compensated summation.
class WeightFamily {
public:
    static WeightFamily create(std::vector<ExprPtr> weights, const Interval& domain,
                               const CertificationOptions& opts = {});
    // p_i(x) = lambda_i * x^alpha_i on a positive domain.
    static WeightFamily power(std::span<const double> lambda, std::span<const double> alpha,
                              const Interval& domain, const CertificationOptions& opts = {});

    int size() const { return static_cast<int>(weights_.size()); }
    const Interval& domain() const { return domain_; }
    const Window& window() const { return window_; }
    const ExprPtr& weight_expr(int i) const { return weights_[static_cast<std::size_t>(i)]; }

    double weight(int i, double x) const { return weights_[static_cast<std::size_t>(i)]->eval(x); }
    double weight_deriv(int i, double x) const {
        return derivs_[static_cast<std::size_t>(i)]->eval(x);
    }
    double sum(double x) const;        // p_0(x)
    double sum_deriv(double x) const;  // p_0'(x)

private:
    WeightFamily() = default;

    std::vector<ExprPtr> weights_;
    std::vector<ExprPtr> derivs_;
    Interval domain_;
    Window window_;
};

// The bundle (f, p, I) defining the n-variable generalized Bajraktarevic mean
//   A(x_1..x_n) = f^{-1}( sum_i p_i(x_i) f(x_i) / sum_i p_i(x_i) ).
class MeanSpec {
public:
    static MeanSpec create(GeneratorSpec generator, WeightFamily weights);

    int n() const { return weights_.size(); }
    const GeneratorSpec& generator() const { return generator_; }
    const WeightFamily& weights() const { return weights_; }
    const Interval& domain() const { return generator_.domain(); }
    const Window& window() const { return generator_.window(); }

    // A(xs); every xs[i] must lie in the open domain. The result is bracketed
    // by [min xs, max xs], strictly inside for non-constant input.
    double evaluate(std::span<const double> xs) const;

    // Closed-form diagonal partials: d_i A at (x,..,x) equals p_i/p_0.
    // Index i is 0-based; values are in (0,1) and sum to 1.
    double diag_first_partial(int i, double x) const;

    // Closed-form diagonal Hessian:
    //   d_i^2  A = 2 p_i'(p_0-p_i)/p_0^2 + p_i(p_0-p_i)/p_0^2 * f''/f'
    //   d_i d_j A = -(p_i p_j)'/p_0^2    - p_i p_j /p_0^2    * f''/f'   (i != j)
    SquareMatrix diag_second_partials(double x) const;

private:
    MeanSpec(GeneratorSpec g, WeightFamily w)
        : generator_(std::move(g)), weights_(std::move(w)) {}

    GeneratorSpec generator_;
    WeightFamily weights_;
};

}  // namespace meancomp
