#include "meancomp/mean.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>

namespace meancomp {

namespace {

std::string fmt(double v) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

}  // namespace

GeneratorSpec GeneratorSpec::create(ExprPtr f, const Interval& domain,
                                    const CertificationOptions& opts) {
    GeneratorSpec g;
    g.f_ = std::move(f);
    g.d1_ = g.f_->derivative();
    g.d2_ = g.d1_->derivative();
    g.domain_ = domain;
    g.window_ = opts.window ? window_within(domain, opts.window->lo, opts.window->hi)
                            : default_window(domain);

    const auto xs = sample_grid(g.window_, std::max(2, opts.samples));
    int sign = 0;
    for (double x : xs) {
        double d;
        try {
            d = g.d1_->eval(x);
        } catch (const Error& e) {
            throw CertificationError("generator derivative failed at x = " + fmt(x) + ": " +
                                     e.what());
        }
        int s = d > 0.0 ? 1 : (d < 0.0 ? -1 : 0);
        if (s == 0)
            throw CertificationError("generator derivative vanishes at x = " + fmt(x));
        if (sign == 0) sign = s;
        if (s != sign)
            throw CertificationError("generator derivative changes sign near x = " + fmt(x) +
                                     "; generator is not strictly monotone on " + domain.str());
    }
    g.direction_ = sign > 0 ? Direction::increasing : Direction::decreasing;
    return g;
}

GeneratorSpec GeneratorSpec::power(double a, const Interval& domain,
                                   const CertificationOptions& opts) {
    if (!domain.is_positive())
        throw InvalidArgument("power generators require a positive domain, got " + domain.str());
    ExprPtr e = a == 0.0 ? Expr::log_of(Expr::variable())
                         : Expr::power(Expr::variable(), Expr::constant(a));
    return create(std::move(e), domain, opts);
}

double GeneratorSpec::invert_within(double y, double lo, double hi) const {
    if (!(lo <= hi)) std::swap(lo, hi);
    if (lo == hi) return lo;

    double flo = f_->eval(lo);
    double fhi = f_->eval(hi);
    // orient so that f(lo) <= f(hi)
    bool flipped = flo > fhi;
    auto fval = [&](double x) { return f_->eval(x); };
    double ylo = flipped ? fhi : flo;
    double yhi = flipped ? flo : fhi;
    // absorb rounding at the bracket edge
    double slack = 1e-12 * (1.0 + std::fabs(y));
    if (y < ylo - slack || y > yhi + slack)
        throw InversionError("target value " + fmt(y) + " is outside the generator image of [" +
                                 fmt(lo) + ", " + fmt(hi) + "]",
                             lo, hi);
    y = std::clamp(y, ylo, yhi);

    double a = lo, b = hi;
    double fa = flo - y, fb = fhi - y;
    if (fa == 0.0) return a;
    if (fb == 0.0) return b;
    double x = 0.5 * (a + b);
    const double tol_resid = 1e-12 * (1.0 + std::fabs(y));
    for (int it = 0; it < 200; ++it) {
        double fx = fval(x) - y;
        if (std::fabs(fx) <= tol_resid) {
            // polish with pure Newton while it stays in the bracket
            for (int p = 0; p < 3; ++p) {
                double d = d1_->eval(x);
                if (d == 0.0) break;
                double nx = x - (fval(x) - y) / d;
                if (!(nx > a && nx < b)) break;
                if (nx == x) break;
                x = nx;
            }
            return x;
        }
        // shrink the bracket
        if ((fx > 0.0) == (fb > 0.0)) {
            b = x;
            fb = fx;
        } else {
            a = x;
            fa = fx;
        }
        // Newton step, bisection fallback when it leaves the bracket
        double d = d1_->eval(x);
        double nx = d != 0.0 ? x - fx / d : a;
        if (!(nx > a && nx < b)) nx = 0.5 * (a + b);
        if (nx == x) nx = 0.5 * (a + b);
        x = nx;
        if (b - a <= std::fabs(x) * 1e-16 + 1e-300) return x;
    }
    double fx = fval(x) - y;
    if (std::fabs(fx) <= tol_resid) return x;
    throw InversionError("generator inversion did not converge for y = " + fmt(y), lo, hi);
}

double GeneratorSpec::invert(double y) const {
    double a = window_.lo, b = window_.hi;
    auto straddles = [&](double u, double v) {
        double fu = f_->eval(u) - y, fv = f_->eval(v) - y;
        return (fu <= 0.0 && fv >= 0.0) || (fu >= 0.0 && fv <= 0.0);
    };
    double lo_limit = domain_.lo, hi_limit = domain_.hi;
    for (int round = 0; round < 200 && !straddles(a, b); ++round) {
        bool grew = false;
        // expand toward the lower end
        if (a > lo_limit) {
            double na;
            if (std::isinf(lo_limit))
                na = a > 0 ? a / 2 : (a < 0 ? a * 2 : -1.0);
            else
                na = lo_limit + (a - lo_limit) / 2;
            if (na < a && std::isfinite(na)) {
                try {
                    f_->eval(na);
                    a = na;
                    grew = true;
                } catch (const Error&) {
                }
            }
        }
        if (b < hi_limit) {
            double nb;
            if (std::isinf(hi_limit))
                nb = b > 0 ? b * 2 : (b < 0 ? b / 2 : 1.0);
            else
                nb = hi_limit - (hi_limit - b) / 2;
            if (nb > b && std::isfinite(nb)) {
                try {
                    f_->eval(nb);
                    b = nb;
                    grew = true;
                } catch (const Error&) {
                }
            }
        }
        if (!grew) break;
    }
    if (!straddles(a, b))
        throw InversionError("no bracket for y = " + fmt(y) + " within the searched range [" +
                                 fmt(a) + ", " + fmt(b) + "]",
                             a, b);
    return invert_within(y, a, b);
}

WeightFamily WeightFamily::create(std::vector<ExprPtr> weights, const Interval& domain,
                                  const CertificationOptions& opts) {
    if (weights.size() < 2)
        throw InvalidArgument("a weight family needs n >= 2 weight functions");
    WeightFamily w;
    w.domain_ = domain;
    w.window_ = opts.window ? window_within(domain, opts.window->lo, opts.window->hi)
                            : default_window(domain);
    w.weights_ = std::move(weights);
    w.derivs_.reserve(w.weights_.size());
    for (const auto& p : w.weights_) w.derivs_.push_back(p->derivative());

    const auto xs = sample_grid(w.window_, std::max(2, opts.samples));
    for (std::size_t i = 0; i < w.weights_.size(); ++i) {
        for (double x : xs) {
            double v;
            try {
                v = w.weights_[i]->eval(x);
            } catch (const Error& e) {
                throw CertificationError("weight " + std::to_string(i + 1) +
                                         " failed to evaluate at x = " + fmt(x) + ": " + e.what());
            }
            if (!(v > 0.0))
                throw CertificationError("weight " + std::to_string(i + 1) +
                                         " is not positive at x = " + fmt(x) +
                                         " (value " + fmt(v) + ")");
        }
    }
    return w;
}

WeightFamily WeightFamily::power(std::span<const double> lambda, std::span<const double> alpha,
                                 const Interval& domain, const CertificationOptions& opts) {
    if (lambda.size() != alpha.size())
        throw InvalidArgument("power weights need matching lambda/alpha lengths");
    if (!domain.is_positive())
        throw InvalidArgument("power weights require a positive domain, got " + domain.str());
    std::vector<ExprPtr> ws;
    ws.reserve(lambda.size());
    for (std::size_t i = 0; i < lambda.size(); ++i) {
        if (!(lambda[i] > 0.0))
            throw InvalidArgument("lambda coefficients must be positive");
        ws.push_back(Expr::product(Expr::constant(lambda[i]),
                                   Expr::power(Expr::variable(), Expr::constant(alpha[i]))));
    }
    return create(std::move(ws), domain, opts);
}

double WeightFamily::sum(double x) const {
    CompensatedSum s;
    for (const auto& p : weights_) s.add(p->eval(x));
    return s.value();
}

double WeightFamily::sum_deriv(double x) const {
    CompensatedSum s;
    for (const auto& d : derivs_) s.add(d->eval(x));
    return s.value();
}

MeanSpec MeanSpec::create(GeneratorSpec generator, WeightFamily weights) {
    const Interval& gd = generator.domain();
    const Interval& wd = weights.domain();
    if (gd.lo != wd.lo || gd.hi != wd.hi)
        throw InvalidArgument("generator domain " + gd.str() + " and weight domain " + wd.str() +
                              " must coincide");
    return MeanSpec(std::move(generator), std::move(weights));
}

double MeanSpec::evaluate(std::span<const double> xs) const {
    if (static_cast<int>(xs.size()) != n())
        throw InvalidArgument("expected " + std::to_string(n()) + " arguments, got " +
                              std::to_string(xs.size()));
    double mn = xs[0], mx = xs[0];
    for (double x : xs) {
        if (!domain().contains(x))
            throw DomainError("mean argument " + fmt(x) + " is outside " + domain().str());
        mn = std::min(mn, x);
        mx = std::max(mx, x);
    }
    if (mn == mx) return mn;  // reflexivity, exactly

    CompensatedSum num, den;
    for (int i = 0; i < n(); ++i) {
        double w = weights_.weight(i, xs[static_cast<std::size_t>(i)]);
        double fv = generator_.value(xs[static_cast<std::size_t>(i)]);
        num.add(w * fv);
        den.add(w);
    }
    double y = num.value() / den.value();
    return generator_.invert_within(y, mn, mx);
}

double MeanSpec::diag_first_partial(int i, double x) const {
    if (i < 0 || i >= n()) throw InvalidArgument("weight index out of range");
    return weights_.weight(i, x) / weights_.sum(x);
}

SquareMatrix MeanSpec::diag_second_partials(double x) const {
    const int m = n();
    SquareMatrix h(m);
    const double p0 = weights_.sum(x);
    const double ratio = generator_.curvature(x);  // f''/f'
    std::vector<double> p(static_cast<std::size_t>(m)), dp(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) {
        p[static_cast<std::size_t>(i)] = weights_.weight(i, x);
        dp[static_cast<std::size_t>(i)] = weights_.weight_deriv(i, x);
    }
    for (int i = 0; i < m; ++i) {
        double pi = p[static_cast<std::size_t>(i)], dpi = dp[static_cast<std::size_t>(i)];
        h.at(i, i) = 2.0 * dpi * (p0 - pi) / (p0 * p0) + pi * (p0 - pi) / (p0 * p0) * ratio;
        for (int j = i + 1; j < m; ++j) {
            double pj = p[static_cast<std::size_t>(j)], dpj = dp[static_cast<std::size_t>(j)];
            double v = -(dpi * pj + pi * dpj) / (p0 * p0) - pi * pj / (p0 * p0) * ratio;
            h.at(i, j) = v;
            h.at(j, i) = v;
        }
    }
    return h;
}

}  // namespace meancomp
