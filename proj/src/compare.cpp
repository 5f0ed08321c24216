#include "meancomp/compare.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numeric>

namespace meancomp {

namespace {

std::string fmt(double v) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return buf;
}

void require_compatible(const MeanSpec& a, const MeanSpec& b) {
    if (a.n() != b.n())
        throw InvalidArgument("means have different arity: " + std::to_string(a.n()) + " vs " +
                              std::to_string(b.n()));
    if (a.domain().lo != b.domain().lo || a.domain().hi != b.domain().hi)
        throw InvalidArgument("means live on different intervals: " + a.domain().str() + " vs " +
                              b.domain().str());
}

Verdict sampled_holds(long samples, double tol, bool strict, const std::string& detail) {
    Verdict v;
    v.status = Status::holds;
    v.strict = strict;
    v.samples = samples;
    v.tolerance = tol;
    v.detail = detail;
    return v;
}

Verdict sampled_fails(long samples, double tol, CheckWitness w, const std::string& detail) {
    Verdict v;
    v.status = Status::fails;
    v.witness = w;
    v.samples = samples;
    v.tolerance = tol;
    v.detail = detail;
    return v;
}

Verdict inconclusive(const std::string& detail) {
    Verdict v;
    v.status = Status::inconclusive;
    v.detail = detail;
    return v;
}

// Two-variable inequality scan: requires D(x,y) >= -tol for the precomputed
// grid values and for Nelder-Mead refinements started from the worst cells.
Verdict pair_inequality_check(const Window& w, const CheckOptions& opts,
                              const std::function<double(double, double)>& diff,
                              const std::string& name) {
    const int m = std::max(2, opts.pair_resolution);
    const auto grid = sample_grid(w, m);
    double min_val = std::numeric_limits<double>::infinity();
    double min_x = grid[0], min_y = grid[0];

    struct Cell {
        double v, x, y;
    };
    std::vector<Cell> worst;
    auto consider = [&](double v, double x, double y) {
        if (v < min_val) {
            min_val = v;
            min_x = x;
            min_y = y;
        }
    };
    for (double x : grid)
        for (double y : grid) {
            double v = diff(x, y);
            consider(v, x, y);
            worst.push_back({v, x, y});
        }
    std::stable_sort(worst.begin(), worst.end(),
                     [](const Cell& a, const Cell& b) { return a.v < b.v; });
    if (worst.size() > static_cast<std::size_t>(opts.refine_starts))
        worst.resize(static_cast<std::size_t>(opts.refine_starts));

    const double step = w.width() / m;
    NelderMeadOptions nm;
    nm.max_iterations = opts.refine_iterations;
    auto objective = [&](std::span<const double> p) {
        return diff(w.clamp(p[0]), w.clamp(p[1]));
    };
    for (const Cell& c : worst) {
        double start[2] = {c.x, c.y};
        auto r = nelder_mead(objective, start, step, nm);
        consider(r.value, w.clamp(r.x[0]), w.clamp(r.x[1]));
    }

    long total = static_cast<long>(grid.size()) * static_cast<long>(grid.size());
    if (min_val < -opts.tol_pair) {
        CheckWitness cw;
        cw.x = min_x;
        cw.y = min_y;
        cw.value = min_val;
        return sampled_fails(total, opts.tol_pair, cw,
                             name + " violated: margin " + fmt(min_val) + " at (x, y) = (" +
                                 fmt(min_x) + ", " + fmt(min_y) + ")");
    }
    return sampled_holds(total, opts.tol_pair, min_val > opts.tol_pair,
                         name + " holds; smallest margin " + fmt(min_val));
}

}  // namespace

const char* to_string(Status s) {
    switch (s) {
        case Status::holds: return "holds";
        case Status::fails: return "fails";
        case Status::inconclusive: return "inconclusive";
    }
    return "?";
}

const char* to_string(Conclusion c) {
    switch (c) {
        case Conclusion::implied: return "implied";
        case Conclusion::refuted: return "refuted";
        case Conclusion::unknown: return "unknown";
    }
    return "?";
}

const char* to_string(Certification c) {
    switch (c) {
        case Certification::closed_form: return "closed_form";
        case Certification::sampled: return "sampled";
        case Certification::witness: return "witness";
    }
    return "?";
}

double comparison_discriminant(const MeanSpec& smaller, const MeanSpec& larger, double x) {
    const WeightFamily& p = smaller.weights();
    const WeightFamily& q = larger.weights();
    double p0 = p.sum(x), q0 = q.sum(x);
    double r0_log_deriv = q.sum_deriv(x) / q0 - p.sum_deriv(x) / p0;
    return 2.0 * r0_log_deriv + larger.generator().curvature(x) -
           smaller.generator().curvature(x);
}

Verdict check_first_order(const MeanSpec& smaller, const MeanSpec& larger,
                          const CheckOptions& opts) {
    require_compatible(smaller, larger);
    const auto xs = sample_grid(smaller.window(), opts.samples);
    const int n = smaller.n();
    double worst = 0.0;
    double worst_x = xs[0];
    int worst_i = 0;
    for (double x : xs) {
        double p0 = smaller.weights().sum(x);
        double q0 = larger.weights().sum(x);
        for (int i = 0; i < n; ++i) {
            double d = std::fabs(smaller.weights().weight(i, x) / p0 -
                                 larger.weights().weight(i, x) / q0);
            if (d > worst) {
                worst = d;
                worst_x = x;
                worst_i = i;
            }
        }
    }
    long total = static_cast<long>(xs.size()) * n;
    if (worst > opts.tol_equality) {
        CheckWitness w;
        w.x = worst_x;
        w.index = worst_i;
        w.value = worst;
        return sampled_fails(total, opts.tol_equality, w,
                             "weight ratios differ by " + fmt(worst) + " at x = " + fmt(worst_x) +
                                 ", index " + std::to_string(worst_i));
    }
    return sampled_holds(total, opts.tol_equality, false,
                         "max |p_i/p_0 - q_i/q_0| = " + fmt(worst));
}

Verdict check_ratio_monotone(const MeanSpec& smaller, const MeanSpec& larger,
                             const CheckOptions& opts) {
    require_compatible(smaller, larger);
    const auto xs = sample_grid(smaller.window(), opts.samples);
    double min_chi = std::numeric_limits<double>::infinity();
    double min_x = xs[0];
    for (double x : xs) {
        double chi = comparison_discriminant(smaller, larger, x);
        if (chi < min_chi) {
            min_chi = chi;
            min_x = x;
        }
    }
    long total = static_cast<long>(xs.size());
    if (min_chi < -opts.tol_monotone) {
        CheckWitness w;
        w.x = min_x;
        w.value = min_chi;
        return sampled_fails(total, opts.tol_monotone, w,
                             "comparison ratio decreasing: chi = " + fmt(min_chi) + " at x = " +
                                 fmt(min_x));
    }
    bool strict = min_chi > opts.tol_monotone;
    return sampled_holds(total, opts.tol_monotone, strict,
                         std::string("comparison ratio increasing") +
                             (strict ? " strictly" : " (non-strict)") + "; min chi = " +
                             fmt(min_chi));
}

double hessian_minor_closed_form(std::span<const double> p, double p0, double chi, int k) {
    if (k < 1 || k > static_cast<int>(p.size()))
        throw InvalidArgument("minor order k out of range");
    double prod = 1.0;
    double partial = 0.0;
    for (int i = 0; i < k; ++i) {
        prod *= p[static_cast<std::size_t>(i)];
        partial += p[static_cast<std::size_t>(i)];
    }
    return std::pow(chi, k) * prod * (p0 - partial) / std::pow(p0, k + 1);
}

std::vector<double> hessian_minor_dets(const MeanSpec& smaller, const MeanSpec& larger, double x,
                                       int kmax, const CheckOptions& opts) {
    require_compatible(smaller, larger);
    const int n = smaller.n();
    if (kmax < 1 || kmax > n - 1)
        throw InvalidArgument("kmax must lie in [1, n-1]");

    // The chi-factorization substitutes q_i = (q_0/p_0) p_i, so the
    // first-order equality must hold at x; refuse otherwise.
    double p0 = smaller.weights().sum(x);
    double q0 = larger.weights().sum(x);
    std::vector<double> p(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        p[static_cast<std::size_t>(i)] = smaller.weights().weight(i, x);
        double d = std::fabs(p[static_cast<std::size_t>(i)] / p0 -
                             larger.weights().weight(i, x) / q0);
        if (d > opts.tol_equality)
            throw InvalidArgument(
                "hessian_minor_dets requires the first-order weight equality at x = " + fmt(x) +
                " (offset " + fmt(d) + ")");
    }

    const double chi = comparison_discriminant(smaller, larger, x);
    std::vector<double> dets;
    dets.reserve(static_cast<std::size_t>(kmax));
    for (int k = 1; k <= kmax; ++k) {
        double closed = hessian_minor_closed_form(p, p0, chi, k);
        std::vector<double> m(static_cast<std::size_t>(k) * static_cast<std::size_t>(k));
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j) {
                double delta = i == j ? 1.0 : 0.0;
                m[static_cast<std::size_t>(i) * k + j] =
                    p[static_cast<std::size_t>(i)] *
                    (delta * p0 - p[static_cast<std::size_t>(j)]) / (p0 * p0) * chi;
            }
        double direct = lu_determinant(std::move(m), k);
        double scale = std::max({std::fabs(closed), std::fabs(direct), 1e-300});
        if (std::fabs(closed - direct) > 1e-10 * scale)
            throw InternalError("minor determinant mismatch at x = " + fmt(x) + ", k = " +
                                std::to_string(k) + ": closed " + fmt(closed) + " vs direct " +
                                fmt(direct));
        dets.push_back(closed);
    }
    return dets;
}

Verdict check_hessian_definite(const MeanSpec& smaller, const MeanSpec& larger,
                               const CheckOptions& opts) {
    require_compatible(smaller, larger);
    const auto xs = sample_grid(smaller.window(), opts.samples);
    const int n = smaller.n();
    const int kmax = std::min(n - 1, 5);
    double min_chi = std::numeric_limits<double>::infinity();
    double min_x = xs[0];
    const std::size_t thin = std::max<std::size_t>(1, xs.size() / 32);
    for (std::size_t idx = 0; idx < xs.size(); ++idx) {
        double x = xs[idx];
        double chi = comparison_discriminant(smaller, larger, x);
        if (chi < min_chi) {
            min_chi = chi;
            min_x = x;
        }
        if (idx % thin == 0) hessian_minor_dets(smaller, larger, x, kmax, opts);
    }
    long total = static_cast<long>(xs.size());
    if (min_chi < -opts.tol_monotone) {
        CheckWitness w;
        w.x = min_x;
        w.value = min_chi;
        return sampled_fails(total, opts.tol_monotone, w,
                             "Hessian difference not positive semidefinite: chi = " +
                                 fmt(min_chi) + " at x = " + fmt(min_x));
    }
    bool strict = min_chi > opts.tol_monotone;
    return sampled_holds(total, opts.tol_monotone, strict,
                         strict ? "positive definite on samples (min chi = " + fmt(min_chi) + ")"
                                : "positive semidefinite only (min chi = " + fmt(min_chi) + ")");
}

Verdict check_gsc(const MeanSpec& smaller, const MeanSpec& larger, const CheckOptions& opts) {
    require_compatible(smaller, larger);
    const GeneratorSpec& f = smaller.generator();
    const GeneratorSpec& g = larger.generator();
    const WeightFamily& p = smaller.weights();
    const WeightFamily& q = larger.weights();
    auto diff = [&](double x, double y) {
        double lhs = p.sum(x) * (f.value(x) - f.value(y)) / (p.sum(y) * f.deriv(y));
        double rhs = q.sum(x) * (g.value(x) - g.value(y)) / (q.sum(y) * g.deriv(y));
        return rhs - lhs;
    };
    Verdict v = pair_inequality_check(smaller.window(), opts, diff, "global sufficient inequality");
    // verification precondition, not a conclusion: record whether the
    // inequality was probed with the first-order hypothesis in mind
    return v;
}

Verdict check_gsc_plus(const MeanSpec& smaller, const MeanSpec& larger,
                       const CheckOptions& opts) {
    require_compatible(smaller, larger);
    const auto xs = sample_grid(smaller.window(), opts.samples);
    double min_r0 = std::numeric_limits<double>::infinity(), min_r0_x = xs[0];
    double min_rho = std::numeric_limits<double>::infinity(), min_rho_x = xs[0];
    for (double x : xs) {
        double p0 = smaller.weights().sum(x);
        double q0 = larger.weights().sum(x);
        double r0 = larger.weights().sum_deriv(x) / q0 - smaller.weights().sum_deriv(x) / p0;
        if (r0 < min_r0) {
            min_r0 = r0;
            min_r0_x = x;
        }
        double rho = larger.generator().curvature(x) - smaller.generator().curvature(x);
        if (rho < min_rho) {
            min_rho = rho;
            min_rho_x = x;
        }
    }
    long total = static_cast<long>(xs.size());
    if (min_r0 < -opts.tol_monotone) {
        CheckWitness w;
        w.x = min_r0_x;
        w.value = min_r0;
        return sampled_fails(total, opts.tol_monotone, w,
                             "q0/p0 decreasing: (log q0/p0)' = " + fmt(min_r0) + " at x = " +
                                 fmt(min_r0_x));
    }
    if (min_rho < -opts.tol_monotone) {
        CheckWitness w;
        w.x = min_rho_x;
        w.value = min_rho;
        return sampled_fails(total, opts.tol_monotone, w,
                             "|g'|/|f'| decreasing: (log |g'|/|f'|)' = " + fmt(min_rho) +
                                 " at x = " + fmt(min_rho_x));
    }
    bool strict = min_r0 > opts.tol_monotone && min_rho > opts.tol_monotone;
    return sampled_holds(total, opts.tol_monotone, strict,
                         "q0/p0 and |g'|/|f'| both increasing (min log-derivatives " +
                             fmt(min_r0) + ", " + fmt(min_rho) + ")");
}

Verdict check_gsc_power(const GeneratorSpec& f, const GeneratorSpec& g, double delta,
                        const CheckOptions& opts) {
    if (!f.domain().is_positive())
        throw InvalidArgument("the power-weighted tangent inequality needs a positive domain");
    auto diff = [&](double x, double y) {
        double lhs = (f.value(x) - f.value(y)) / f.deriv(y);
        double rhs = std::pow(x, delta) * (g.value(x) - g.value(y)) /
                     (std::pow(y, delta) * g.deriv(y));
        return rhs - lhs;
    };
    return pair_inequality_check(f.window(), opts, diff, "power-weighted tangent inequality");
}

SharedWeightBattery check_shared_weight_battery(const GeneratorSpec& f, const GeneratorSpec& g,
                                                const WeightFamily& p, const CheckOptions& opts) {
    (void)p;  // the four conditions depend on the generators only
    SharedWeightBattery out;
    const Window& w = f.window();
    const auto xs = sample_grid(w, opts.samples);

    // (a) |g'/f'| increasing via difference quotients of its logarithm
    {
        double min_q = std::numeric_limits<double>::infinity(), min_x = xs[0];
        double prev = std::log(std::fabs(g.deriv(xs[0]) / f.deriv(xs[0])));
        for (std::size_t k = 1; k < xs.size(); ++k) {
            double cur = std::log(std::fabs(g.deriv(xs[k]) / f.deriv(xs[k])));
            double quotient = (cur - prev) / (xs[k] - xs[k - 1]);
            if (quotient < min_q) {
                min_q = quotient;
                min_x = xs[k - 1];
            }
            prev = cur;
        }
        long total = static_cast<long>(xs.size());
        if (min_q < -opts.tol_monotone) {
            CheckWitness cw;
            cw.x = min_x;
            cw.value = min_q;
            out.ratio_increasing =
                sampled_fails(total, opts.tol_monotone, cw,
                              "|g'/f'| decreasing near x = " + fmt(min_x) + " (quotient " +
                                  fmt(min_q) + ")");
        } else {
            out.ratio_increasing =
                sampled_holds(total, opts.tol_monotone, min_q > opts.tol_monotone,
                              "|g'/f'| increasing; min log-difference quotient " + fmt(min_q));
        }
    }

    // (b) f''/f' <= g''/g' pointwise
    {
        double min_d = std::numeric_limits<double>::infinity(), min_x = xs[0];
        for (double x : xs) {
            double d = g.curvature(x) - f.curvature(x);
            if (d < min_d) {
                min_d = d;
                min_x = x;
            }
        }
        long total = static_cast<long>(xs.size());
        if (min_d < -opts.tol_monotone) {
            CheckWitness cw;
            cw.x = min_x;
            cw.value = min_d;
            out.curvature_order = sampled_fails(
                total, opts.tol_monotone, cw,
                "f''/f' > g''/g' at x = " + fmt(min_x) + " (difference " + fmt(min_d) + ")");
        } else {
            out.curvature_order =
                sampled_holds(total, opts.tol_monotone, min_d > opts.tol_monotone,
                              "f''/f' <= g''/g'; min difference " + fmt(min_d));
        }
    }

    // (c) sign of (g o f^{-1})'' = (g'/f'^2 (g''/g' - f''/f')) o f^{-1},
    // sampled over the image of the window and pulled back through inversion.
    {
        bool g_increasing = g.direction() == Direction::increasing;
        double fa = f.value(w.lo), fb = f.value(w.hi);
        double ulo = std::min(fa, fb), uhi = std::max(fa, fb);
        const int m = std::max(8, opts.samples / 4);
        double min_s = std::numeric_limits<double>::infinity(), min_x = w.lo;
        for (int k = 0; k < m; ++k) {
            double u = ulo + (uhi - ulo) * (k + 0.5) / m;
            double x = f.invert_within(u, w.lo, w.hi);
            double h2 = g.deriv(x) / (f.deriv(x) * f.deriv(x)) *
                        (g.curvature(x) - f.curvature(x));
            double normalized = h2 * f.deriv(x) * f.deriv(x) / std::fabs(g.deriv(x));
            double s = (g_increasing ? 1.0 : -1.0) * normalized;
            if (s < min_s) {
                min_s = s;
                min_x = x;
            }
        }
        const char* shape = g_increasing ? "convex" : "concave";
        if (min_s < -opts.tol_monotone) {
            CheckWitness cw;
            cw.x = min_x;
            cw.value = min_s;
            out.inverse_convexity =
                sampled_fails(m, opts.tol_monotone, cw,
                              std::string("g o f^{-1} is not ") + shape + " near x = " +
                                  fmt(min_x));
        } else {
            out.inverse_convexity =
                sampled_holds(m, opts.tol_monotone, min_s > opts.tol_monotone,
                              std::string("g o f^{-1} is ") + shape +
                                  "; min normalized second derivative " + fmt(min_s));
        }
    }

    // (d) (f(x)-f(y))/f'(y) <= (g(x)-g(y))/g'(y) on the pair grid
    {
        auto diff = [&](double x, double y) {
            return (g.value(x) - g.value(y)) / g.deriv(y) -
                   (f.value(x) - f.value(y)) / f.deriv(y);
        };
        out.tangent_inequality = pair_inequality_check(w, opts, diff, "tangent inequality");
    }

    out.consistent = out.ratio_increasing.status == out.curvature_order.status &&
                     out.curvature_order.status == out.inverse_convexity.status &&
                     out.inverse_convexity.status == out.tangent_inequality.status;
    return out;
}

Verdict check_shared_generator(const GeneratorSpec& f, const WeightFamily& p,
                               const WeightFamily& q, const CheckOptions& opts) {
    (void)f;
    if (p.size() != q.size())
        throw InvalidArgument("weight families have different arity");
    if (p.domain().lo != q.domain().lo || p.domain().hi != q.domain().hi)
        throw InvalidArgument("weight families live on different intervals");
    const auto xs = sample_grid(p.window(), opts.samples);
    const int n = p.size();

    double worst_eq = 0.0, worst_eq_x = xs[0];
    int worst_i = 0;
    double min_r0 = std::numeric_limits<double>::infinity(), min_r0_x = xs[0];
    for (double x : xs) {
        double p0 = p.sum(x), q0 = q.sum(x);
        for (int i = 0; i < n; ++i) {
            double d = std::fabs(p.weight(i, x) / p0 - q.weight(i, x) / q0);
            if (d > worst_eq) {
                worst_eq = d;
                worst_eq_x = x;
                worst_i = i;
            }
        }
        double r0 = q.sum_deriv(x) / q0 - p.sum_deriv(x) / p0;
        if (r0 < min_r0) {
            min_r0 = r0;
            min_r0_x = x;
        }
    }
    long total = static_cast<long>(xs.size()) * (n + 1);
    if (worst_eq > opts.tol_equality) {
        CheckWitness w;
        w.x = worst_eq_x;
        w.index = worst_i;
        w.value = worst_eq;
        return sampled_fails(total, opts.tol_equality, w,
                             "weight ratios differ by " + fmt(worst_eq) + " at x = " +
                                 fmt(worst_eq_x));
    }
    if (min_r0 < -opts.tol_monotone) {
        CheckWitness w;
        w.x = min_r0_x;
        w.value = min_r0;
        return sampled_fails(total, opts.tol_monotone, w,
                             "q0/p0 decreasing: (log q0/p0)' = " + fmt(min_r0) + " at x = " +
                                 fmt(min_r0_x));
    }
    return sampled_holds(total, opts.tol_monotone, min_r0 > opts.tol_monotone,
                         "weight ratios equal and q0/p0 increasing (min log-derivative " +
                             fmt(min_r0) + ")");
}

namespace {

bool weights_structurally_equal(const WeightFamily& p, const WeightFamily& q) {
    if (p.size() != q.size()) return false;
    for (int i = 0; i < p.size(); ++i)
        if (!structurally_equal(p.weight_expr(i), q.weight_expr(i))) return false;
    return true;
}

}  // namespace

ComparisonReport compare_means(const MeanSpec& smaller, const MeanSpec& larger,
                               const CheckOptions& opts) {
    require_compatible(smaller, larger);
    ComparisonReport r;
    r.first_order = check_first_order(smaller, larger, opts);
    r.ratio_monotone = check_ratio_monotone(smaller, larger, opts);
    if (r.first_order.holds()) {
        r.hessian_definite = check_hessian_definite(smaller, larger, opts);
    } else {
        r.hessian_definite = inconclusive(
            "not evaluated: the first-order weight equality fails, so the chi-reduction of the "
            "Hessian difference does not apply");
    }
    r.gsc = check_gsc(smaller, larger, opts);
    r.gsc_plus = check_gsc_plus(smaller, larger, opts);

    const bool same_generator =
        structurally_equal(smaller.generator().expr(), larger.generator().expr());
    const bool same_weights = weights_structurally_equal(smaller.weights(), larger.weights());
    if (same_weights)
        r.shared_weights = check_shared_weight_battery(smaller.generator(), larger.generator(),
                                                       smaller.weights(), opts);
    if (same_generator)
        r.shared_generator = check_shared_generator(smaller.generator(), smaller.weights(),
                                                    larger.weights(), opts);

    const bool identical = same_generator && same_weights;

    // globally smaller
    ConclusionEntry global;
    if (identical) {
        global = {Conclusion::implied, rules::identical, Certification::closed_form};
    } else if (r.first_order.fails()) {
        global = {Conclusion::refuted,
                  std::string(rules::local_refutes_global) + " — " + rules::first_order_necessary,
                  Certification::sampled};
    } else if (r.ratio_monotone.fails()) {
        global = {Conclusion::refuted,
                  std::string(rules::local_refutes_global) + " — " +
                      rules::ratio_monotone_necessary,
                  Certification::sampled};
    } else if (r.shared_generator && r.shared_generator->fails()) {
        global = {Conclusion::refuted, rules::shared_generator, Certification::sampled};
    } else if (r.shared_weights && r.shared_weights->all_fail()) {
        global = {Conclusion::refuted, rules::shared_weights, Certification::sampled};
    } else if (r.shared_weights && r.shared_weights->all_hold()) {
        global = {Conclusion::implied, rules::shared_weights, Certification::sampled};
    } else if (r.shared_generator && r.shared_generator->holds()) {
        global = {Conclusion::implied, rules::shared_generator, Certification::sampled};
    } else if (r.first_order.holds() && r.gsc.holds()) {
        global = {Conclusion::implied, rules::global_sufficient, Certification::sampled};
    } else if (r.first_order.holds() && r.gsc_plus.holds()) {
        global = {Conclusion::implied, rules::global_sufficient_split, Certification::sampled};
    } else {
        global = {Conclusion::unknown, "no applicable rule was decisive",
                  Certification::sampled};
    }

    // locally smaller
    ConclusionEntry local;
    if (identical) {
        local = {Conclusion::implied, rules::identical, Certification::closed_form};
    } else if (r.first_order.fails()) {
        local = {Conclusion::refuted, rules::first_order_necessary, Certification::sampled};
    } else if (r.ratio_monotone.fails()) {
        local = {Conclusion::refuted, rules::ratio_monotone_necessary, Certification::sampled};
    } else if (r.shared_generator && r.shared_generator->fails()) {
        local = {Conclusion::refuted, rules::shared_generator, Certification::sampled};
    } else if (r.shared_weights && r.shared_weights->all_fail()) {
        local = {Conclusion::refuted, rules::shared_weights, Certification::sampled};
    } else if (r.shared_weights && r.shared_weights->all_hold()) {
        local = {Conclusion::implied, rules::shared_weights, Certification::sampled};
    } else if (r.shared_generator && r.shared_generator->holds()) {
        local = {Conclusion::implied, rules::shared_generator, Certification::sampled};
    } else if (r.first_order.holds() && r.ratio_monotone.holds() && r.ratio_monotone.strict) {
        local = {Conclusion::implied, rules::local_sufficient, Certification::sampled};
    } else if (global.status == Conclusion::implied) {
        local = {Conclusion::implied, rules::global_implies_local, global.certification};
    } else {
        local = {Conclusion::unknown, "no applicable rule was decisive", Certification::sampled};
    }

    r.locally_smaller = local;
    r.globally_smaller = global;
    return r;
}

}  // namespace meancomp
