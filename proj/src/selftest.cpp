#include "meancomp/selftest.hpp"

#include <cmath>
#include <cstdio>
#include <functional>

#include "meancomp/compare.hpp"
#include "meancomp/numeric.hpp"
#include "meancomp/power.hpp"

namespace meancomp {

namespace {

std::string fmt(double v) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

// Portable deterministic RNG (std distributions are not reproducible across
// standard libraries).
struct Rng {
    std::uint64_t state;

    explicit Rng(std::uint64_t seed) : state(seed) {}
    double uniform(double lo, double hi) {
        double u = (splitmix64(state) >> 11) * 0x1.0p-53;
        return lo + (hi - lo) * u;
    }
    int index(int n) { return static_cast<int>(splitmix64(state) % static_cast<unsigned>(n)); }
    bool flip() { return (splitmix64(state) & 1u) != 0; }
};

const Interval kDomain{0.5, 2.5};
const Window kWindow{0.6, 2.4};

ExprPtr random_generator_expr(Rng& rng) {
    switch (rng.index(5)) {
        case 0: {  // x^a, a != 0
            double a = rng.uniform(0.25, 3.0) * (rng.flip() ? 1.0 : -1.0);
            return Expr::power(Expr::variable(), Expr::constant(a));
        }
        case 1:
            return Expr::log_of(Expr::variable());
        case 2: {  // exp(c x)
            double c = rng.uniform(0.3, 1.5) * (rng.flip() ? 1.0 : -1.0);
            return Expr::exp_of(Expr::product(Expr::constant(c), Expr::variable()));
        }
        case 3: {  // a x + b x^3 (increasing)
            double a = rng.uniform(0.3, 2.0), b = rng.uniform(0.1, 1.0);
            return Expr::sum(Expr::product(Expr::constant(a), Expr::variable()),
                             Expr::product(Expr::constant(b),
                                           Expr::power(Expr::variable(), Expr::constant(3.0))));
        }
        default: {  // x + c log(x), c > 0
            double c = rng.uniform(0.1, 1.0);
            return Expr::sum(Expr::variable(),
                             Expr::product(Expr::constant(c), Expr::log_of(Expr::variable())));
        }
    }
}

ExprPtr random_weight_expr(Rng& rng) {
    switch (rng.index(4)) {
        case 0: {  // lambda x^alpha
            double lam = rng.uniform(0.5, 2.0), al = rng.uniform(-2.0, 2.0);
            return Expr::product(Expr::constant(lam),
                                 Expr::power(Expr::variable(), Expr::constant(al)));
        }
        case 1: {  // c0 + c1 x
            double c0 = rng.uniform(0.2, 1.5), c1 = rng.uniform(0.1, 1.5);
            return Expr::sum(Expr::constant(c0),
                             Expr::product(Expr::constant(c1), Expr::variable()));
        }
        case 2: {  // exp(c x)
            double c = rng.uniform(-1.0, 1.0);
            return Expr::exp_of(Expr::product(Expr::constant(c), Expr::variable()));
        }
        default: {  // 1 / (c + x)
            double c = rng.uniform(0.1, 1.0);
            return Expr::quotient(Expr::constant(1.0),
                                  Expr::sum(Expr::constant(c), Expr::variable()));
        }
    }
}

MeanSpec random_mean(Rng& rng, int n) {
    GeneratorSpec g = GeneratorSpec::create(random_generator_expr(rng), kDomain);
    std::vector<ExprPtr> ws;
    ws.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) ws.push_back(random_weight_expr(rng));
    return MeanSpec::create(std::move(g), WeightFamily::create(std::move(ws), kDomain));
}

double central_diff(const std::function<double(double)>& f, double x, double h) {
    return (f(x + h) - f(x - h)) / (2.0 * h);
}

// Random bounded-depth expression for the derivative cross-check; kept to
// shapes that stay finite on the test window.
ExprPtr random_expr(Rng& rng, int depth) {
    if (depth <= 0) {
        switch (rng.index(3)) {
            case 0: return Expr::constant(rng.uniform(-2.0, 2.0));
            default: return Expr::variable();
        }
    }
    switch (rng.index(7)) {
        case 0: return Expr::sum(random_expr(rng, depth - 1), random_expr(rng, depth - 1));
        case 1: return Expr::product(random_expr(rng, depth - 1), random_expr(rng, depth - 1));
        case 2: {
            // keep denominators away from zero: c + x with c > 0.1
            ExprPtr den = Expr::sum(Expr::constant(rng.uniform(0.2, 2.0)), Expr::variable());
            return Expr::quotient(random_expr(rng, depth - 1), den);
        }
        case 3:
            return Expr::power(Expr::variable(), Expr::constant(rng.uniform(-2.5, 2.5)));
        case 4:
            return Expr::exp_of(Expr::product(Expr::constant(rng.uniform(-1.0, 1.0)),
                                              random_expr(rng, depth - 1)));
        case 5: {
            ExprPtr arg = Expr::sum(Expr::constant(rng.uniform(0.3, 2.0)), Expr::variable());
            return Expr::log_of(arg);
        }
        default: return Expr::negate(random_expr(rng, depth - 1));
    }
}

SelftestResult suite_expr_derivative(Rng& rng) {
    SelftestResult r{"expr-derivative-vs-finite-difference", true, ""};
    int checked = 0;
    double worst = 0.0;
    for (int trial = 0; trial < 400 && checked < 200; ++trial) {
        ExprPtr e = random_expr(rng, 3);
        ExprPtr d = e->derivative();
        double x = rng.uniform(0.7, 1.9);
        double h = 3e-6 * (1.0 + std::fabs(x));
        double sym, fd, fd2;
        try {
            sym = d->eval(x);
            fd = central_diff([&](double t) { return e->eval(t); }, x, h);
            fd2 = central_diff([&](double t) { return e->eval(t); }, x, h / 2);
        } catch (const Error&) {
            continue;  // point slipped outside the expression's domain
        }
        // Richardson stability: skip points where the quotient itself is noisy
        if (std::fabs(fd - fd2) > 1e-7 * (1.0 + std::fabs(fd))) continue;
        ++checked;
        double err = std::fabs(sym - fd2) / (1.0 + std::fabs(sym));
        worst = std::max(worst, err);
        if (err > 1e-6) {
            r.passed = false;
            r.detail = "relative error " + fmt(err) + " for " + e->str() + " at x = " + fmt(x);
            return r;
        }
    }
    r.detail = std::to_string(checked) + " expressions checked, worst relative error " +
               fmt(worst);
    return r;
}

SelftestResult suite_diagonal_partials(Rng& rng) {
    SelftestResult r{"diagonal-partials-vs-numeric", true, ""};
    double worst1 = 0.0, worst2 = 0.0;
    for (int trial = 0; trial < 40; ++trial) {
        int n = 2 + rng.index(4);
        MeanSpec m = random_mean(rng, n);
        double x = rng.uniform(0.8, 2.0);

        auto mean_at = [&](const std::vector<double>& xs) { return m.evaluate(xs); };
        for (int i = 0; i < n; ++i) {
            double closed = m.diag_first_partial(i, x);
            double h = 1e-5 * (1.0 + std::fabs(x));
            std::vector<double> xs(static_cast<std::size_t>(n), x);
            auto f = [&](double t) {
                xs[static_cast<std::size_t>(i)] = t;
                double v = mean_at(xs);
                xs[static_cast<std::size_t>(i)] = x;
                return v;
            };
            double fd = central_diff(f, x, h);
            double err = std::fabs(closed - fd);
            worst1 = std::max(worst1, err);
            if (err > 1e-5) {
                r.passed = false;
                r.detail = "first partial off by " + fmt(err) + " (n = " + std::to_string(n) +
                           ", i = " + std::to_string(i) + ")";
                return r;
            }
        }

        SquareMatrix h2 = m.diag_second_partials(x);
        double h = 1e-3 * (1.0 + std::fabs(x));
        for (int i = 0; i < n; ++i)
            for (int j = i; j < n; ++j) {
                std::vector<double> xs(static_cast<std::size_t>(n), x);
                double fd;
                if (i == j) {
                    auto f = [&](double t) {
                        xs[static_cast<std::size_t>(i)] = t;
                        double v = mean_at(xs);
                        xs[static_cast<std::size_t>(i)] = x;
                        return v;
                    };
                    fd = (f(x + h) - 2.0 * f(x) + f(x - h)) / (h * h);
                } else {
                    auto f = [&](double s, double t) {
                        xs[static_cast<std::size_t>(i)] = s;
                        xs[static_cast<std::size_t>(j)] = t;
                        double v = mean_at(xs);
                        xs[static_cast<std::size_t>(i)] = x;
                        xs[static_cast<std::size_t>(j)] = x;
                        return v;
                    };
                    fd = (f(x + h, x + h) - f(x + h, x - h) - f(x - h, x + h) +
                          f(x - h, x - h)) /
                         (4.0 * h * h);
                }
                double err = std::fabs(h2.at(i, j) - fd);
                worst2 = std::max(worst2, err);
                if (err > 1e-4) {
                    r.passed = false;
                    r.detail = "second partial (" + std::to_string(i) + "," + std::to_string(j) +
                               ") off by " + fmt(err);
                    return r;
                }
            }
    }
    r.detail = "worst first-partial error " + fmt(worst1) + ", worst Hessian error " +
               fmt(worst2);
    return r;
}

SelftestResult suite_minor_determinants(Rng& rng) {
    SelftestResult r{"minor-determinant-identity", true, ""};
    double worst = 0.0;
    for (int trial = 0; trial < 200; ++trial) {
        int k = 1 + rng.index(5);
        int n = k + 1 + rng.index(8 - k);
        std::vector<double> p(static_cast<std::size_t>(n));
        double p0 = 0.0;
        for (double& v : p) {
            v = rng.uniform(0.1, 10.0);
            p0 += v;
        }
        double chi = rng.uniform(-5.0, 5.0);
        double closed = hessian_minor_closed_form(p, p0, chi, k);
        std::vector<double> m(static_cast<std::size_t>(k) * static_cast<std::size_t>(k));
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j)
                m[static_cast<std::size_t>(i) * k + j] =
                    p[static_cast<std::size_t>(i)] *
                    ((i == j ? p0 : 0.0) - p[static_cast<std::size_t>(j)]) / (p0 * p0) * chi;
        double direct = lu_determinant(std::move(m), k);
        double scale = std::max({std::fabs(closed), std::fabs(direct), 1e-300});
        double err = std::fabs(closed - direct) / scale;
        worst = std::max(worst, err);
        if (err > 1e-10) {
            r.passed = false;
            r.detail = "relative mismatch " + fmt(err) + " at k = " + std::to_string(k);
            return r;
        }
    }
    r.detail = "200 draws, worst relative mismatch " + fmt(worst);
    return r;
}

struct NamedPair {
    const char* name;
    MeanSpec smaller;
    MeanSpec larger;
};

std::vector<NamedPair> comparison_battery() {
    auto unit_weights = [] {
        std::vector<ExprPtr> w{Expr::constant(1.0), Expr::constant(1.0)};
        return WeightFamily::create(std::move(w), kDomain);
    };
    auto linear_weights = [] {
        std::vector<ExprPtr> w{Expr::variable(), Expr::variable()};
        return WeightFamily::create(std::move(w), kDomain);
    };
    auto gen = [](const char* dsl) { return GeneratorSpec::create(parse_expr(dsl), kDomain); };

    std::vector<NamedPair> pairs;
    pairs.push_back({"geometric-vs-arithmetic",
                     MeanSpec::create(gen("log(x)"), unit_weights()),
                     MeanSpec::create(gen("x"), unit_weights())});
    pairs.push_back({"arithmetic-vs-geometric",
                     MeanSpec::create(gen("x"), unit_weights()),
                     MeanSpec::create(gen("log(x)"), unit_weights())});
    pairs.push_back({"arithmetic-vs-quadratic",
                     MeanSpec::create(gen("x"), unit_weights()),
                     MeanSpec::create(gen("x^2"), unit_weights())});
    pairs.push_back({"quadratic-vs-arithmetic",
                     MeanSpec::create(gen("x^2"), unit_weights()),
                     MeanSpec::create(gen("x"), unit_weights())});
    pairs.push_back({"equal-generator-increasing-ratio",
                     MeanSpec::create(gen("x"), unit_weights()),
                     MeanSpec::create(gen("x"), linear_weights())});
    pairs.push_back({"equal-generator-decreasing-ratio",
                     MeanSpec::create(gen("x"), linear_weights()),
                     MeanSpec::create(gen("x"), unit_weights())});
    pairs.push_back({"identical", MeanSpec::create(gen("x^2"), linear_weights()),
                     MeanSpec::create(gen("x^2"), linear_weights())});
    pairs.push_back({"exp-vs-linear", MeanSpec::create(gen("x"), unit_weights()),
                     MeanSpec::create(gen("exp(x)"), unit_weights())});
    pairs.push_back({"harmonic-vs-geometric",
                     MeanSpec::create(gen("x^-1"), unit_weights()),
                     MeanSpec::create(gen("log(x)"), unit_weights())});
    pairs.push_back({"mixed-weights-vs-mixed-weights",
                     MeanSpec::create(gen("x"), WeightFamily::create(
                                                    {parse_expr("1"), parse_expr("x")}, kDomain)),
                     MeanSpec::create(gen("x"), WeightFamily::create(
                                                    {parse_expr("x"), parse_expr("x^2")},
                                                    kDomain))});
    return pairs;
}

SelftestResult suite_gsc_implies_ratio() {
    SelftestResult r{"global-inequality-implies-ratio-monotone", true, ""};
    CheckOptions opts;
    opts.pair_resolution = 96;
    int holds = 0;
    for (const NamedPair& pair : comparison_battery()) {
        Verdict gsc = check_gsc(pair.smaller, pair.larger, opts);
        if (!gsc.holds()) continue;
        ++holds;
        Verdict ratio = check_ratio_monotone(pair.smaller, pair.larger, opts);
        if (ratio.fails()) {
            r.passed = false;
            r.detail = std::string("pair ") + pair.name +
                       " passes the global inequality but fails ratio monotonicity";
            return r;
        }
    }
    r.detail = std::to_string(holds) + " battery pairs pass the global inequality; implication "
               "held for all";
    return r;
}

SelftestResult suite_shared_weight_consistency(Rng& rng) {
    SelftestResult r{"shared-weight-battery-consistency", true, ""};
    CheckOptions opts;
    opts.samples = 384;
    opts.pair_resolution = 96;
    int done = 0;
    while (done < 30) {
        GeneratorSpec f = GeneratorSpec::create(random_generator_expr(rng), kDomain);
        GeneratorSpec g = GeneratorSpec::create(random_generator_expr(rng), kDomain);
        // keep clear of tolerance artifacts: require a decisive curvature
        // margin on the window the battery itself samples
        const auto xs = sample_grid(f.window(), 256);
        double mn = std::numeric_limits<double>::infinity();
        int violating = 0;
        for (double x : xs) {
            double d = g.curvature(x) - f.curvature(x);
            mn = std::min(mn, d);
            if (d < -1e-5) ++violating;
        }
        bool clear_hold = mn >= -1e-12;
        bool clear_fail = mn <= -1e-4 && violating >= 10;
        if (!clear_hold && !clear_fail) continue;
        ++done;
        std::vector<ExprPtr> ws{Expr::constant(1.0), Expr::constant(1.0)};
        WeightFamily p = WeightFamily::create(std::move(ws), kDomain);
        SharedWeightBattery b = check_shared_weight_battery(f, g, p, opts);
        if (!b.consistent) {
            r.passed = false;
            r.detail = "verdicts disagree for f = " + f.expr()->str() + ", g = " +
                       g.expr()->str();
            return r;
        }
    }
    r.detail = "30 generator pairs, all four formulations agreed";
    return r;
}

SelftestResult suite_strict_mean_bounds(Rng& rng) {
    SelftestResult r{"strict-mean-bounds", true, ""};
    for (int spec = 0; spec < 20; ++spec) {
        int n = 2 + rng.index(4);
        MeanSpec m = random_mean(rng, n);
        for (int trial = 0; trial < 100; ++trial) {
            std::vector<double> xs(static_cast<std::size_t>(n));
            for (double& v : xs) v = rng.uniform(kWindow.lo, kWindow.hi);
            double mn = xs[0], mx = xs[0];
            for (double v : xs) {
                mn = std::min(mn, v);
                mx = std::max(mx, v);
            }
            double mean = m.evaluate(xs);
            if (!(mean >= mn - 1e-12 && mean <= mx + 1e-12)) {
                r.passed = false;
                r.detail = "mean " + fmt(mean) + " escapes [" + fmt(mn) + ", " + fmt(mx) + "]";
                return r;
            }
            if (mx - mn > 1e-6 && !(mean > mn && mean < mx)) {
                r.passed = false;
                r.detail = "mean not strictly inside for spread " + fmt(mx - mn);
                return r;
            }
        }
    }
    r.detail = "2000 evaluations stayed within bounds, strictly for non-constant input";
    return r;
}

}  // namespace

std::vector<SelftestResult> run_selftest(std::uint64_t seed) {
    Rng rng(seed);
    std::vector<SelftestResult> out;
    out.push_back(suite_expr_derivative(rng));
    out.push_back(suite_diagonal_partials(rng));
    out.push_back(suite_minor_determinants(rng));
    out.push_back(suite_gsc_implies_ratio());
    out.push_back(suite_shared_weight_consistency(rng));
    out.push_back(suite_strict_mean_bounds(rng));
    return out;
}

std::string selftest_text(const std::vector<SelftestResult>& results) {
    std::string out;
    for (const auto& r : results) {
        out += r.passed ? "PASS " : "FAIL ";
        out += r.name + ": " + r.detail + "\n";
    }
    out += selftest_passed(results) ? "selftest: all suites passed\n"
                                    : "selftest: FAILURES detected\n";
    return out;
}

bool selftest_passed(const std::vector<SelftestResult>& results) {
    for (const auto& r : results)
        if (!r.passed) return false;
    return true;
}

}  // namespace meancomp
