#include <doctest.h>

#include <cmath>
#include <vector>

#include "meancomp/mean.hpp"
#include "support/oracles.hpp"
#include "support/random_specs.hpp"

using namespace meancomp;

namespace {

const Interval kPos{0.0, std::numeric_limits<double>::infinity()};

GeneratorSpec gen(const char* dsl, const Interval& domain) {
    return GeneratorSpec::create(parse_expr(dsl), domain);
}

WeightFamily unit_weights(int n, const Interval& domain) {
    std::vector<ExprPtr> ws(static_cast<std::size_t>(n), Expr::constant(1.0));
    return WeightFamily::create(std::move(ws), domain);
}

const Interval kTestDomain{0.5, 2.5};

MeanSpec random_mean(oracle::Rng& rng, int n) { return testspec::random_mean(rng, n); }

}  // namespace

TEST_CASE("certification accepts monotone generators and rejects the rest") {
    CHECK(gen("x^2", kPos).direction() == Direction::increasing);
    CHECK(gen("x^-1", kPos).direction() == Direction::decreasing);
    CHECK(gen("log(x)", kPos).direction() == Direction::increasing);
    CHECK_THROWS_AS(gen("x^2", Interval(-1.0, 1.0)), CertificationError);
    CHECK_THROWS_AS(GeneratorSpec::create(Expr::constant(3.0), kPos), CertificationError);
}

TEST_CASE("weight families must be positive") {
    CHECK_THROWS_AS(WeightFamily::create({parse_expr("x - 1"), parse_expr("1")},
                                         Interval(0.5, 2.5)),
                    CertificationError);
    CHECK_THROWS_AS(WeightFamily::create({parse_expr("1")}, kPos), InvalidArgument);
    CHECK_NOTHROW(WeightFamily::create({parse_expr("x"), parse_expr("x^2")}, kPos));
}

TEST_CASE("invert_generator: documented examples") {
    // f = x^2, y = 4 -> 2
    CHECK(gen("x^2", kPos).invert(4.0) == doctest::Approx(2.0).epsilon(1e-13));
    // f = log, y = 0 -> 1
    CHECK(gen("log(x)", kPos).invert(0.0) == doctest::Approx(1.0).epsilon(1e-13));

    // f = x + x^3 on (0, 2), y = 2.5: frozen from the bisection oracle
    // (computed independently here as well)
    GeneratorSpec cubic = gen("x + x^3", Interval(0.0, 2.0));
    double wanted = oracle::bisect([](double t) { return t + t * t * t - 2.5; }, 0.1, 1.9);
    double got = cubic.invert(2.5);
    CHECK(wanted == doctest::Approx(1.1147471097045168).epsilon(1e-12));
    CHECK(got == doctest::Approx(wanted).epsilon(1e-12));
    CHECK(std::fabs(got + got * got * got - 2.5) <= 1e-12 * 3.5);
}

TEST_CASE("invert_generator rejects targets outside the image") {
    GeneratorSpec f = gen("x^2", Interval(1.0, 3.0));
    CHECK_THROWS_AS(f.invert(0.5), InversionError);   // below f((1,3)) = (1,9)
    CHECK_THROWS_AS(f.invert(25.0), InversionError);  // above
    try {
        f.invert(25.0);
    } catch (const InversionError& e) {
        CHECK(e.searched_lo() >= 1.0);
        CHECK(e.searched_hi() <= 3.0);
    }
}

TEST_CASE("eval_mean: documented examples") {
    // arithmetic mean
    MeanSpec am = MeanSpec::create(gen("x", kPos), unit_weights(2, kPos));
    double xs1[2] = {2.0, 4.0};
    CHECK(am.evaluate(xs1) == doctest::Approx(3.0).epsilon(1e-14));

    // diagonal reflexivity (exact by construction, contract asks 1e-12)
    MeanSpec m = MeanSpec::create(gen("x^2", kPos),
                                  WeightFamily::create({parse_expr("x"), parse_expr("x^2"),
                                                        parse_expr("1 + x")},
                                                       kPos));
    double xs2[3] = {1.37, 1.37, 1.37};
    CHECK(m.evaluate(xs2) == doctest::Approx(1.37).epsilon(1e-13));

    // quadratic mean of (1, 2) = sqrt(2.5)
    MeanSpec qm = MeanSpec::create(gen("x^2", kPos), unit_weights(2, kPos));
    double xs3[2] = {1.0, 2.0};
    CHECK(qm.evaluate(xs3) == doctest::Approx(1.5811388300841898).epsilon(1e-13));
}

TEST_CASE("eval_mean validates arguments") {
    MeanSpec am = MeanSpec::create(gen("x", kTestDomain), unit_weights(2, kTestDomain));
    double outside[2] = {0.1, 1.0};
    CHECK_THROWS_AS(am.evaluate(outside), DomainError);
    double three[3] = {1.0, 1.0, 1.0};
    CHECK_THROWS_AS(am.evaluate(three), InvalidArgument);
}

TEST_CASE("mismatched domains are rejected") {
    CHECK_THROWS_AS(MeanSpec::create(gen("x", kPos), unit_weights(2, kTestDomain)),
                    InvalidArgument);
}

TEST_CASE("diag_first_partial: documented examples") {
    MeanSpec m3 = MeanSpec::create(gen("x", kPos), unit_weights(3, kPos));
    for (int i = 0; i < 3; ++i)
        CHECK(m3.diag_first_partial(i, 1.7) == doctest::Approx(1.0 / 3).epsilon(1e-14));

    MeanSpec m2 = MeanSpec::create(
        gen("x", kPos), WeightFamily::create({parse_expr("x"), parse_expr("x^2")}, kPos));
    CHECK(m2.diag_first_partial(0, 2.0) == doctest::Approx(1.0 / 3).epsilon(1e-14));
    CHECK(m2.diag_first_partial(1, 2.0) == doctest::Approx(2.0 / 3).epsilon(1e-14));
}

TEST_CASE("diag_second_partials: documented examples") {
    // f = x, p == 1: everything vanishes
    MeanSpec flat = MeanSpec::create(gen("x", kPos), unit_weights(2, kPos));
    SquareMatrix h0 = flat.diag_second_partials(1.3);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) CHECK(h0.at(i, j) == doctest::Approx(0.0).scale(1.0));

    // f = x^2, p == 1, n = 2: diagonal entry p_i(p0-p_i)/p0^2 * f''/f' = 1/(4x)
    MeanSpec quad = MeanSpec::create(gen("x^2", kPos), unit_weights(2, kPos));
    SquareMatrix h1 = quad.diag_second_partials(1.0);
    CHECK(h1.at(0, 0) == doctest::Approx(0.25).epsilon(1e-13));
    CHECK(h1.at(1, 1) == doctest::Approx(0.25).epsilon(1e-13));
    CHECK(h1.at(0, 1) == doctest::Approx(-0.25).epsilon(1e-13));  // -p_i p_j / p0^2 * f''/f'
    SquareMatrix h2 = quad.diag_second_partials(2.0);
    CHECK(h2.at(0, 0) == doctest::Approx(0.125).epsilon(1e-13));
}

TEST_CASE("diagonal partials match finite differences of the mean") {
    oracle::Rng rng(0xabcdef12);
    for (int trial = 0; trial < 25; ++trial) {
        int n = 2 + rng.index(4);
        MeanSpec m = random_mean(rng, n);
        double x = rng.uniform(0.8, 2.0);
        std::vector<double> xs(static_cast<std::size_t>(n), x);

        double sum = 0.0;
        for (int i = 0; i < n; ++i) {
            double closed = m.diag_first_partial(i, x);
            sum += closed;
            double h = 1e-5 * (1.0 + x);
            auto f = [&](double t) {
                auto ys = xs;
                ys[static_cast<std::size_t>(i)] = t;
                return m.evaluate(ys);
            };
            double fd = oracle::central_diff(f, x, h);
            CHECK(closed > 0.0);
            CHECK(closed < 1.0);
            CHECK(std::fabs(closed - fd) <= 1e-5);
        }
        CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));

        SquareMatrix hess = m.diag_second_partials(x);
        double h = 1e-3 * (1.0 + x);
        for (int i = 0; i < n; ++i)
            for (int j = i; j < n; ++j) {
                double fd;
                if (i == j) {
                    auto f = [&](double t) {
                        auto ys = xs;
                        ys[static_cast<std::size_t>(i)] = t;
                        return m.evaluate(ys);
                    };
                    fd = oracle::second_diff(f, x, h);
                } else {
                    auto f = [&](double s, double t) {
                        auto ys = xs;
                        ys[static_cast<std::size_t>(i)] = s;
                        ys[static_cast<std::size_t>(j)] = t;
                        return m.evaluate(ys);
                    };
                    fd = (f(x + h, x + h) - f(x + h, x - h) - f(x - h, x + h) +
                          f(x - h, x - h)) /
                         (4 * h * h);
                }
                CHECK(std::fabs(hess.at(i, j) - fd) <= 1e-4);
                CHECK(hess.at(i, j) == doctest::Approx(hess.at(j, i)).scale(1.0));
            }
    }
}

TEST_CASE("strict mean bounds over random specs and inputs") {
    oracle::Rng rng(0x600dcafe);
    long evaluations = 0;
    for (int spec = 0; spec < 25; ++spec) {
        int n = 2 + rng.index(4);
        MeanSpec m = random_mean(rng, n);
        for (int trial = 0; trial < 400; ++trial) {
            std::vector<double> xs(static_cast<std::size_t>(n));
            for (double& v : xs) v = rng.uniform(0.6, 2.4);
            double mn = xs[0], mx = xs[0];
            for (double v : xs) {
                mn = std::min(mn, v);
                mx = std::max(mx, v);
            }
            double mean = m.evaluate(xs);
            ++evaluations;
            REQUIRE(mean >= mn - 1e-12);
            REQUIRE(mean <= mx + 1e-12);
            if (mx - mn > 1e-6) {
                REQUIRE(mean > mn);
                REQUIRE(mean < mx);
            }
        }
    }
    CHECK(evaluations == 10000);
}

TEST_CASE("reflexivity to 1e-12 on constant vectors") {
    oracle::Rng rng(0x12345);
    for (int spec = 0; spec < 20; ++spec) {
        MeanSpec m = random_mean(rng, 2 + rng.index(3));
        double c = rng.uniform(0.7, 2.2);
        std::vector<double> xs(static_cast<std::size_t>(m.n()), c);
        CHECK(std::fabs(m.evaluate(xs) - c) <= 1e-12 * (1.0 + std::fabs(c)));
    }
}
