#include <doctest.h>

#include <cmath>
#include <vector>

#include "meancomp/compare.hpp"
#include "support/oracles.hpp"

using namespace meancomp;

namespace {

const Interval kPos{0.0, std::numeric_limits<double>::infinity()};
const Interval kBand{0.5, 2.5};

GeneratorSpec gen(const char* dsl, const Interval& domain = kPos) {
    return GeneratorSpec::create(parse_expr(dsl), domain);
}

WeightFamily weights(std::vector<const char*> dsl, const Interval& domain = kPos) {
    std::vector<ExprPtr> ws;
    for (const char* s : dsl) ws.push_back(parse_expr(s));
    return WeightFamily::create(std::move(ws), domain);
}

MeanSpec mean(const char* g, std::vector<const char*> w, const Interval& domain = kPos) {
    return MeanSpec::create(gen(g, domain), weights(std::move(w), domain));
}

CheckOptions quick() {
    CheckOptions o;
    o.samples = 256;
    o.pair_resolution = 96;
    return o;
}

struct NamedPair {
    const char* name;
    MeanSpec smaller;
    MeanSpec larger;
};

// shared battery of comparison pairs used by several invariants below
std::vector<NamedPair> battery() {
    std::vector<NamedPair> out;
    out.push_back({"gm-vs-am", mean("log(x)", {"1", "1"}), mean("x", {"1", "1"})});
    out.push_back({"am-vs-gm", mean("x", {"1", "1"}), mean("log(x)", {"1", "1"})});
    out.push_back({"am-vs-qm", mean("x", {"1", "1"}), mean("x^2", {"1", "1"})});
    out.push_back({"qm-vs-am", mean("x^2", {"1", "1"}), mean("x", {"1", "1"})});
    out.push_back({"hm-vs-gm", mean("x^-1", {"1", "1"}), mean("log(x)", {"1", "1"})});
    out.push_back({"same-gen-up", mean("x", {"1", "1"}), mean("x", {"x", "x"})});
    out.push_back({"same-gen-down", mean("x", {"x", "x"}), mean("x", {"1", "1"})});
    out.push_back({"identical", mean("x^2", {"x", "x"}), mean("x^2", {"x", "x"})});
    out.push_back({"am-vs-exp", mean("x", {"1", "1"}, kBand), mean("exp(x)", {"1", "1"}, kBand)});
    out.push_back({"weighted-pair", mean("x", {"1", "x"}, kBand),
                   mean("x^2", {"2", "2*x"}, kBand)});
    return out;
}

}  // namespace

TEST_CASE("check_first_order: documented examples") {
    CheckOptions o = quick();
    // identical families
    CHECK(check_first_order(mean("x", {"1", "1"}), mean("x^2", {"1", "1"}), o).holds());
    // proportional weights have equal ratios
    CHECK(check_first_order(mean("x", {"x", "x"}), mean("x^2", {"2*x", "2*x"}), o).holds());

    Verdict v = check_first_order(mean("x", {"1", "x"}), mean("x", {"1", "x^2"}), o);
    REQUIRE(v.fails());
    REQUIRE(v.witness.has_value());
    CHECK(v.witness->index.has_value());
    // hand value at x = 2: |1/(1+2) - 1/(1+4)| = 2/15
    MeanSpec p = mean("x", {"1", "x"});
    MeanSpec q = mean("x", {"1", "x^2"});
    double d0 = std::fabs(p.diag_first_partial(0, 2.0) - q.diag_first_partial(0, 2.0));
    CHECK(d0 == doctest::Approx(2.0 / 15).epsilon(1e-12));
}

TEST_CASE("check_ratio_monotone: documented examples") {
    CheckOptions o = quick();
    Verdict up = check_ratio_monotone(mean("x", {"1", "1"}), mean("x^2", {"1", "1"}), o);
    CHECK(up.holds());
    CHECK(up.strict);  // chi = 1/x > 0

    Verdict flat = check_ratio_monotone(mean("x", {"1", "1"}), mean("x", {"1", "1"}), o);
    CHECK(flat.holds());
    CHECK_FALSE(flat.strict);  // chi == 0

    Verdict down = check_ratio_monotone(mean("x^2", {"1", "1"}), mean("x", {"1", "1"}), o);
    REQUIRE(down.fails());
    CHECK(down.witness.has_value());
    CHECK(down.witness->value < 0.0);
}

TEST_CASE("comparison discriminant has its closed form in the power case") {
    // f = x^a, g = x^b, q = x^delta * p  =>  chi = (b - a + 2 delta)/x
    MeanSpec m1 = mean("x^2", {"1", "1"});
    MeanSpec m2 = mean("x^3", {"x", "x"});  // delta = 1
    for (double x : {0.5, 1.0, 2.0, 7.0})
        CHECK(comparison_discriminant(m1, m2, x) ==
              doctest::Approx((3.0 - 2.0 + 2.0) / x).epsilon(1e-12));
}

TEST_CASE("hessian_minor_dets: zero chi, the k = 1 formula, and the LU oracle") {
    CheckOptions o = quick();

    // f = g, p = q: chi = 0, all minors vanish
    MeanSpec id1 = mean("x", {"x", "1"});
    MeanSpec id2 = mean("x", {"x", "1"});
    for (double det : hessian_minor_dets(id1, id2, 1.3, 1, o))
        CHECK(det == doctest::Approx(0.0).scale(1.0));

    // k = 1: det = chi * p1 (p0 - p1) / p0^2
    MeanSpec a = mean("x", {"x", "x^2", "1"});
    MeanSpec b = mean("x^2", {"x", "x^2", "1"});
    double x = 1.7;
    double p1 = a.weights().weight(0, x);
    double p0 = a.weights().sum(x);
    double chi = comparison_discriminant(a, b, x);
    auto dets = hessian_minor_dets(a, b, x, 2, o);
    CHECK(dets[0] == doctest::Approx(chi * p1 * (p0 - p1) / (p0 * p0)).epsilon(1e-12));

    // random n = 4 pairs against the cofactor-expansion oracle
    oracle::Rng rng(0x41424344);
    for (int trial = 0; trial < 25; ++trial) {
        double bexp = rng.uniform(-2.0, 3.0);
        if (std::fabs(bexp - 1.0) < 0.05) continue;  // keep chi away from 0 scale
        std::vector<double> lam, al;
        for (int i = 0; i < 4; ++i) {
            lam.push_back(rng.uniform(0.3, 3.0));
            al.push_back(rng.uniform(-1.5, 1.5));
        }
        WeightFamily wp = WeightFamily::power(lam, al, kPos);
        WeightFamily wq = WeightFamily::power(lam, al, kPos);
        MeanSpec m1 = MeanSpec::create(gen("x"), std::move(wp));
        MeanSpec m2 = MeanSpec::create(GeneratorSpec::power(bexp, kPos), std::move(wq));
        double xx = rng.uniform(0.5, 2.0);
        auto lib = hessian_minor_dets(m1, m2, xx, 3, o);
        double cchi = comparison_discriminant(m1, m2, xx);
        double pp0 = m1.weights().sum(xx);
        std::vector<double> pv;
        for (int i = 0; i < 4; ++i) pv.push_back(m1.weights().weight(i, xx));
        for (int k = 1; k <= 3; ++k) {
            std::vector<double> mat(static_cast<std::size_t>(k) * k);
            for (int i = 0; i < k; ++i)
                for (int j = 0; j < k; ++j)
                    mat[static_cast<std::size_t>(i) * k + j] =
                        pv[static_cast<std::size_t>(i)] *
                        ((i == j ? pp0 : 0.0) - pv[static_cast<std::size_t>(j)]) / (pp0 * pp0) *
                        cchi;
            double want = oracle::cofactor_det(mat, k);
            double scale = std::max({std::fabs(want), std::fabs(lib[static_cast<std::size_t>(k - 1)]), 1e-300});
            CHECK(std::fabs(lib[static_cast<std::size_t>(k - 1)] - want) <= 1e-10 * scale);
        }
    }
}

TEST_CASE("hessian_minor_dets refuses when the first-order condition fails") {
    CheckOptions o = quick();
    MeanSpec p = mean("x", {"1", "x"});
    MeanSpec q = mean("x", {"1", "x^2"});
    CHECK_THROWS_AS(hessian_minor_dets(p, q, 2.0, 1, o), InvalidArgument);
}

TEST_CASE("check_gsc: documented examples") {
    CheckOptions o = quick();
    // identical sides hold with equality
    CHECK(check_gsc(mean("x", {"x", "1"}), mean("x", {"x", "1"}), o).holds());

    // f = log vs g = x reduces to log t <= t - 1
    CHECK(check_gsc(mean("log(x)", {"1", "1"}), mean("x", {"1", "1"}), o).holds());

    // reversed: fails; the documented witness value at (2, 1)
    Verdict v = check_gsc(mean("x", {"1", "1"}), mean("log(x)", {"1", "1"}), o);
    REQUIRE(v.fails());
    REQUIRE(v.witness.has_value());
    CHECK(v.witness->y.has_value());
    CHECK(v.witness->value < -1e-3);
    // D(2,1) = log 2 - 1
    MeanSpec sm = mean("x", {"1", "1"});
    MeanSpec lg = mean("log(x)", {"1", "1"});
    auto D = [&](double x, double y) {
        const auto& f = sm.generator();
        const auto& g = lg.generator();
        double lhs = sm.weights().sum(x) * (f.value(x) - f.value(y)) /
                     (sm.weights().sum(y) * f.deriv(y));
        double rhs = lg.weights().sum(x) * (g.value(x) - g.value(y)) /
                     (lg.weights().sum(y) * g.deriv(y));
        return rhs - lhs;
    };
    CHECK(D(2.0, 1.0) == doctest::Approx(std::log(2.0) - 1.0).epsilon(1e-12));
}

TEST_CASE("check_gsc_plus: documented examples") {
    CheckOptions o = quick();
    Verdict up = check_gsc_plus(mean("x", {"1", "1"}), mean("x^2", {"1", "1"}), o);
    CHECK(up.holds());  // q0/p0 constant, |g'|/|f'| = 2x increasing

    CHECK(check_gsc_plus(mean("x", {"x", "1"}), mean("x", {"x", "1"}), o).holds());

    Verdict down = check_gsc_plus(mean("x^2", {"1", "1"}), mean("x", {"1", "1"}), o);
    REQUIRE(down.fails());
    CHECK(down.detail.find("|g'|/|f'|") != std::string::npos);
}

TEST_CASE("check_gsc_power: documented examples") {
    CheckOptions o = quick();
    CHECK(check_gsc_power(gen("x"), gen("x"), 0.0, o).holds());            // f = g, delta = 0
    CHECK(check_gsc_power(gen("log(x)"), gen("x"), 0.0, o).holds());       // log t <= t - 1
    CHECK(check_gsc_power(gen("x"), gen("x"), 1.0, o).holds());            // (x-y)(x/y - 1) >= 0
    CHECK(check_gsc_power(gen("x"), gen("log(x)"), 0.0, o).fails());
}

TEST_CASE("shared-weight battery: documented examples and consistency") {
    CheckOptions o = quick();
    WeightFamily unit = weights({"1", "1"});

    SharedWeightBattery all_hold = check_shared_weight_battery(gen("x"), gen("x^2"), unit, o);
    CHECK(all_hold.consistent);
    CHECK(all_hold.all_hold());

    SharedWeightBattery equality = check_shared_weight_battery(gen("x"), gen("x"), unit, o);
    CHECK(equality.consistent);
    CHECK(equality.all_hold());
    CHECK_FALSE(equality.ratio_increasing.strict);

    SharedWeightBattery all_fail = check_shared_weight_battery(gen("x^2"), gen("x"), unit, o);
    CHECK(all_fail.consistent);
    CHECK(all_fail.all_fail());

    // decreasing g: arithmetic vs harmonic-type generator (g' < 0)
    SharedWeightBattery dec = check_shared_weight_battery(gen("x^-1"), gen("log(x)"), unit, o);
    CHECK(dec.consistent);
    CHECK(dec.all_hold());
}

TEST_CASE("check_shared_generator: documented examples") {
    CheckOptions o = quick();
    GeneratorSpec f = gen("x");
    CHECK(check_shared_generator(f, weights({"x", "1"}), weights({"x", "1"}), o).holds());
    CHECK(check_shared_generator(f, weights({"1", "1"}), weights({"x", "x"}), o).holds());
    Verdict down = check_shared_generator(f, weights({"x", "x"}), weights({"1", "1"}), o);
    REQUIRE(down.fails());
    CHECK(down.witness.has_value());
}

TEST_CASE("compare_means: conclusions follow the implication table") {
    CheckOptions o = quick();

    ComparisonReport up = compare_means(mean("x", {"1", "1"}), mean("x^2", {"1", "1"}), o);
    CHECK(up.locally_smaller.status == Conclusion::implied);
    CHECK(up.globally_smaller.status == Conclusion::implied);

    ComparisonReport down = compare_means(mean("x^2", {"1", "1"}), mean("x", {"1", "1"}), o);
    CHECK(down.locally_smaller.status == Conclusion::refuted);
    CHECK(down.globally_smaller.status == Conclusion::refuted);
    CHECK(down.locally_smaller.justified_by == rules::ratio_monotone_necessary);

    ComparisonReport same = compare_means(mean("x^2", {"x", "x"}), mean("x^2", {"x", "x"}), o);
    CHECK(same.locally_smaller.status == Conclusion::implied);
    CHECK(same.locally_smaller.justified_by == rules::identical);
    CHECK(same.locally_smaller.certification == Certification::closed_form);

    ComparisonReport ratio_mismatch =
        compare_means(mean("x", {"1", "x"}), mean("x", {"1", "x^2"}), o);
    CHECK(ratio_mismatch.locally_smaller.status == Conclusion::refuted);
    CHECK(ratio_mismatch.locally_smaller.justified_by == rules::first_order_necessary);
    CHECK(ratio_mismatch.hessian_definite.status == Status::inconclusive);

    // shared-generator route: non-strict ratio still decides (equivalence)
    ComparisonReport thm4 = compare_means(mean("x", {"1", "1"}), mean("x", {"x", "x"}), o);
    CHECK(thm4.globally_smaller.status == Conclusion::implied);
    CHECK(thm4.shared_generator.has_value());
}

TEST_CASE("invariant: whenever gsc holds, the comparison ratio is monotone") {
    CheckOptions o = quick();
    int holds = 0;
    for (const NamedPair& p : battery()) {
        Verdict gsc = check_gsc(p.smaller, p.larger, o);
        if (!gsc.holds()) continue;
        ++holds;
        Verdict ratio = check_ratio_monotone(p.smaller, p.larger, o);
        CAPTURE(p.name);
        CHECK_FALSE(ratio.fails());
    }
    CHECK(holds >= 4);  // the battery contains several passing pairs
}

TEST_CASE("invariant: local sufficiency conclusions rest on the stated verdicts") {
    CheckOptions o = quick();
    for (const NamedPair& p : battery()) {
        ComparisonReport r = compare_means(p.smaller, p.larger, o);
        CAPTURE(p.name);
        if (r.locally_smaller.status == Conclusion::implied &&
            r.locally_smaller.justified_by == rules::local_sufficient) {
            CHECK(r.first_order.holds());
            CHECK(r.ratio_monotone.holds());
            CHECK(r.ratio_monotone.strict);
        }
        if (r.first_order.fails())
            CHECK(r.locally_smaller.status == Conclusion::refuted);
        // a Fails verdict always carries its witness
        for (const Verdict* v : {&r.first_order, &r.ratio_monotone, &r.gsc, &r.gsc_plus})
            if (v->fails()) CHECK(v->witness.has_value());
    }
}

TEST_CASE("verdict certification labels are sampled for grid checks") {
    CheckOptions o = quick();
    Verdict v = check_first_order(mean("x", {"1", "1"}), mean("x^2", {"1", "1"}), o);
    CHECK(v.certification == Certification::sampled);
    CHECK(v.samples > 0);
    CHECK(v.tolerance == o.tol_equality);
}
