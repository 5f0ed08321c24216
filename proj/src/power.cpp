#include "meancomp/power.hpp"

#include <cmath>
#include <cstdio>
#include <string>

namespace meancomp {

namespace {

std::string fmt(double v) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return buf;
}

Verdict closed(Status s, bool strict, const std::string& detail) {
    Verdict v;
    v.status = s;
    v.strict = strict;
    v.certification = Certification::closed_form;
    v.detail = detail;
    if (s == Status::fails) {
        CheckWitness w;
        w.x = 1.0;  // the closed forms fail at every point; record a canonical one
        v.witness = w;
    }
    return v;
}

}  // namespace

std::optional<PowerRelation> derive_power_relation(const PowerParams& params) {
    const std::size_t n = params.lambda.size();
    if (n < 2 || params.alpha.size() != n || params.mu.size() != n || params.beta.size() != n)
        throw InvalidArgument("power parameters need four vectors of equal length n >= 2");
    for (std::size_t i = 0; i < n; ++i)
        if (!(params.lambda[i] > 0.0) || !(params.mu[i] > 0.0))
            throw InvalidArgument("lambda and mu coefficients must be positive");

    const double gamma = params.mu[0] / params.lambda[0];
    const double delta = params.beta[0] - params.alpha[0];
    for (std::size_t i = 1; i < n; ++i) {
        double gi = params.mu[i] / params.lambda[i];
        double di = params.beta[i] - params.alpha[i];
        if (std::fabs(gi - gamma) > 1e-12 * (1.0 + std::fabs(gamma))) return std::nullopt;
        if (std::fabs(di - delta) > 1e-12 * (1.0 + std::fabs(delta))) return std::nullopt;
    }
    return PowerRelation{gamma, delta};
}

double power_divided_difference(double r, double s, double t) {
    if (!(t > 0.0)) throw InvalidArgument("power_divided_difference needs t > 0");
    if (r == s) return std::pow(t, r) * std::log(t);
    return (std::pow(t, r) - std::pow(t, s)) / (r - s);
}

PowerClassification classify_power(const PowerParams& params) {
    PowerClassification out;
    ComparisonReport& r = out.report;

    auto relation = derive_power_relation(params);
    out.relation = relation;
    out.proportional = relation.has_value();

    if (!relation) {
        r.first_order = closed(Status::fails, false,
                               "no constants gamma, delta with mu_i = gamma lambda_i and "
                               "beta_i = alpha_i + delta exist; the weight ratios differ");
        r.first_order.witness->index = 0;
        r.ratio_monotone = closed(Status::inconclusive, false,
                                  "not evaluated: weight ratios already differ");
        r.ratio_monotone.witness.reset();
        r.hessian_definite = r.ratio_monotone;
        r.gsc = r.ratio_monotone;
        r.gsc_plus = r.ratio_monotone;
        r.locally_smaller = {Conclusion::refuted, rules::power_local, Certification::closed_form};
        r.globally_smaller = {Conclusion::refuted,
                              std::string(rules::local_refutes_global) + " — " +
                                  rules::power_local,
                              Certification::closed_form};
        return out;
    }

    const double a = params.a;
    const double b = params.b;
    const double delta = relation->delta;
    const double edge = b + 2.0 * delta;

    // x^{2 delta} |g'|/|f'| is proportional to x^{b - a + 2 delta}
    const double slope = b - a + 2.0 * delta;

    r.first_order = closed(Status::holds, false,
                           "mu_i = gamma lambda_i, beta_i = alpha_i + delta with gamma = " +
                               fmt(relation->gamma) + ", delta = " + fmt(delta) +
                               "; weight ratios coincide identically");

    if (slope > 0.0) {
        r.ratio_monotone = closed(Status::holds, true,
                                  "comparison ratio proportional to x^" + fmt(slope) +
                                      ", strictly increasing");
        r.hessian_definite = closed(Status::holds, true,
                                    "chi = " + fmt(slope) + "/x > 0 on the positive domain");
    } else if (slope == 0.0) {
        r.ratio_monotone =
            closed(Status::holds, false, "comparison ratio constant (exponent 0)");
        r.hessian_definite = closed(Status::holds, false, "chi = 0: semidefinite only");
    } else {
        r.ratio_monotone = closed(Status::fails, false,
                                  "comparison ratio proportional to x^" + fmt(slope) +
                                      ", strictly decreasing");
        r.ratio_monotone.witness->value = slope;
        r.hessian_definite = closed(Status::fails, false,
                                    "chi = " + fmt(slope) + "/x < 0 on the positive domain");
        r.hessian_definite.witness->value = slope;
    }

    // Exponent bounds for the global rule:
    //   min(a,0) <= delta + min(b,0)  and  max(a,0) <= delta + max(b,0).
    const bool global_rule = std::min(a, 0.0) <= delta + std::min(b, 0.0) &&
                             std::max(a, 0.0) <= delta + std::max(b, 0.0);
    if (global_rule) {
        r.gsc = closed(Status::holds, false,
                       "min(a,0) <= delta + min(b,0) and max(a,0) <= delta + max(b,0): the "
                       "tangent inequality holds on the whole positive axis");
    } else {
        r.gsc = closed(Status::inconclusive, false,
                       "the exponent bounds min(a,0) <= delta + min(b,0), max(a,0) <= delta + "
                       "max(b,0) do not hold; the sufficient rule is silent");
    }

    const bool r0_increasing = delta >= 0.0;
    const bool deriv_ratio_increasing = a <= b;
    if (r0_increasing && deriv_ratio_increasing) {
        r.gsc_plus = closed(Status::holds, delta > 0.0 && a < b,
                            "q0/p0 = gamma x^delta and |g'|/|f'| ~ x^(b-a) are both increasing");
    } else {
        r.gsc_plus =
            closed(Status::fails, false,
                   r0_increasing ? "|g'|/|f'| ~ x^(b-a) is decreasing (a > b)"
                                 : "q0/p0 = gamma x^delta is decreasing (delta < 0)");
        r.gsc_plus.witness->value = r0_increasing ? a - b : delta;
    }

    // identical means: same generator exponent and identical weight ratios
    // (the latter is automatic under the gamma/delta relation)
    const bool identical = a == b && delta == 0.0;

    ConclusionEntry local;
    if (identical) {
        local = {Conclusion::implied, rules::identical, Certification::closed_form};
    } else if (a < edge) {
        local = {Conclusion::implied, rules::power_local, Certification::closed_form};
    } else if (a > edge) {
        local = {Conclusion::refuted, rules::power_local, Certification::closed_form};
    } else {
        local = {Conclusion::unknown,
                 "boundary case a = b + 2 delta: the power-family rule is silent",
                 Certification::closed_form};
    }

    ConclusionEntry global;
    if (identical) {
        global = {Conclusion::implied, rules::identical, Certification::closed_form};
    } else if (global_rule) {
        global = {Conclusion::implied, rules::power_global, Certification::closed_form};
    } else if (a > edge) {
        global = {Conclusion::refuted,
                  std::string(rules::local_refutes_global) + " — " + rules::power_local,
                  Certification::closed_form};
    } else {
        global = {Conclusion::unknown,
                  "the power-family exponent bounds are not met and no refutation applies",
                  Certification::closed_form};
    }

    r.locally_smaller = local;
    r.globally_smaller = global;
    return out;
}

MeanSpec make_power_mean(double exponent, std::span<const double> lambda,
                         std::span<const double> alpha, const Interval& domain) {
    return MeanSpec::create(GeneratorSpec::power(exponent, domain),
                            WeightFamily::power(lambda, alpha, domain));
}

}  // namespace meancomp
