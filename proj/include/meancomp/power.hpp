#pragma once

#include <optional>
#include <vector>

#include "meancomp/compare.hpp"
#include "meancomp/mean.hpp"

namespace meancomp {

// Parameters of a pair of power-family means on a positive interval:
// generators x^a / x^b (log when the exponent is 0) and weights
// p_i = lambda_i x^alpha_i, q_i = mu_i x^beta_i.
struct PowerParams {
    double a = 1.0;
    double b = 1.0;
    std::vector<double> lambda;
    std::vector<double> alpha;
    std::vector<double> mu;
    std::vector<double> beta;

    int n() const { return static_cast<int>(lambda.size()); }
};

// gamma/delta such that mu_i = gamma * lambda_i and beta_i = alpha_i + delta
// for every i, when such constants exist.
struct PowerRelation {
    double gamma = 1.0;
    double delta = 0.0;
};

std::optional<PowerRelation> derive_power_relation(const PowerParams& params);

// Divided difference of t -> t^r at exponents r, s:
//   (t^r - t^s)/(r - s)  for r != s,   t^r log t  for r == s.
// Pointwise monotone in (min, max) of the exponent pair.
double power_divided_difference(double r, double s, double t);

struct PowerClassification {
    bool proportional = false;  // the gamma/delta relation exists
    std::optional<PowerRelation> relation;
    ComparisonReport report;  // closed-form verdicts and conclusions
};

// Closed-form comparison of two power-family means:
//   locally smaller  iff-style rule on a vs b + 2 delta (strict: implied;
//   reversed: refuted; boundary: unknown unless the means are identical),
//   globally smaller when min(a,0) <= delta + min(b,0) and
//   max(a,0) <= delta + max(b,0).
PowerClassification classify_power(const PowerParams& params);

// Convenience constructor for the corresponding MeanSpec.
MeanSpec make_power_mean(double exponent, std::span<const double> lambda,
                         std::span<const double> alpha, const Interval& domain);

}  // namespace meancomp
