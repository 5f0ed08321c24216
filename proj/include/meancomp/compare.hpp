#pragma once

#include <optional>
#include <string>
#include <vector>

#include "meancomp/mean.hpp"

namespace meancomp {

enum class Status { holds, fails, inconclusive };
enum class Certification { closed_form, sampled, witness };

// A point (or pair, or indexed point) at which a condition fails or attains
// near-equality; `value` is the offending quantity.
struct CheckWitness {
    double x = 0.0;
    std::optional<double> y;
    std::optional<int> index;  // 0-based weight index
    double value = 0.0;
};

struct Verdict {
    Status status = Status::inconclusive;
    bool strict = false;  // set when the condition holds with strict margin
    std::optional<CheckWitness> witness;
    Certification certification = Certification::sampled;
    long samples = 0;
    double tolerance = 0.0;
    std::string detail;

    bool holds() const { return status == Status::holds; }
    bool fails() const { return status == Status::fails; }
};

struct CheckOptions {
    int samples = 512;          // 1-D sample grid size
    int pair_resolution = 256;  // per-axis resolution of two-variable grids
    double tol_equality = 1e-9;
    double tol_monotone = 1e-9;  // slack on logarithmic derivatives
    double tol_pair = 1e-9;      // slack on two-variable inequalities
    int refine_starts = 8;       // local minimization restarts after grid scans
    int refine_iterations = 200;
};

// The comparison discriminant
//   chi = 2 r0'/r0 + g''/g' - f''/f',  r0 = q0/p0,
// the logarithmic derivative of q0^2 |g'| / (p0^2 |f'|).
double comparison_discriminant(const MeanSpec& smaller, const MeanSpec& larger, double x);

// First-order necessary condition: p_i/p_0 == q_i/q_0 for every i.
Verdict check_first_order(const MeanSpec& smaller, const MeanSpec& larger,
                          const CheckOptions& opts = {});

// Second-order necessary condition: q0^2|g'| / (p0^2|f'|) increasing,
// tested through the sign of chi on the sample grid. `strict` is set when
// chi stays above +tol everywhere (the local sufficiency branch).
Verdict check_ratio_monotone(const MeanSpec& smaller, const MeanSpec& larger,
                             const CheckOptions& opts = {});

// Closed-form leading principal minor of the diagonal Hessian difference:
//   det_k = chi^k * p_1...p_k * (p_0 - (p_1+...+p_k)) / p_0^(k+1).
double hessian_minor_closed_form(std::span<const double> p, double p0, double chi, int k);

// Leading principal minors (k = 1..kmax) of (d_i d_j (A_larger - A_smaller))
// on the diagonal at x, computed both in closed form and by LU determinant of
// the entry matrix p_i (delta_ij p_0 - p_j)/p_0^2 * chi. The routes must
// agree to 1e-10 relative or an InternalError is thrown. Requires the
// first-order condition at x (checked; refused otherwise).
std::vector<double> hessian_minor_dets(const MeanSpec& smaller, const MeanSpec& larger, double x,
                                       int kmax, const CheckOptions& opts = {});

// Definiteness of the diagonal Hessian difference over the sample grid:
// holds(strict) = positive definite, holds = positive semidefinite only,
// fails = some diagonal direction is negative. Runs the dual-route minor
// check on a thinned subset of the grid.
Verdict check_hessian_definite(const MeanSpec& smaller, const MeanSpec& larger,
                               const CheckOptions& opts = {});

// Global sufficient inequality
//   p0(x)(f(x)-f(y)) / (p0(y) f'(y)) <= q0(x)(g(x)-g(y)) / (q0(y) g'(y))
// on a pair grid plus local minimization of RHS - LHS.
Verdict check_gsc(const MeanSpec& smaller, const MeanSpec& larger, const CheckOptions& opts = {});

// Factorwise sufficient condition: q0/p0 and |g'|/|f'| both increasing.
Verdict check_gsc_plus(const MeanSpec& smaller, const MeanSpec& larger,
                       const CheckOptions& opts = {});

// Power-weighted tangent inequality
//   (f(x)-f(y))/f'(y) <= x^delta (g(x)-g(y)) / (y^delta g'(y)).
// Applies when both weight families are power families with common exponent
// shift delta; positive domains only.
Verdict check_gsc_power(const GeneratorSpec& f, const GeneratorSpec& g, double delta,
                        const CheckOptions& opts = {});

// The four pairwise-equivalent formulations for means sharing one weight
// family: |g'/f'| increasing; f''/f' <= g''/g'; convexity (concavity) of
// g o f^{-1}; and the two-variable tangent inequality. Each is evaluated
// independently; `consistent` is false when they disagree.
struct SharedWeightBattery {
    Verdict ratio_increasing;    // |g'/f'| increasing, by difference quotients
    Verdict curvature_order;     // f''/f' <= g''/g' pointwise
    Verdict inverse_convexity;   // sign of (g o f^{-1})'' via its closed form
    Verdict tangent_inequality;  // pair-grid inequality
    bool consistent = true;

    bool all_hold() const {
        return ratio_increasing.holds() && curvature_order.holds() && inverse_convexity.holds() &&
               tangent_inequality.holds();
    }
    bool all_fail() const {
        return ratio_increasing.fails() && curvature_order.fails() && inverse_convexity.fails() &&
               tangent_inequality.fails();
    }
};

SharedWeightBattery check_shared_weight_battery(const GeneratorSpec& f, const GeneratorSpec& g,
                                                const WeightFamily& p,
                                                const CheckOptions& opts = {});

// Means sharing one generator: the comparison holds (locally and globally,
// equivalently) iff the weight ratios agree and q0/p0 is increasing.
Verdict check_shared_generator(const GeneratorSpec& f, const WeightFamily& p,
                               const WeightFamily& q, const CheckOptions& opts = {});

enum class Conclusion { implied, refuted, unknown };

struct ConclusionEntry {
    Conclusion status = Conclusion::unknown;
    std::string justified_by;
    Certification certification = Certification::sampled;
};

struct ComparisonReport {
    Verdict first_order;
    Verdict ratio_monotone;
    Verdict hessian_definite;
    Verdict gsc;
    Verdict gsc_plus;
    std::optional<SharedWeightBattery> shared_weights;  // present when p == q structurally
    std::optional<Verdict> shared_generator;            // present when f == g structurally
    ConclusionEntry locally_smaller;
    ConclusionEntry globally_smaller;
};

// Runs the sampled battery and derives conclusions from the implication
// table (documented in the report schema). Search evidence and power-family
// closed forms are merged in by the runner, not here.
ComparisonReport compare_means(const MeanSpec& smaller, const MeanSpec& larger,
                               const CheckOptions& opts = {});

// Conclusion rule names used in reports.
namespace rules {
inline constexpr const char* identical = "identical means";
inline constexpr const char* first_order_necessary =
    "first-order weight-ratio condition (necessary)";
inline constexpr const char* ratio_monotone_necessary =
    "comparison-ratio monotonicity (second-order necessary)";
inline constexpr const char* local_sufficient =
    "first-order condition with strictly increasing comparison ratio";
inline constexpr const char* global_sufficient = "global sufficient inequality";
inline constexpr const char* global_sufficient_split =
    "factorwise monotonicity (weight-sum ratio and derivative ratio)";
inline constexpr const char* shared_weights = "shared-weight equivalence battery";
inline constexpr const char* shared_generator = "shared-generator equivalence";
inline constexpr const char* power_local = "power-family local exponent rule";
inline constexpr const char* power_global = "power-family global exponent rule";
inline constexpr const char* power_weighted_gsc = "power-weighted tangent inequality";
inline constexpr const char* global_implies_local = "implied by global comparison";
inline constexpr const char* local_refutes_global = "refuted through local comparison";
inline constexpr const char* counterexample = "explicit counterexample point";
}  // namespace rules

const char* to_string(Status s);
const char* to_string(Conclusion c);
const char* to_string(Certification c);

}  // namespace meancomp
