#include "meancomp/search.hpp"

#include <algorithm>
#include <cmath>

#include "meancomp/errors.hpp"
#include "meancomp/numeric.hpp"

namespace meancomp {

void SearchConfig::validate() const {
    if (resolution < 2) throw InvalidArgument("search resolution must be >= 2");
    if (multistarts < 1) throw InvalidArgument("multistarts must be >= 1");
    if (anchors < 1) throw InvalidArgument("anchors must be >= 1");
    if (radii.empty()) throw InvalidArgument("the radius schedule must not be empty");
    double prev = std::numeric_limits<double>::infinity();
    for (double r : radii) {
        if (!(r > 0.0) || !(r < prev))
            throw InvalidArgument("radii must be positive and strictly decreasing");
        prev = r;
    }
}

namespace {

constexpr long kSweepCap = 65536;

struct Box {
    std::vector<double> lo, hi;

    int dim() const { return static_cast<int>(lo.size()); }
    void clamp(std::vector<double>& p) const {
        for (std::size_t i = 0; i < p.size(); ++i) p[i] = std::clamp(p[i], lo[i], hi[i]);
    }
};

class GapObjective {
public:
    GapObjective(const MeanSpec& smaller, const MeanSpec& larger)
        : smaller_(smaller), larger_(larger) {}

    // Returns -inf (and counts a skip) when a probe point fails to evaluate.
    double operator()(std::span<const double> xs) {
        ++evaluations_;
        try {
            return smaller_.evaluate(xs) - larger_.evaluate(xs);
        } catch (const Error&) {
            ++skipped_;
            return -std::numeric_limits<double>::infinity();
        }
    }

    long evaluations() const { return evaluations_; }
    long skipped() const { return skipped_; }

private:
    const MeanSpec& smaller_;
    const MeanSpec& larger_;
    long evaluations_ = 0;
    long skipped_ = 0;
};

// Coarse sweep + multistart simplex ascent inside an axis-aligned box.
// Deterministic for a fixed seed.
void search_box(GapObjective& objective, const Box& box, int resolution, int multistarts,
                int max_iterations, std::uint64_t seed, double& best_gap,
                std::vector<double>& best_point) {
    const int dim = box.dim();

    double lattice_total = 1.0;
    for (int i = 0; i < dim; ++i) lattice_total *= resolution;

    std::vector<std::vector<double>> probes;
    if (lattice_total <= static_cast<double>(kSweepCap)) {
        // full lattice, cell centers included via endpoints
        std::vector<int> idx(static_cast<std::size_t>(dim), 0);
        std::vector<double> p(static_cast<std::size_t>(dim));
        for (;;) {
            for (int i = 0; i < dim; ++i) {
                std::size_t ii = static_cast<std::size_t>(i);
                p[ii] = box.lo[ii] +
                        (box.hi[ii] - box.lo[ii]) * idx[ii] / std::max(1, resolution - 1);
            }
            probes.push_back(p);
            int carry = 0;
            while (carry < dim && ++idx[static_cast<std::size_t>(carry)] == resolution) {
                idx[static_cast<std::size_t>(carry)] = 0;
                ++carry;
            }
            if (carry == dim) break;
        }
    } else {
        std::uint64_t state = seed;
        probes.reserve(kSweepCap);
        for (long k = 0; k < kSweepCap; ++k) {
            std::vector<double> p(static_cast<std::size_t>(dim));
            for (int i = 0; i < dim; ++i) {
                std::size_t ii = static_cast<std::size_t>(i);
                double u = (splitmix64(state) >> 11) * 0x1.0p-53;
                p[ii] = box.lo[ii] + (box.hi[ii] - box.lo[ii]) * u;
            }
            probes.push_back(std::move(p));
        }
    }

    std::vector<std::pair<double, std::size_t>> ranked;
    ranked.reserve(probes.size());
    for (std::size_t k = 0; k < probes.size(); ++k) {
        double v = objective(probes[k]);
        if (v > best_gap) {
            best_gap = v;
            best_point = probes[k];
        }
        if (std::isfinite(v)) ranked.emplace_back(v, k);
    }
    std::stable_sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
        return a.first > b.first;
    });
    if (ranked.size() > static_cast<std::size_t>(multistarts))
        ranked.resize(static_cast<std::size_t>(multistarts));

    double step = 0.0;
    for (int i = 0; i < dim; ++i)
        step = std::max(step, (box.hi[static_cast<std::size_t>(i)] -
                               box.lo[static_cast<std::size_t>(i)]) /
                                  std::max(2, resolution));

    NelderMeadOptions nm;
    nm.max_iterations = max_iterations;
    auto neg = [&](std::span<const double> p) {
        std::vector<double> q(p.begin(), p.end());
        box.clamp(q);
        return -objective(q);
    };
    for (const auto& [v, k] : ranked) {
        auto r = nelder_mead(neg, probes[k], step, nm);
        box.clamp(r.x);
        double gap = objective(r.x);
        if (gap > best_gap) {
            best_gap = gap;
            best_point = r.x;
        }
    }
}

}  // namespace

GapResult max_gap(const MeanSpec& smaller, const MeanSpec& larger, const SearchConfig& cfg) {
    cfg.validate();
    if (smaller.n() != larger.n())
        throw InvalidArgument("means have different arity");
    const int n = smaller.n();

    Box box;
    box.lo.assign(static_cast<std::size_t>(n), cfg.window.lo);
    box.hi.assign(static_cast<std::size_t>(n), cfg.window.hi);

    GapObjective objective(smaller, larger);
    double best_gap = -std::numeric_limits<double>::infinity();
    std::vector<double> best_point(static_cast<std::size_t>(n), cfg.window.lo);
    std::uint64_t state = cfg.seed;
    search_box(objective, box, cfg.resolution, cfg.multistarts, cfg.max_iterations,
               splitmix64(state), best_gap, best_point);

    GapResult out;
    out.evaluations = objective.evaluations();
    out.skipped = objective.skipped();
    if (!std::isfinite(best_gap)) {
        out.best_gap = 0.0;
        return out;
    }
    // store the recomputed value so the witness reproduces exactly
    double fresh = smaller.evaluate(best_point) - larger.evaluate(best_point);
    out.best_gap = fresh;
    if (fresh > cfg.witness_threshold) {
        GapWitness w;
        w.point = best_point;
        w.gap = fresh;
        out.witness = w;
    }
    return out;
}

std::vector<std::pair<double, double>> local_gap_probe(const MeanSpec& smaller,
                                                       const MeanSpec& larger,
                                                       const SearchConfig& cfg) {
    cfg.validate();
    if (smaller.n() != larger.n())
        throw InvalidArgument("means have different arity");
    const int n = smaller.n();
    const double width = cfg.window.width();

    const auto anchors = sample_grid(cfg.window, cfg.anchors);
    // per-tube budget: keep the overall probe cost near one max_gap call
    const int tube_resolution = std::max(2, std::min(cfg.resolution, 16));
    const int tube_starts = std::max(1, cfg.multistarts / 8);

    // search from the smallest radius upward; a point inside a smaller tube
    // is inside every larger tube, so maxima accumulate monotonically
    std::vector<std::pair<double, double>> out(cfg.radii.size());
    double running = -std::numeric_limits<double>::infinity();
    std::uint64_t state = cfg.seed ^ 0xd1b54a32d192ed03ULL;
    for (std::size_t ri = cfg.radii.size(); ri-- > 0;) {
        const double radius = cfg.radii[ri] * width;
        GapObjective objective(smaller, larger);
        double best = -std::numeric_limits<double>::infinity();
        std::vector<double> best_point;
        for (double c : anchors) {
            Box box;
            box.lo.assign(static_cast<std::size_t>(n), std::max(cfg.window.lo, c - radius));
            box.hi.assign(static_cast<std::size_t>(n), std::min(cfg.window.hi, c + radius));
            if (!(box.lo[0] < box.hi[0])) continue;
            search_box(objective, box, tube_resolution, tube_starts, cfg.max_iterations,
                       splitmix64(state), best, best_point);
        }
        double found = std::isfinite(best) ? best : 0.0;
        if (!best_point.empty())
            found = smaller.evaluate(best_point) - larger.evaluate(best_point);
        running = std::max(running, found);
        out[ri] = {radius, running};  // absolute radius
    }
    return out;
}

}  // namespace meancomp
