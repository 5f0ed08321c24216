#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "meancomp/mean.hpp"

namespace meancomp {

struct SearchConfig {
    Window window{0.5, 2.0};
    int resolution = 32;      // coarse lattice points per axis (capped overall)
    int multistarts = 64;     // local ascents launched from the best cells
    int max_iterations = 200; // per local ascent
    std::vector<double> radii{1.0, 0.1, 0.01};  // fractions of the window width
    int anchors = 16;         // diagonal anchor points for the local probe
    std::uint64_t seed = 0x9e3779b9u;
    double witness_threshold = 1e-9;

    void validate() const;
};

struct GapWitness {
    std::vector<double> point;
    double gap = 0.0;
    double radius = std::numeric_limits<double>::infinity();  // inf = global search
};

struct GapResult {
    double best_gap = -std::numeric_limits<double>::infinity();
    std::optional<GapWitness> witness;  // present when best_gap > threshold
    long evaluations = 0;
    long skipped = 0;  // probe points where evaluation raised an error
};

// Maximize A_smaller(xs) - A_larger(xs) over window^n: coarse sweep (full
// lattice when feasible, seeded uniform sampling otherwise), then
// derivative-free simplex ascents from the best multistart candidates.
// Witness gaps are recomputed with fresh evaluations before being stored.
GapResult max_gap(const MeanSpec& smaller, const MeanSpec& larger, const SearchConfig& cfg);

// For each schedule entry r (decreasing fractions of the window width), the
// largest gap found inside the diagonal tubes { xs : |x_i - c| <= r * width }
// over the anchor points c. Returned radii are absolute (r * width). Results
// are accumulated from the smallest radius upward, so the reported gaps are
// nonincreasing as the radius shrinks.
std::vector<std::pair<double, double>> local_gap_probe(const MeanSpec& smaller,
                                                       const MeanSpec& larger,
                                                       const SearchConfig& cfg);

}  // namespace meancomp
