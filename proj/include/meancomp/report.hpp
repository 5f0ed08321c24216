#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "meancomp/compare.hpp"
#include "meancomp/power.hpp"
#include "meancomp/search.hpp"

namespace meancomp {

// Everything a single comparison run produced; serialized to the
// machine-readable JSON report and the human-readable summary.
struct RunReport {
    std::string tool_version;
    int n = 2;
    Interval interval;
    Window window;
    std::uint64_t seed = 0;
    std::string mean_fp;  // display form of A[f,p]
    std::string mean_gq;  // display form of A[g,q]
    CheckOptions options;

    ComparisonReport comparison;
    std::optional<PowerClassification> power;
    std::optional<Verdict> gsc_power;  // power-weighted tangent inequality, when applicable

    bool search_enabled = true;
    std::optional<GapResult> search_global;
    std::vector<std::pair<double, double>> search_local;  // (radius, max gap)

    ConclusionEntry locally_smaller;
    ConclusionEntry globally_smaller;
    std::vector<std::string> notes;

    bool refuted() const {
        return locally_smaller.status == Conclusion::refuted ||
               globally_smaller.status == Conclusion::refuted;
    }
};

std::string report_to_json(const RunReport& r);
std::string report_summary(const RunReport& r);

// Plot-ready gap landscape for n = 2: header `x,y,mean_fp,mean_gq,gap`,
// one row per cell of a uniform resolution x resolution grid over the
// window, every value printed with 17 significant digits.
std::string landscape_csv(const MeanSpec& smaller, const MeanSpec& larger, const Window& window,
                          int resolution);

}  // namespace meancomp
