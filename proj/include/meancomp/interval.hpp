#pragma once

#include <cmath>
#include <cstdio>
#include <limits>
#include <string>

#include "meancomp/errors.hpp"

namespace meancomp {

// Open interval (lo, hi); endpoints may be -inf / +inf.
struct Interval {
    double lo = 0.0;
    double hi = std::numeric_limits<double>::infinity();

    Interval() = default;
    Interval(double lower, double upper) : lo(lower), hi(upper) {
        if (std::isnan(lo) || std::isnan(hi) || !(lo < hi))
            throw InvalidArgument("interval endpoints must satisfy lo < hi");
    }

    bool contains(double x) const { return std::isfinite(x) && x > lo && x < hi; }
    bool is_positive() const { return lo >= 0.0; }
    bool bounded() const { return std::isfinite(lo) && std::isfinite(hi); }

    std::string str() const {
        auto fmt = [](double v) {
            if (std::isinf(v)) return std::string(v > 0 ? "inf" : "-inf");
            char buf[32];
            std::snprintf(buf, sizeof(buf), "%g", v);
            return std::string(buf);
        };
        return "(" + fmt(lo) + ", " + fmt(hi) + ")";
    }
};

// Closed working window used for sampling, grids and searches. Always a
// compact subset of the owning interval.
struct Window {
    double lo = 0.0;
    double hi = 1.0;

    Window() = default;
    Window(double lower, double upper) : lo(lower), hi(upper) {
        if (!std::isfinite(lo) || !std::isfinite(hi) || !(lo < hi))
            throw InvalidArgument("window must be a finite range with lo < hi");
    }

    double width() const { return hi - lo; }
    double clamp(double x) const { return x < lo ? lo : (x > hi ? hi : x); }
    bool log_spaced() const { return lo > 0.0; }
};

// Default truncation of an interval to a finite sampling window.
// Unbounded ends collapse to [1e-6, 1e6] on positive intervals and to
// [-1e6, 1e6] otherwise; finite open endpoints are nudged inward.
inline Window default_window(const Interval& iv) {
    const double big = 1e6;
    const double small_pos = 1e-6;
    double lo, hi;
    if (iv.is_positive()) {
        lo = std::isfinite(iv.lo) && iv.lo > 0 ? iv.lo : small_pos;
        hi = std::isfinite(iv.hi) ? iv.hi : big;
        if (std::isfinite(iv.lo) && iv.lo > 0) lo = iv.lo;
        if (lo < small_pos && iv.lo <= 0.0) lo = small_pos;
    } else {
        lo = std::isfinite(iv.lo) ? iv.lo : -big;
        hi = std::isfinite(iv.hi) ? iv.hi : big;
    }
    // nudge open finite endpoints inward so samples stay interior
    double span = hi - lo;
    if (std::isfinite(iv.lo) && lo <= iv.lo) lo = iv.lo + span * 1e-9 + 1e-12;
    if (std::isfinite(iv.hi) && hi >= iv.hi) hi = iv.hi - span * 1e-9 - 1e-12;
    if (!(lo < hi)) throw InvalidArgument("interval too thin to derive a sampling window");
    return Window(lo, hi);
}

inline Window window_within(const Interval& iv, double lo, double hi) {
    Window w(lo, hi);
    if (!(iv.contains(lo) && iv.contains(hi)))
        throw InvalidArgument("window " + std::to_string(lo) + ".." + std::to_string(hi) +
                              " is not interior to interval " + iv.str());
    return w;
}

}  // namespace meancomp
