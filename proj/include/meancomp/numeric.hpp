#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "meancomp/interval.hpp"

namespace meancomp {

// Neumaier-compensated accumulator; controls cancellation in weighted sums.
class CompensatedSum {
public:
    void add(double v) {
        double t = sum_ + v;
        if (std::fabs(sum_) >= std::fabs(v))
            comp_ += (sum_ - t) + v;
        else
            comp_ += (v - t) + sum_;
        sum_ = t;
    }

    double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

// m points spanning [w.lo, w.hi], log-spaced when the window is positive.
std::vector<double> sample_grid(const Window& w, int m);

struct SquareMatrix {
    int n = 0;
    std::vector<double> a;  // row-major

    explicit SquareMatrix(int dim) : n(dim), a(static_cast<std::size_t>(dim) * dim, 0.0) {}
    double& at(int i, int j) { return a[static_cast<std::size_t>(i) * n + j]; }
    double at(int i, int j) const { return a[static_cast<std::size_t>(i) * n + j]; }
};

// Determinant of a dense n x n row-major matrix by partially pivoted LU.
// The input is consumed.
double lu_determinant(std::vector<double> a, int n);

inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

struct NelderMeadResult {
    std::vector<double> x;
    double value = 0.0;
    int iterations = 0;
};

struct NelderMeadOptions {
    int max_iterations = 200;
    double f_tolerance = 1e-13;
};

// Deterministic derivative-free simplex minimizer. The objective receives
// raw points; callers that need box constraints clamp inside the objective.
NelderMeadResult nelder_mead(const std::function<double(std::span<const double>)>& objective,
                             std::span<const double> start, double step,
                             const NelderMeadOptions& options = {});

}  // namespace meancomp
