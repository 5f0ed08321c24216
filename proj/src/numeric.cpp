#include "meancomp/numeric.hpp"

#include <algorithm>
#include <numeric>

#include "meancomp/errors.hpp"

namespace meancomp {

std::vector<double> sample_grid(const Window& w, int m) {
    if (m < 2) throw InvalidArgument("sample grid needs at least 2 points");
    std::vector<double> xs(static_cast<std::size_t>(m));
    if (w.log_spaced()) {
        double la = std::log(w.lo), lb = std::log(w.hi);
        for (int k = 0; k < m; ++k)
            xs[static_cast<std::size_t>(k)] = std::exp(la + (lb - la) * k / (m - 1));
    } else {
        for (int k = 0; k < m; ++k)
            xs[static_cast<std::size_t>(k)] = w.lo + (w.hi - w.lo) * k / (m - 1);
    }
    xs.front() = w.lo;
    xs.back() = w.hi;
    return xs;
}

double lu_determinant(std::vector<double> a, int n) {
    if (n <= 0 || a.size() != static_cast<std::size_t>(n) * static_cast<std::size_t>(n))
        throw InvalidArgument("lu_determinant: bad dimensions");
    double det = 1.0;
    for (int col = 0; col < n; ++col) {
        int pivot = col;
        double best = std::fabs(a[static_cast<std::size_t>(col) * n + col]);
        for (int r = col + 1; r < n; ++r) {
            double v = std::fabs(a[static_cast<std::size_t>(r) * n + col]);
            if (v > best) {
                best = v;
                pivot = r;
            }
        }
        if (best == 0.0) return 0.0;
        if (pivot != col) {
            for (int c = 0; c < n; ++c)
                std::swap(a[static_cast<std::size_t>(pivot) * n + c],
                          a[static_cast<std::size_t>(col) * n + c]);
            det = -det;
        }
        double d = a[static_cast<std::size_t>(col) * n + col];
        det *= d;
        for (int r = col + 1; r < n; ++r) {
            double f = a[static_cast<std::size_t>(r) * n + col] / d;
            if (f == 0.0) continue;
            for (int c = col; c < n; ++c)
                a[static_cast<std::size_t>(r) * n + c] -= f * a[static_cast<std::size_t>(col) * n + c];
        }
    }
    return det;
}

NelderMeadResult nelder_mead(const std::function<double(std::span<const double>)>& objective,
                             std::span<const double> start, double step,
                             const NelderMeadOptions& options) {
    const int dim = static_cast<int>(start.size());
    if (dim < 1) throw InvalidArgument("nelder_mead: empty start point");
    const double alpha = 1.0, gamma = 2.0, rho = 0.5, sigma = 0.5;

    std::vector<std::vector<double>> pts;
    std::vector<double> vals;
    pts.reserve(static_cast<std::size_t>(dim) + 1);
    pts.emplace_back(start.begin(), start.end());
    for (int i = 0; i < dim; ++i) {
        auto p = pts.front();
        p[static_cast<std::size_t>(i)] += step;
        pts.push_back(std::move(p));
    }
    vals.reserve(pts.size());
    for (auto& p : pts) vals.push_back(objective(p));

    std::vector<std::size_t> order(pts.size());
    std::iota(order.begin(), order.end(), 0u);

    int iter = 0;
    for (; iter < options.max_iterations; ++iter) {
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t a, std::size_t b) { return vals[a] < vals[b]; });
        std::size_t best = order.front(), worst = order.back();
        std::size_t second_worst = order[order.size() - 2];
        if (vals[worst] - vals[best] <= options.f_tolerance) break;

        std::vector<double> centroid(static_cast<std::size_t>(dim), 0.0);
        for (std::size_t k = 0; k + 1 < order.size(); ++k)
            for (int i = 0; i < dim; ++i)
                centroid[static_cast<std::size_t>(i)] +=
                    pts[order[k]][static_cast<std::size_t>(i)] / dim;

        auto blend = [&](double coeff) {
            std::vector<double> p(static_cast<std::size_t>(dim));
            for (int i = 0; i < dim; ++i) {
                std::size_t ii = static_cast<std::size_t>(i);
                p[ii] = centroid[ii] + coeff * (centroid[ii] - pts[worst][ii]);
            }
            return p;
        };

        auto reflected = blend(alpha);
        double fr = objective(reflected);
        if (fr < vals[best]) {
            auto expanded = blend(gamma);
            double fe = objective(expanded);
            if (fe < fr) {
                pts[worst] = std::move(expanded);
                vals[worst] = fe;
            } else {
                pts[worst] = std::move(reflected);
                vals[worst] = fr;
            }
            continue;
        }
        if (fr < vals[second_worst]) {
            pts[worst] = std::move(reflected);
            vals[worst] = fr;
            continue;
        }
        auto contracted = blend(-rho);
        double fc = objective(contracted);
        if (fc < vals[worst]) {
            pts[worst] = std::move(contracted);
            vals[worst] = fc;
            continue;
        }
        // shrink toward the best vertex
        for (std::size_t k = 1; k < order.size(); ++k) {
            std::size_t idx = order[k];
            for (int i = 0; i < dim; ++i) {
                std::size_t ii = static_cast<std::size_t>(i);
                pts[idx][ii] = pts[best][ii] + sigma * (pts[idx][ii] - pts[best][ii]);
            }
            vals[idx] = objective(pts[idx]);
        }
    }

    std::size_t best = order.front();
    for (std::size_t k : order)
        if (vals[k] < vals[best]) best = k;
    return {pts[best], vals[best], iter};
}

}  // namespace meancomp
