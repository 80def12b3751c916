#pragma once

// Uniform time-grid scans and local peak refinement shared by the 1D and
// triangular-lattice transfer detectors.

#include <cmath>
#include <utility>
#include <vector>

namespace revivalkit::scan {

/// Time of grid point k on a uniform grid of `grid` points over [0, t_max].
inline double grid_time(double t_max, int grid, int k)
{
    return t_max * static_cast<double>(k) / static_cast<double>(grid - 1);
}

/// Evaluates f at every grid point, OpenMP-parallel over points. `f` must be
/// safe to call concurrently.
template <class F>
std::vector<double> sample(double t_max, int grid, const F& f)
{
    std::vector<double> values(static_cast<std::size_t>(grid));
#pragma omp parallel for schedule(static)
    for (int k = 0; k < grid; ++k) {
        values[static_cast<std::size_t>(k)] = f(grid_time(t_max, grid, k));
    }
    return values;
}

/// Serial reference for sample().
template <class F>
std::vector<double> sample_serial(double t_max, int grid, const F& f)
{
    std::vector<double> values(static_cast<std::size_t>(grid));
    for (int k = 0; k < grid; ++k) {
        values[static_cast<std::size_t>(k)] = f(grid_time(t_max, grid, k));
    }
    return values;
}

/// Indices k >= 1 that are local maxima of the sampled values (the last
/// point counts if it is not below its left neighbour).
inline std::vector<int> local_maxima(const std::vector<double>& v)
{
    std::vector<int> out;
    const int n = static_cast<int>(v.size());
    for (int k = 1; k < n; ++k) {
        const auto uk = static_cast<std::size_t>(k);
        const bool left = v[uk] >= v[uk - 1];
        const bool right = (k + 1 == n) || v[uk] > v[uk + 1];
        if (left && right) {
            out.push_back(k);
        }
    }
    return out;
}

struct Peak {
    double time;
    double value;
};

/// Maximizes a smooth objective on [lo, hi]. `f(t)` returns the pair
/// (value, derivative). When the derivative changes sign from + to - the
/// stationary point is bracketed and bisected to `width`; otherwise a
/// golden-section search is used.
template <class F>
Peak refine_peak(const F& f, double lo, double hi, double width = 1e-12)
{
    auto [flo, dlo] = f(lo);
    auto [fhi, dhi] = f(hi);
    if (dlo > 0.0 && dhi < 0.0) {
        while (hi - lo > width) {
            const double mid = 0.5 * (lo + hi);
            if (mid <= lo || mid >= hi) {
                break;
            }
            const auto [fm, dm] = f(mid);
            (void)fm;
            if (dm > 0.0) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        const double t = 0.5 * (lo + hi);
        return {t, f(t).first};
    }

    const double ratio = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = lo;
    double b = hi;
    double c = b - ratio * (b - a);
    double d = a + ratio * (b - a);
    double fc = f(c).first;
    double fd = f(d).first;
    while (b - a > width) {
        if (fc >= fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - ratio * (b - a);
            fc = f(c).first;
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + ratio * (b - a);
            fd = f(d).first;
        }
        if (c <= a || d >= b) {
            break;
        }
    }
    Peak best{0.5 * (a + b), f(0.5 * (a + b)).first};
    if (flo > best.value) {
        best = {lo, flo};
    }
    if (fhi > best.value) {
        best = {hi, fhi};
    }
    return best;
}

} // namespace revivalkit::scan
