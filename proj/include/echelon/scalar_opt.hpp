#pragma once

#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

namespace echelon {

/// Result of a one-dimensional maximization.
struct ScalarMax {
    double x = 0.0;
    double value = 0.0;
    bool on_boundary = false;  // argmax within one grid cell of an interval end
};

/// Golden-section maximization of f on [lo, hi].
/// Assumes a single interior maximum inside the bracket; tolerance on x.
template <class F>
ScalarMax golden_section_max(const F& f, double lo, double hi, double xtol = 1e-10) {
    static const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = lo, b = hi;
    double c = b - invphi * (b - a);
    double d = a + invphi * (b - a);
    double fc = f(c), fd = f(d);
    while (b - a > xtol) {
        if (fc > fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - invphi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + invphi * (b - a);
            fd = f(d);
        }
    }
    ScalarMax r;
    r.x = 0.5 * (a + b);
    r.value = f(r.x);
    return r;
}

/// Maximize f over [lo, hi]: coarse grid scan at the given step, then
/// golden-section refinement around the best grid cells. Endpoints are
/// always sampled exactly, so boundary maxima are found at full accuracy.
/// `step` is a target; the actual grid is uniform with step <= `step`.
template <class F>
ScalarMax grid_golden_max(const F& f, double lo, double hi, double step,
                          double xtol = 1e-10) {
    if (!(hi >= lo)) throw std::invalid_argument("grid_golden_max: empty interval");
    if (hi == lo) return {lo, f(lo), true};
    const long n = std::max(2L, static_cast<long>(std::ceil((hi - lo) / step)) + 1);
    const double h = (hi - lo) / static_cast<double>(n - 1);

    std::vector<double> vals(static_cast<size_t>(n));
    for (long k = 0; k < n; ++k)
        vals[static_cast<size_t>(k)] = f(lo + h * static_cast<double>(k));

    // top 3 grid cells by value
    std::vector<long> top;
    for (int pick = 0; pick < 3; ++pick) {
        long best = -1;
        double bv = -std::numeric_limits<double>::infinity();
        for (long k = 0; k < n; ++k) {
            bool taken = false;
            for (long t : top)
                if (std::abs(t - k) <= 1) taken = true;
            if (!taken && vals[static_cast<size_t>(k)] > bv) {
                bv = vals[static_cast<size_t>(k)];
                best = k;
            }
        }
        if (best >= 0) top.push_back(best);
    }

    ScalarMax result;
    result.value = -std::numeric_limits<double>::infinity();
    for (long k : top) {
        const double a = lo + h * static_cast<double>(std::max(0L, k - 1));
        const double b = lo + h * static_cast<double>(std::min(n - 1, k + 1));
        ScalarMax cand = golden_section_max(f, a, b, xtol);
        // endpoints of the refinement bracket, in case the max sits there
        for (double e : {a, b}) {
            double fe = f(e);
            if (fe > cand.value) { cand.x = e; cand.value = fe; }
        }
        if (cand.value > result.value) result = cand;
    }
    result.on_boundary = (result.x <= lo + h) || (result.x >= hi - h);
    return result;
}

/// Bisection for a root of g on [lo, hi]; requires a sign change.
template <class F>
double bisect_root(const F& g, double lo, double hi, double xtol = 1e-12) {
    double glo = g(lo), ghi = g(hi);
    if (glo == 0.0) return lo;
    if (ghi == 0.0) return hi;
    if ((glo > 0) == (ghi > 0))
        throw std::invalid_argument("bisect_root: no sign change in bracket");
    while (hi - lo > xtol) {
        double mid = 0.5 * (lo + hi);
        double gm = g(mid);
        if (gm == 0.0) return mid;
        if ((gm > 0) == (glo > 0)) {
            lo = mid;
            glo = gm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace echelon
