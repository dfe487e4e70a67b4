#pragma once

#include <cmath>
#include <utility>
#include <vector>

#include "hh/errors.hpp"
#include "hh/interval.hpp"

namespace hh {

struct MinimizationResult {
    double argmin = 0.0;
    double min_value = 0.0;
    long iterations = 0;
};

/// n equally spaced samples of g over [a,b], endpoints included, ascending.
template <class F>
std::vector<std::pair<double, double>> grid_scan(F&& g, const Interval& iv, long n) {
    if (n < 2) throw ParameterError("grid_scan requires n >= 2");
    std::vector<std::pair<double, double>> points;
    points.reserve(static_cast<std::size_t>(n));
    for (long i = 0; i < n; ++i) {
        double x = i == 0 ? iv.a
                 : i == n - 1 ? iv.b
                              : iv.a + iv.width() * (static_cast<double>(i) / (n - 1));
        points.emplace_back(x, g(x));
    }
    return points;
}

/// Bounded scalar minimization: a coarse 1025-point grid locates the basin
/// (the bound curves are piecewise smooth but not globally unimodal), then
/// golden-section refinement narrows the bracket to tol. Ties resolve toward
/// the smaller x.
template <class F>
MinimizationResult minimize_scalar(F&& g, const Interval& iv, double tol) {
    if (!(tol > 0.0)) throw ParameterError("minimization tolerance must be > 0");
    constexpr long kCoarseN = 1025;

    const double ga = g(iv.a);
    double best_x = iv.a;
    double best_v = ga;
    auto consider = [&](double x, double v) {
        if (v < best_v || (v == best_v && x < best_x)) {
            best_v = v;
            best_x = x;
        }
    };

    consider(iv.midpoint(), g(iv.midpoint()));

    long best_i = 0;
    std::vector<double> gx(kCoarseN);
    gx[0] = ga;
    for (long i = 1; i < kCoarseN; ++i) {
        double x = i == kCoarseN - 1 ? iv.b : iv.a + iv.width() * (static_cast<double>(i) / (kCoarseN - 1));
        gx[i] = g(x);
        if (gx[i] < gx[best_i]) best_i = i;
        consider(x, gx[i]);
    }

    auto grid_x = [&](long i) {
        return i == 0 ? iv.a
             : i == kCoarseN - 1 ? iv.b
                                 : iv.a + iv.width() * (static_cast<double>(i) / (kCoarseN - 1));
    };
    double lo = grid_x(best_i > 0 ? best_i - 1 : 0);
    double hi = grid_x(best_i < kCoarseN - 1 ? best_i + 1 : kCoarseN - 1);

    // golden-section on the bracketing cell pair
    constexpr double kInvPhi = 0.6180339887498949;
    long iterations = 0;
    if (hi - lo > tol) {
        double x1 = hi - kInvPhi * (hi - lo);
        double x2 = lo + kInvPhi * (hi - lo);
        double f1 = g(x1);
        double f2 = g(x2);
        consider(x1, f1);
        consider(x2, f2);
        while (hi - lo > tol && iterations < 200) {
            ++iterations;
            if (f1 <= f2) {
                hi = x2;
                x2 = x1;
                f2 = f1;
                x1 = hi - kInvPhi * (hi - lo);
                f1 = g(x1);
                consider(x1, f1);
            } else {
                lo = x1;
                x1 = x2;
                f1 = f2;
                x2 = lo + kInvPhi * (hi - lo);
                f2 = g(x2);
                consider(x2, f2);
            }
        }
    }
    return {best_x, best_v, iterations};
}

} // namespace hh
