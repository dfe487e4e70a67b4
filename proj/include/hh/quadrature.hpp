#pragma once

#include <algorithm>
#include <cmath>
#include <string>

#include "hh/errors.hpp"
#include "hh/interval.hpp"

namespace hh {

struct QuadratureResult {
    double value = 0.0;
    double error_estimate = 0.0;
    long evaluations = 0;
};

namespace detail {

constexpr long kQuadratureBudget = 1'000'000;

template <class F>
struct AdaptiveSimpson {
    F& f;
    double tol_total;
    double value = 0.0;
    double error_sum = 0.0;
    long evaluations = 0;
    double deepest_lo = 0.0, deepest_hi = 0.0, deepest_width = 1e300;

    double eval(double x) {
        if (++evaluations > kQuadratureBudget)
            throw QuadratureError(
                "adaptive quadrature did not converge within " +
                    std::to_string(kQuadratureBudget) + " evaluations; deepest interval [" +
                    std::to_string(deepest_lo) + ", " + std::to_string(deepest_hi) + "]",
                deepest_lo, deepest_hi);
        return f(x);
    }

    static double simpson(double h, double fa, double fm, double fb) {
        return h / 6.0 * (fa + 4.0 * fm + fb);
    }

    // One panel [a,b] with cached endpoint/midpoint values and its Simpson
    // estimate. Accepts when the embedded Simpson/extrapolated pair agrees,
    // adding the Richardson correction (exact through degree-5 polynomials).
    void refine(double a, double b, double fa, double fm, double fb, double s_whole,
                double tol, int depth) {
        double m = 0.5 * (a + b);
        double lm = 0.5 * (a + m);
        double rm = 0.5 * (m + b);
        if (b - a < deepest_width) {
            deepest_width = b - a;
            deepest_lo = a;
            deepest_hi = b;
        }
        double flm = eval(lm);
        double frm = eval(rm);
        double s_left = simpson(m - a, fa, flm, fm);
        double s_right = simpson(b - m, fm, frm, fb);
        double s_split = s_left + s_right;
        double correction = (s_split - s_whole) / 15.0;

        double width_floor = 1e-14 * std::max({1.0, std::fabs(a), std::fabs(b)});
        bool converged = std::fabs(correction) <= tol && depth >= 2;
        if (converged || b - a <= width_floor) {
            value += s_split + correction;
            error_sum += std::fabs(correction);
            return;
        }
        refine(a, m, fa, flm, fm, s_left, 0.5 * tol, depth + 1);
        refine(m, b, fm, frm, fb, s_right, 0.5 * tol, depth + 1);
    }
};

} // namespace detail

/// Integrate f over [a,b] by adaptive Simpson subdivision with embedded
/// error estimation. For piecewise-smooth f with finitely many kinks the
/// returned value satisfies |value - true integral| <= max(tol, error_estimate).
template <class F>
QuadratureResult integrate_adaptive(F&& f, const Interval& iv, double tol) {
    if (!(tol > 0.0)) throw ParameterError("quadrature tolerance must be > 0");
    detail::AdaptiveSimpson<F> ctx{f, tol};
    double fa = ctx.eval(iv.a);
    double fm = ctx.eval(iv.midpoint());
    double fb = ctx.eval(iv.b);
    double s = detail::AdaptiveSimpson<F>::simpson(iv.width(), fa, fm, fb);
    ctx.refine(iv.a, iv.b, fa, fm, fb, s, tol, 0);
    return {ctx.value, ctx.error_sum, ctx.evaluations};
}

} // namespace hh
