#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "hh/errors.hpp"
#include "hh/interval.hpp"

namespace hh {

/// Outcome of sampling the quasi-convexity predicate
///   g(lambda*x + (1-lambda)*y) <= max{g(x), g(y)}.
/// holds=false is a proof: the counterexample triple violates the definition
/// by more than the tolerance when re-evaluated. holds=true is evidence only.
struct QuasiConvexityVerdict {
    struct Triple {
        double x;
        double y;
        double lambda;
    };

    bool holds = true;
    std::optional<Triple> counterexample{};
    /// worst observed g(combination) - max{g(x), g(y)} over the sample set
    double margin = 0.0;
};

enum class ShapeVariant { nondecreasing, nonincreasing, valley, other };

/// Monotonicity pattern of a function's grid restriction. A valley is
/// nonincreasing then nondecreasing with the pivot located at the sign change.
struct ShapeClass {
    ShapeVariant variant = ShapeVariant::other;
    std::optional<double> pivot{};
};

namespace detail {

/// Van der Corput radical inverse; bases 2/3/5 give a deterministic
/// low-discrepancy triple sequence.
inline double radical_inverse(std::uint32_t base, std::uint64_t index) {
    double inv = 1.0 / base;
    double factor = inv;
    double result = 0.0;
    while (index) {
        result += factor * static_cast<double>(index % base);
        index /= base;
        factor *= inv;
    }
    return result;
}

constexpr long kQcGridPoints = 33;

} // namespace detail

/// Test the quasi-convexity predicate on `samples` low-discrepancy
/// (x, y, lambda) triples plus the midpoints of all pairs of a fixed uniform
/// grid. Deterministic for fixed arguments.
template <class G>
QuasiConvexityVerdict check_quasiconvex(G&& g, const Interval& iv, long samples, double tol) {
    if (samples < 8) throw ParameterError("check_quasiconvex requires samples >= 8");
    if (!(tol >= 0.0)) throw ParameterError("check_quasiconvex requires tol >= 0");

    QuasiConvexityVerdict verdict;
    verdict.margin = -std::numeric_limits<double>::infinity();
    QuasiConvexityVerdict::Triple worst{iv.a, iv.b, 0.5};

    auto eval_finite = [&](double t) {
        double v = g(t);
        if (!std::isfinite(v))
            throw DomainError("non-finite value while sampling quasi-convexity at t = " +
                              std::to_string(t));
        return v;
    };
    auto probe = [&](double x, double y, double lambda, double gx, double gy) {
        double z = iv.clamp(lambda * x + (1.0 - lambda) * y);
        double violation = eval_finite(z) - std::max(gx, gy);
        if (violation > verdict.margin) {
            verdict.margin = violation;
            worst = {x, y, lambda};
        }
    };

    // all pair midpoints of a fixed uniform grid
    constexpr long n = detail::kQcGridPoints;
    std::vector<double> grid(n), gval(n);
    for (long i = 0; i < n; ++i) {
        grid[i] = i == n - 1 ? iv.b : iv.a + iv.width() * (static_cast<double>(i) / (n - 1));
        gval[i] = eval_finite(grid[i]);
    }
    for (long i = 0; i < n; ++i)
        for (long j = i + 1; j < n; ++j)
            probe(grid[i], grid[j], 0.5, gval[i], gval[j]);

    // low-discrepancy triples
    for (long k = 1; k <= samples; ++k) {
        double x = iv.a + iv.width() * detail::radical_inverse(2, static_cast<std::uint64_t>(k));
        double y = iv.a + iv.width() * detail::radical_inverse(3, static_cast<std::uint64_t>(k));
        double lambda = detail::radical_inverse(5, static_cast<std::uint64_t>(k));
        probe(x, y, lambda, eval_finite(x), eval_finite(y));
    }

    verdict.holds = verdict.margin <= tol;
    if (!verdict.holds) verdict.counterexample = worst;
    return verdict;
}

/// Classify the first-difference pattern of g on a uniform grid:
/// all >= -tol: nondecreasing; all <= tol: nonincreasing; exactly one
/// significant sign change from - to +: valley (pivot reported); else other.
template <class G>
ShapeClass classify_shape(G&& g, const Interval& iv, long gridsize, double tol) {
    if (gridsize < 16) throw ParameterError("classify_shape requires gridsize >= 16");
    if (!(tol >= 0.0)) throw ParameterError("classify_shape requires tol >= 0");

    std::vector<double> x(gridsize), v(gridsize);
    for (long i = 0; i < gridsize; ++i) {
        x[i] = i == gridsize - 1
                   ? iv.b
                   : iv.a + iv.width() * (static_cast<double>(i) / (gridsize - 1));
        v[i] = g(x[i]);
        if (!std::isfinite(v[i]))
            throw DomainError("non-finite value while classifying shape at t = " +
                              std::to_string(x[i]));
    }

    bool any_neg = false, any_pos = false;
    long last_neg = -1, first_pos = -1;
    for (long i = 0; i + 1 < gridsize; ++i) {
        double d = v[i + 1] - v[i];
        if (d < -tol) {
            any_neg = true;
            last_neg = i;
        } else if (d > tol) {
            any_pos = true;
            if (first_pos < 0) first_pos = i;
        }
    }

    if (!any_neg) return {ShapeVariant::nondecreasing, {}};
    if (!any_pos) return {ShapeVariant::nonincreasing, {}};
    if (last_neg < first_pos) {
        double pivot = 0.5 * (x[last_neg + 1] + x[first_pos]);
        return {ShapeVariant::valley, pivot};
    }
    return {ShapeVariant::other, {}};
}

} // namespace hh
