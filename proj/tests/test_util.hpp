#pragma once

#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "hh/catalog.hpp"
#include "hh/expr.hpp"
#include "hh/function.hpp"
#include "hh/interval.hpp"

namespace hhtest {

/// One corpus function: expression text, a domain to sample, and the abs
/// kinks to stay away from when finite-differencing.
struct CorpusItem {
    std::string text;
    hh::Interval interval;
    std::vector<double> kinks;
};

/// The built-in catalog plus a handful of expressions that exercise the rest
/// of the grammar (variable exponents, nested functions, quotients).
inline const std::vector<CorpusItem>& corpus() {
    static const std::vector<CorpusItem> items = [] {
        std::vector<CorpusItem> v;
        for (const auto& entry : hh::catalog()) {
            std::vector<double> kinks;
            if (entry.name == "abskink") kinks.push_back(0.3);
            v.push_back({entry.expression, entry.interval, kinks});
        }
        v.push_back({"x*sin(x) + cos(x)", {-2.0, 2.0}, {}});
        v.push_back({"exp(2*x)", {-1.0, 1.0}, {}});
        v.push_back({"log(x + 2)", {-1.0, 1.0}, {}});
        v.push_back({"x^3 - 2*x + 1/(1 + x^2)", {-2.0, 2.0}, {}});
        v.push_back({"2^x", {-1.0, 1.0}, {}});
        v.push_back({"x^2.5", {0.1, 2.0}, {}});
        v.push_back({"sqrt(x + 3)/(x + 2)", {-1.0, 1.0}, {}});
        return v;
    }();
    return items;
}

inline double central_difference(const hh::Expression& e, double x, double h = 1e-6) {
    return (hh::evaluate(e, x + h) - hh::evaluate(e, x - h)) / (2.0 * h);
}

inline bool near_any(double x, const std::vector<double>& points, double eps) {
    for (double p : points)
        if (std::fabs(x - p) < eps) return true;
    return false;
}

} // namespace hhtest
