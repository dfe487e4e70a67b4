#pragma once

#include <cmath>
#include <string>

#include "hh/errors.hpp"

namespace hh {

/// Closed interval [a, b] with a < b, both finite.
struct Interval {
    double a;
    double b;

    Interval(double a_, double b_) : a(a_), b(b_) {
        if (!std::isfinite(a) || !std::isfinite(b))
            throw ParameterError("interval endpoints must be finite");
        if (!(a < b))
            throw ParameterError("require a < b");
    }

    double width() const noexcept { return b - a; }
    double midpoint() const noexcept { return 0.5 * (a + b); }
    bool contains(double x) const noexcept { return a <= x && x <= b; }
    double clamp(double x) const noexcept { return x < a ? a : (x > b ? b : x); }
};

} // namespace hh
