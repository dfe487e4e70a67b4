#pragma once

#include <functional>
#include <memory>
#include <string>
#include <utility>

#include "hh/expr.hpp"

namespace hh {

/// A scalar function bundled with its first derivative and a stable id.
/// Expression-backed functions get the dual-number derivative; generated
/// functions carry their exact closed-form derivative instead.
struct DifferentiableFn {
    std::function<double(double)> value;
    std::function<double(double)> deriv;
    std::string id;

    double operator()(double x) const { return value(x); }
};

inline DifferentiableFn make_fn(const Expression& e) {
    // shared_ptr so both closures reference one immutable tree
    auto tree = std::make_shared<Expression>(e);
    DifferentiableFn fn;
    fn.value = [tree](double x) { return evaluate(*tree, x); };
    fn.deriv = [tree](double x) { return derivative_value(*tree, x); };
    fn.id = serialize(*tree);
    return fn;
}

inline DifferentiableFn make_fn(const Expression& e, std::string id) {
    DifferentiableFn fn = make_fn(e);
    fn.id = std::move(id);
    return fn;
}

} // namespace hh
