#pragma once

#include <string>
#include <vector>

#include "hh/errors.hpp"
#include "hh/expr.hpp"
#include "hh/function.hpp"
#include "hh/interval.hpp"

namespace hh {

/// Built-in regression targets. The first seven are quasi-convex on their
/// default intervals; the last two are foils that fail quasi-convexity.
struct CatalogEntry {
    std::string name;
    std::string expression;
    Interval interval;
    std::string note;
    bool foil;
};

inline const std::vector<CatalogEntry>& catalog() {
    static const std::vector<CatalogEntry> entries = {
        {"linear", "x", {0.0, 1.0}, "affine; convex", false},
        {"square", "x^2", {0.0, 1.0}, "convex", false},
        {"cube", "x^3", {-1.0, 1.0}, "monotone, quasi-convex (not convex here)", false},
        {"exp", "exp(x)", {0.0, 1.0}, "convex", false},
        {"sqrtabs", "sqrt(abs(x))", {0.25, 2.25}, "quasi-convex (not convex)", false},
        {"abskink", "abs(x - 0.3)", {0.0, 1.0}, "convex, kink at 0.3", false},
        {"neglog", "-log(x)", {0.5, 2.0}, "convex on positive interval", false},
        {"negsquare", "-x^2", {-1.0, 1.0}, "foil: concave, not quasi-convex", true},
        {"sinosc", "sin(10*x)", {0.0, 1.0}, "foil: oscillatory, not quasi-convex", true},
    };
    return entries;
}

inline const CatalogEntry& catalog_entry(const std::string& name) {
    for (const auto& entry : catalog())
        if (entry.name == name) return entry;
    throw ParameterError("unknown catalog function '" + name + "'");
}

inline DifferentiableFn catalog_fn(const CatalogEntry& entry) {
    return make_fn(parse(entry.expression), "catalog:" + entry.name);
}

inline DifferentiableFn catalog_fn(const std::string& name) {
    return catalog_fn(catalog_entry(name));
}

} // namespace hh
