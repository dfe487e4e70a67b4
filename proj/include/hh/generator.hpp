#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <string>
#include <utility>

#include "hh/errors.hpp"
#include "hh/expr.hpp"
#include "hh/function.hpp"
#include "hh/interval.hpp"

namespace hh {

/// SplitMix64: tiny splittable PRNG; one state word, full-avalanche output.
struct SplitMix64 {
    std::uint64_t state;

    explicit SplitMix64(std::uint64_t seed) : state(seed) {}

    std::uint64_t next() {
        state += 0x9E3779B97F4A7C15ull;
        std::uint64_t z = state;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }
    bool coin() { return (next() & 1ull) != 0; }
    std::uint64_t below(std::uint64_t n) { return next() % n; }
};

/// Families whose derivative magnitude is quasi-convex by construction:
/// a valley |c|*|t-m|^k (monomial-kink, shifted-odd-power) or a monotone
/// exponential |c|*e^(s*t) (monotone-exp).
enum class Family { monomial_kink, monotone_exp, shifted_odd_power };

inline const char* family_name(Family f) {
    switch (f) {
        case Family::monomial_kink: return "monomial-kink";
        case Family::monotone_exp: return "monotone-exp";
        case Family::shifted_odd_power: return "shifted-odd-power";
    }
    return "?";
}

inline Family family_from_name(const std::string& name) {
    if (name == "monomial-kink") return Family::monomial_kink;
    if (name == "monotone-exp") return Family::monotone_exp;
    if (name == "shifted-odd-power") return Family::shifted_odd_power;
    throw ParameterError("unknown generator family '" + name + "'");
}

struct GeneratorConfig {
    std::uint64_t seed = 42;
    Family family = Family::monomial_kink;
    Interval interval{0.0, 1.0};
    double scale_lo = 0.5;
    double scale_hi = 2.0;
};

/// A generated function: f as a parsed expression (so the whole verification
/// pipeline applies unchanged) plus the closed-form derivative it was
/// antidifferentiated from, for use as an independent oracle.
struct GeneratedFunction {
    DifferentiableFn fn;
    std::function<double(double)> exact_deriv;
    Family family;
    struct Params {
        double c = 0.0; // leading coefficient of f'
        double m = 0.0; // kink / shift location (monomial-kink, shifted-odd-power)
        double k = 0.0; // exponent of f' (monomial-kink, shifted-odd-power)
        double s = 0.0; // rate (monotone-exp)
    } params;
};

/// Deterministic in the config: identical configs produce identical
/// parameters. f is the exact antiderivative of the family formula for f'.
inline GeneratedFunction generate(const GeneratorConfig& config) {
    if (!(config.scale_lo > 0.0) || !(config.scale_hi >= config.scale_lo))
        throw ParameterError("degenerate scale bounds");

    SplitMix64 rng(config.seed);
    const Interval& iv = config.interval;
    const double w = iv.width();

    double c = (rng.coin() ? 1.0 : -1.0) * rng.uniform(config.scale_lo, config.scale_hi);
    GeneratedFunction out;
    out.family = config.family;
    out.params.c = c;

    using namespace ast;
    switch (config.family) {
        case Family::monomial_kink: {
            // f'(t) = c*sign(t-m)*|t-m|^k,  f(t) = (c/(k+1))*|t-m|^(k+1)
            double m = iv.a + w * rng.uniform(0.15, 0.85);
            double k = rng.uniform(0.5, 3.0);
            out.params.m = m;
            out.params.k = k;
            ExprPtr body = binary(
                BinaryOp::mul, constant(c / (k + 1.0)),
                binary(BinaryOp::pow,
                       unary(UnaryOp::abs, binary(BinaryOp::sub, variable(), constant(m))),
                       constant(k + 1.0)));
            out.fn = make_fn(Expression(std::move(body)));
            out.exact_deriv = [c, m, k](double t) {
                double d = t - m;
                if (d == 0.0) return 0.0;
                return c * std::copysign(std::pow(std::fabs(d), k), d);
            };
            break;
        }
        case Family::monotone_exp: {
            // f'(t) = c*e^(s*t),  f(t) = (c/s)*e^(s*t)
            double s = (rng.coin() ? 1.0 : -1.0) * rng.uniform(0.25, 3.0);
            out.params.s = s;
            ExprPtr body =
                binary(BinaryOp::mul, constant(c / s),
                       unary(UnaryOp::exp, binary(BinaryOp::mul, constant(s), variable())));
            out.fn = make_fn(Expression(std::move(body)));
            out.exact_deriv = [c, s](double t) { return c * std::exp(s * t); };
            break;
        }
        case Family::shifted_odd_power: {
            // f'(t) = c*(t-m)^k with odd k,  f(t) = (c/(k+1))*(t-m)^(k+1)
            double m = iv.a + w * rng.uniform(0.15, 0.85);
            double k = static_cast<double>(1 + 2 * rng.below(3)); // 1, 3, or 5
            out.params.m = m;
            out.params.k = k;
            ExprPtr body =
                binary(BinaryOp::mul, constant(c / (k + 1.0)),
                       binary(BinaryOp::pow, binary(BinaryOp::sub, variable(), constant(m)),
                              constant(k + 1.0)));
            out.fn = make_fn(Expression(std::move(body)));
            out.exact_deriv = [c, m, k](double t) {
                double d = t - m;
                return c * std::pow(d, k); // odd integer k: negative d is fine
            };
            break;
        }
    }
    out.fn.id = std::string("gen:") + family_name(config.family) +
                ":seed=" + std::to_string(config.seed);
    return out;
}

} // namespace hh
