#pragma once

#include <cmath>

namespace hh {

/// Dual number: carries f(x) and f'(x) through arithmetic simultaneously.
/// Seeding der = 1 at the input variable yields the derivative of the whole
/// expression by the product and chain rules.
struct Dual {
    double val = 0.0;
    double der = 0.0;

    constexpr Dual() = default;
    constexpr Dual(double v, double d) : val(v), der(d) {}

    static constexpr Dual variable(double x) { return {x, 1.0}; }
    static constexpr Dual constant(double c) { return {c, 0.0}; }

    constexpr Dual operator-() const { return {-val, -der}; }

    constexpr Dual operator+(Dual o) const { return {val + o.val, der + o.der}; }
    constexpr Dual operator-(Dual o) const { return {val - o.val, der - o.der}; }
    constexpr Dual operator*(Dual o) const {
        return {val * o.val, der * o.val + val * o.der};
    }
    constexpr Dual operator/(Dual o) const {
        return {val / o.val, (der * o.val - val * o.der) / (o.val * o.val)};
    }

    constexpr bool operator==(const Dual&) const = default;
};

inline Dual exp(Dual x) {
    double e = std::exp(x.val);
    return {e, x.der * e};
}

inline Dual log(Dual x) { return {std::log(x.val), x.der / x.val}; }

inline Dual sqrt(Dual x) {
    double s = std::sqrt(x.val);
    return {s, x.der / (2.0 * s)};
}

inline Dual sin(Dual x) { return {std::sin(x.val), x.der * std::cos(x.val)}; }

inline Dual cos(Dual x) { return {std::cos(x.val), -x.der * std::sin(x.val)}; }

/// abs with the symmetric subgradient convention abs'(0) = 0, keeping the
/// arithmetic total at kinks.
inline Dual abs(Dual x) {
    double d = x.val > 0.0 ? x.der : (x.val < 0.0 ? -x.der : 0.0);
    return {std::fabs(x.val), d};
}

} // namespace hh
