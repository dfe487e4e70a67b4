#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "hh/errors.hpp"
#include "hh/function.hpp"
#include "hh/interval.hpp"
#include "hh/quadrature.hpp"
#include "hh/quasiconvex.hpp"

namespace hh {

/// Default slack tolerance: a certified bound instance counts as violated
/// only when rhs - lhs < -(quadrature error + this).
inline constexpr double kSlackTol = 1e-9;

/// Default tolerance for the midpoint reduction identities (relative).
inline constexpr double kReductionTol = 1e-12;

/// Hoelder exponent p > 1 and power-mean exponent q >= 1. The two
/// parameterize different bounds and are kept separate; p's conjugate
/// p/(p-1) is derived, never stored.
struct ExponentParams {
    double p = 2.0;
    double q = 2.0;

    ExponentParams() = default;
    ExponentParams(double p_, double q_) : p(p_), q(q_) { validate(); }

    void validate() const {
        if (!(p > 1.0)) throw ParameterError("require p > 1");
        if (!(q >= 1.0)) throw ParameterError("require q >= 1");
    }

    double conjugate() const { return p / (p - 1.0); }
};

/// The eight verified right-hand sides. ion1/ion2 and eq1/eq2/eq3 are the
/// midpoint baselines; thm6/thm7/thm8 carry the free evaluation point x.
enum class TheoremId { ion1, ion2, eq1, eq2, eq3, thm6, thm7, thm8 };

inline constexpr std::array<TheoremId, 8> kAllTheorems = {
    TheoremId::ion1, TheoremId::ion2, TheoremId::eq1, TheoremId::eq2,
    TheoremId::eq3,  TheoremId::thm6, TheoremId::thm7, TheoremId::thm8,
};

inline const char* theorem_name(TheoremId id) {
    switch (id) {
        case TheoremId::ion1: return "ion1";
        case TheoremId::ion2: return "ion2";
        case TheoremId::eq1: return "eq1";
        case TheoremId::eq2: return "eq2";
        case TheoremId::eq3: return "eq3";
        case TheoremId::thm6: return "thm6";
        case TheoremId::thm7: return "thm7";
        case TheoremId::thm8: return "thm8";
    }
    return "?";
}

namespace detail {

/// ((b-x)f(b) + (x-a)f(a)) / (b-a) from cached endpoint values.
inline double endpoint_weight(const Interval& iv, double x, double fa, double fb) {
    return ((iv.b - x) * fb + (x - iv.a) * fa) / iv.width();
}

// Bound formulas from precomputed derivative magnitudes ax = |f'(x)|,
// aa = |f'(a)|, ab = |f'(b)| (am = |f'((a+b)/2)| for the baselines).

inline double thm6_terms(const Interval& iv, double x, double ax, double aa, double ab) {
    double w = iv.width();
    double left = (x - iv.a) * (x - iv.a) / (2.0 * w);
    double right = (iv.b - x) * (iv.b - x) / (2.0 * w);
    return left * std::max(ax, aa) + right * std::max(ax, ab);
}

inline double thm7_terms(const Interval& iv, double x, double ax, double aa, double ab,
                         double p) {
    double w = iv.width();
    double r = p / (p - 1.0);
    double factor = std::pow(1.0 / (p + 1.0), 1.0 / p);
    double left = (x - iv.a) * (x - iv.a) / w;
    double right = (iv.b - x) * (iv.b - x) / w;
    double ma = std::pow(std::max(std::pow(ax, r), std::pow(aa, r)), 1.0 / r);
    double mb = std::pow(std::max(std::pow(ax, r), std::pow(ab, r)), 1.0 / r);
    return factor * (left * ma + right * mb);
}

inline double thm8_terms(const Interval& iv, double x, double ax, double aa, double ab,
                         double q) {
    double w = iv.width();
    double left = (x - iv.a) * (x - iv.a) / (2.0 * w);
    double right = (iv.b - x) * (iv.b - x) / (2.0 * w);
    double ma = std::pow(std::max(std::pow(ax, q), std::pow(aa, q)), 1.0 / q);
    double mb = std::pow(std::max(std::pow(ax, q), std::pow(ab, q)), 1.0 / q);
    return left * ma + right * mb;
}

inline double baseline_terms(const Interval& iv, TheoremId id, double am, double aa,
                             double ab, const ExponentParams& params) {
    double w = iv.width();
    switch (id) {
        case TheoremId::ion1: return w / 4.0 * std::max(aa, ab);
        case TheoremId::ion2: {
            double p = params.p;
            double r = p / (p - 1.0);
            double mx = std::pow(std::max(std::pow(aa, r), std::pow(ab, r)), 1.0 / r);
            return w / (2.0 * std::pow(p + 1.0, 1.0 / p)) * mx;
        }
        case TheoremId::eq1: return w / 8.0 * (std::max(am, aa) + std::max(am, ab));
        case TheoremId::eq2: {
            double p = params.p;
            double r = p / (p - 1.0);
            double factor = std::pow(1.0 / (p + 1.0), 1.0 / p);
            double ma = std::pow(std::max(std::pow(am, r), std::pow(aa, r)), 1.0 / r);
            double mb = std::pow(std::max(std::pow(am, r), std::pow(ab, r)), 1.0 / r);
            return w / 4.0 * factor * (ma + mb);
        }
        case TheoremId::eq3: {
            double q = params.q;
            double ma = std::pow(std::max(std::pow(am, q), std::pow(aa, q)), 1.0 / q);
            double mb = std::pow(std::max(std::pow(am, q), std::pow(ab, q)), 1.0 / q);
            return w / 8.0 * (ma + mb);
        }
        default: throw ParameterError("bound_baseline: id must be a baseline theorem");
    }
}

} // namespace detail

/// |((b-x)f(b) + (x-a)f(a))/(b-a) - (1/(b-a)) * integral of f| -- the
/// endpoint-weighted deviation every x-parameterized bound controls.
inline double lhs_weighted(const DifferentiableFn& f, const Interval& iv, double x,
                           double tol) {
    if (!iv.contains(x)) throw ParameterError("require x in [a, b]");
    QuadratureResult mean = integrate_adaptive(f.value, iv, tol);
    double dev = detail::endpoint_weight(iv, x, f.value(iv.a), f.value(iv.b)) -
                 mean.value / iv.width();
    return std::fabs(dev);
}

/// Residual of the integral identity behind the x-parameterized bounds:
/// signed weighted deviation minus
///   ((x-a)^2/(b-a)) * int_0^1 (t-1) f'(tx+(1-t)a) dt
/// + ((b-x)^2/(b-a)) * int_0^1 (1-t) f'(tx+(1-t)b) dt.
/// Zero (up to quadrature error) for any f with integrable derivative.
inline double lemma1_residual(const DifferentiableFn& f, const Interval& iv, double x,
                              double tol) {
    if (!iv.contains(x)) throw ParameterError("require x in [a, b]");
    QuadratureResult mean = integrate_adaptive(f.value, iv, tol);
    double lhs = detail::endpoint_weight(iv, x, f.value(iv.a), f.value(iv.b)) -
                 mean.value / iv.width();

    double w = iv.width();
    double rhs = 0.0;
    Interval unit{0.0, 1.0};
    double ca = (x - iv.a) * (x - iv.a) / w;
    if (ca != 0.0) {
        auto integrand = [&](double t) { return (t - 1.0) * f.deriv(t * x + (1.0 - t) * iv.a); };
        rhs += ca * integrate_adaptive(integrand, unit, tol).value;
    }
    double cb = (iv.b - x) * (iv.b - x) / w;
    if (cb != 0.0) {
        auto integrand = [&](double t) { return (1.0 - t) * f.deriv(t * x + (1.0 - t) * iv.b); };
        rhs += cb * integrate_adaptive(integrand, unit, tol).value;
    }
    return std::fabs(lhs - rhs);
}

/// Endpoint-weighted max bound:
/// (x-a)^2/(2(b-a)) max{|f'(x)|,|f'(a)|} + (b-x)^2/(2(b-a)) max{|f'(x)|,|f'(b)|}.
/// Valid whenever |f'| is quasi-convex on [a,b].
inline double bound_thm6(const DifferentiableFn& f, const Interval& iv, double x) {
    if (!iv.contains(x)) throw ParameterError("require x in [a, b]");
    return detail::thm6_terms(iv, x, std::fabs(f.deriv(x)), std::fabs(f.deriv(iv.a)),
                              std::fabs(f.deriv(iv.b)));
}

/// Hoelder-split bound with exponent p > 1; requires |f'|^(p/(p-1))
/// quasi-convex on [a,b].
inline double bound_thm7(const DifferentiableFn& f, const Interval& iv, double x, double p) {
    if (!iv.contains(x)) throw ParameterError("require x in [a, b]");
    if (!(p > 1.0)) throw ParameterError("require p > 1");
    return detail::thm7_terms(iv, x, std::fabs(f.deriv(x)), std::fabs(f.deriv(iv.a)),
                              std::fabs(f.deriv(iv.b)), p);
}

/// Power-mean bound with exponent q >= 1; requires |f'|^q quasi-convex on
/// [a,b]. Coincides with bound_thm6 at q = 1.
inline double bound_thm8(const DifferentiableFn& f, const Interval& iv, double x, double q) {
    if (!iv.contains(x)) throw ParameterError("require x in [a, b]");
    if (!(q >= 1.0)) throw ParameterError("require q >= 1");
    return detail::thm8_terms(iv, x, std::fabs(f.deriv(x)), std::fabs(f.deriv(iv.a)),
                              std::fabs(f.deriv(iv.b)), q);
}

/// The five midpoint baselines. They bound the deviation at x = (a+b)/2,
/// i.e. |(f(a)+f(b))/2 - mean integral|, using |f'| at a, b, and the midpoint.
inline double bound_baseline(const DifferentiableFn& f, const Interval& iv, TheoremId id,
                             const ExponentParams& params) {
    switch (id) {
        case TheoremId::ion2:
        case TheoremId::eq2:
            if (!(params.p > 1.0)) throw ParameterError("require p > 1");
            break;
        case TheoremId::eq3:
            if (!(params.q >= 1.0)) throw ParameterError("require q >= 1");
            break;
        default: break;
    }
    double am = std::fabs(f.deriv(iv.midpoint()));
    double aa = std::fabs(f.deriv(iv.a));
    double ab = std::fabs(f.deriv(iv.b));
    return detail::baseline_terms(iv, id, am, aa, ab, params);
}

/// The classical two-sided estimate for convex f:
/// f((a+b)/2) <= mean integral <= (f(a)+f(b))/2.
struct ClassicHHResult {
    double midpoint_value = 0.0;
    double mean_integral = 0.0;
    double endpoint_mean = 0.0;
    bool holds_lower = false;
    bool holds_upper = false;
    bool holds = false;
};

inline ClassicHHResult classic_hh_check(const DifferentiableFn& f, const Interval& iv,
                                        double tol) {
    ClassicHHResult r;
    r.midpoint_value = f.value(iv.midpoint());
    r.mean_integral = integrate_adaptive(f.value, iv, tol).value / iv.width();
    r.endpoint_mean = 0.5 * (f.value(iv.a) + f.value(iv.b));
    r.holds_lower = r.midpoint_value <= r.mean_integral + tol;
    r.holds_upper = r.mean_integral <= r.endpoint_mean + tol;
    r.holds = r.holds_lower && r.holds_upper;
    return r;
}

/// One quasi-convexity certification attempt. Not evaluable (a domain error
/// while sampling, e.g. an unbounded derivative) also fails certification.
struct HypothesisResult {
    QuasiConvexityVerdict verdict;
    bool evaluable = true;
    std::string error;

    bool certified() const { return evaluable && verdict.holds; }
};

enum class EntryStatus { satisfied, violated, not_certified };

inline const char* entry_status_name(EntryStatus s) {
    switch (s) {
        case EntryStatus::satisfied: return "satisfied";
        case EntryStatus::violated: return "violated";
        case EntryStatus::not_certified: return "hypothesis-not-certified";
    }
    return "?";
}

struct BoundEntry {
    double rhs = 0.0;
    double slack = 0.0;
    EntryStatus status = EntryStatus::not_certified;
};

/// Full verification record for one (f, [a,b], x, p, q) instance.
/// entries is indexed by TheoremId; slack is rhs minus that entry's own
/// left-hand side (deviation at x for thm6/7/8, at the midpoint for the
/// baselines). Quasi-convexity certification is sampling evidence, not proof.
struct BoundReport {
    std::string function;
    Interval interval{0.0, 1.0};
    double x = 0.5;
    ExponentParams params;
    double lhs = 0.0;
    double lhs_midpoint = 0.0;
    std::array<BoundEntry, 8> entries{};
    HypothesisResult h1;  // |f'| quasi-convex
    HypothesisResult hp;  // |f'|^(p/(p-1)) quasi-convex
    HypothesisResult hq;  // |f'|^q quasi-convex
    double lemma1_residual = 0.0;
    double quadrature_error = 0.0;

    const BoundEntry& entry(TheoremId id) const {
        return entries[static_cast<std::size_t>(id)];
    }
    BoundEntry& entry(TheoremId id) { return entries[static_cast<std::size_t>(id)]; }

    bool any_violation() const {
        for (const auto& e : entries)
            if (e.status == EntryStatus::violated) return true;
        return false;
    }
    bool any_uncertified() const {
        for (const auto& e : entries)
            if (e.status == EntryStatus::not_certified) return true;
        return false;
    }
    bool all_satisfied() const {
        for (const auto& e : entries)
            if (e.status != EntryStatus::satisfied) return false;
        return true;
    }
};

inline constexpr long kDefaultCertSamples = 512;
inline constexpr double kDefaultCertTol = 1e-9;

namespace detail {

template <class G>
HypothesisResult certify(G&& g, const Interval& iv, long samples, double tol) {
    HypothesisResult h;
    try {
        h.verdict = check_quasiconvex(g, iv, samples, tol);
    } catch (const DomainError& err) {
        h.evaluable = false;
        h.verdict.holds = false;
        h.error = err.what();
    }
    return h;
}

} // namespace detail

/// Verify every bound for one instance: certify the three quasi-convexity
/// hypotheses, compute the deviation at x and at the midpoint, the identity
/// residual, and all eight right-hand sides with slacks and statuses.
inline BoundReport verify(const DifferentiableFn& f, const Interval& iv, double x,
                          const ExponentParams& params, double tol,
                          long cert_samples = kDefaultCertSamples,
                          double cert_tol = kDefaultCertTol) {
    if (!iv.contains(x)) throw ParameterError("require x in [a, b]");
    params.validate();
    if (!(tol > 0.0)) throw ParameterError("require tol > 0");

    BoundReport report;
    report.function = f.id;
    report.interval = iv;
    report.x = x;
    report.params = params;

    QuadratureResult mean_q = integrate_adaptive(f.value, iv, tol);
    double mean = mean_q.value / iv.width();
    report.quadrature_error = mean_q.error_estimate / iv.width();

    double fa = f.value(iv.a);
    double fb = f.value(iv.b);
    report.lhs = std::fabs(detail::endpoint_weight(iv, x, fa, fb) - mean);
    report.lhs_midpoint =
        std::fabs(detail::endpoint_weight(iv, iv.midpoint(), fa, fb) - mean);

    report.lemma1_residual = lemma1_residual(f, iv, x, tol);

    double r = params.conjugate();
    double q = params.q;
    auto abs_deriv = [&f](double t) { return std::fabs(f.deriv(t)); };
    report.h1 = detail::certify(abs_deriv, iv, cert_samples, cert_tol);
    report.hp = detail::certify(
        [&](double t) { return std::pow(abs_deriv(t), r); }, iv, cert_samples, cert_tol);
    report.hq = detail::certify(
        [&](double t) { return std::pow(abs_deriv(t), q); }, iv, cert_samples, cert_tol);

    double ax = std::fabs(f.deriv(x));
    double aa = std::fabs(f.deriv(iv.a));
    double ab = std::fabs(f.deriv(iv.b));
    double am = std::fabs(f.deriv(iv.midpoint()));

    double slack_floor = -(report.quadrature_error + kSlackTol);
    auto fill = [&](TheoremId id, double rhs, double entry_lhs, const HypothesisResult& h) {
        BoundEntry& e = report.entry(id);
        e.rhs = rhs;
        e.slack = rhs - entry_lhs;
        e.status = !h.certified()            ? EntryStatus::not_certified
                   : e.slack >= slack_floor ? EntryStatus::satisfied
                                            : EntryStatus::violated;
    };

    fill(TheoremId::thm6, detail::thm6_terms(iv, x, ax, aa, ab), report.lhs, report.h1);
    fill(TheoremId::thm7, detail::thm7_terms(iv, x, ax, aa, ab, params.p), report.lhs,
         report.hp);
    fill(TheoremId::thm8, detail::thm8_terms(iv, x, ax, aa, ab, q), report.lhs, report.hq);
    fill(TheoremId::ion1, detail::baseline_terms(iv, TheoremId::ion1, am, aa, ab, params),
         report.lhs_midpoint, report.h1);
    fill(TheoremId::ion2, detail::baseline_terms(iv, TheoremId::ion2, am, aa, ab, params),
         report.lhs_midpoint, report.hp);
    fill(TheoremId::eq1, detail::baseline_terms(iv, TheoremId::eq1, am, aa, ab, params),
         report.lhs_midpoint, report.h1);
    fill(TheoremId::eq2, detail::baseline_terms(iv, TheoremId::eq2, am, aa, ab, params),
         report.lhs_midpoint, report.hp);
    fill(TheoremId::eq3, detail::baseline_terms(iv, TheoremId::eq3, am, aa, ab, params),
         report.lhs_midpoint, report.hq);

    return report;
}

/// Choosing x = (a+b)/2 collapses each x-parameterized bound to its midpoint
/// baseline: thm6 -> eq1, thm7 -> eq2, thm8 -> eq3. Pure arithmetic identity,
/// no quadrature involved.
struct ReductionCheck {
    struct Pair {
        double at_midpoint = 0.0;
        double baseline = 0.0;
        double rel_diff = 0.0;
        bool pass = false;
    };
    Pair eq1, eq2, eq3;
    bool all_pass = false;
};

inline ReductionCheck reduction_check(const DifferentiableFn& f, const Interval& iv,
                                      const ExponentParams& params,
                                      double tol = kReductionTol) {
    params.validate();
    double m = iv.midpoint();
    auto make_pair = [tol](double lhs, double rhs) {
        ReductionCheck::Pair pair;
        pair.at_midpoint = lhs;
        pair.baseline = rhs;
        double scale = std::max(std::fabs(lhs), std::fabs(rhs));
        pair.rel_diff = scale == 0.0 ? 0.0 : std::fabs(lhs - rhs) / scale;
        pair.pass = pair.rel_diff <= tol;
        return pair;
    };
    ReductionCheck check;
    check.eq1 = make_pair(bound_thm6(f, iv, m), bound_baseline(f, iv, TheoremId::eq1, params));
    check.eq2 =
        make_pair(bound_thm7(f, iv, m, params.p), bound_baseline(f, iv, TheoremId::eq2, params));
    check.eq3 =
        make_pair(bound_thm8(f, iv, m, params.q), bound_baseline(f, iv, TheoremId::eq3, params));
    check.all_pass = check.eq1.pass && check.eq2.pass && check.eq3.pass;
    return check;
}

} // namespace hh
