#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "hh/bounds.hpp"
#include "hh/errors.hpp"
#include "hh/function.hpp"
#include "hh/generator.hpp"
#include "hh/interval.hpp"
#include "hh/minimize.hpp"
#include "hh/quadrature.hpp"

namespace hh {

struct SweepRow {
    double x = 0.0;
    double lhs = 0.0;
    double rhs6 = 0.0, rhs7 = 0.0, rhs8 = 0.0;
    double slack6 = 0.0, slack7 = 0.0, slack8 = 0.0;
};

struct SweepTable {
    std::vector<SweepRow> rows;
    std::string function;
    Interval interval{0.0, 1.0};
    ExponentParams params;
    double tol = 1e-10;
    double quadrature_error = 0.0;
};

/// Tabulate deviation and the three x-parameterized bounds over an n-point
/// uniform grid of x. The mean integral does not depend on x and is computed
/// once for the whole sweep.
inline SweepTable sweep_x(const DifferentiableFn& f, const Interval& iv, long n,
                          const ExponentParams& params, double tol) {
    if (n < 2) throw ParameterError("sweep_x requires n >= 2");
    params.validate();

    SweepTable table;
    table.function = f.id;
    table.interval = iv;
    table.params = params;
    table.tol = tol;

    QuadratureResult mean_q = integrate_adaptive(f.value, iv, tol);
    double mean = mean_q.value / iv.width();
    table.quadrature_error = mean_q.error_estimate / iv.width();

    double fa = f.value(iv.a);
    double fb = f.value(iv.b);
    double aa = std::fabs(f.deriv(iv.a));
    double ab = std::fabs(f.deriv(iv.b));

    table.rows.reserve(static_cast<std::size_t>(n));
    for (long i = 0; i < n; ++i) {
        SweepRow row;
        row.x = i == 0 ? iv.a
              : i == n - 1 ? iv.b
                           : iv.a + iv.width() * (static_cast<double>(i) / (n - 1));
        double ax = std::fabs(f.deriv(row.x));
        row.lhs = std::fabs(detail::endpoint_weight(iv, row.x, fa, fb) - mean);
        row.rhs6 = detail::thm6_terms(iv, row.x, ax, aa, ab);
        row.rhs7 = detail::thm7_terms(iv, row.x, ax, aa, ab, params.p);
        row.rhs8 = detail::thm8_terms(iv, row.x, ax, aa, ab, params.q);
        row.slack6 = row.rhs6 - row.lhs;
        row.slack7 = row.rhs7 - row.lhs;
        row.slack8 = row.rhs8 - row.lhs;
        table.rows.push_back(row);
    }
    return table;
}

struct OptimalXResult {
    TheoremId id = TheoremId::thm6;
    MinimizationResult minimum;
    double midpoint_value = 0.0; // bound at the default choice x = (a+b)/2
};

/// Search [a,b] for the x minimizing one of the x-parameterized bounds.
/// Exploratory tooling: the midpoint value is reported for comparison and
/// the optimum never loses to it.
inline OptimalXResult optimal_x(const DifferentiableFn& f, const Interval& iv, TheoremId id,
                                const ExponentParams& params, double tol) {
    params.validate();
    double aa = std::fabs(f.deriv(iv.a));
    double ab = std::fabs(f.deriv(iv.b));
    auto bound_at = [&](double x) {
        double ax = std::fabs(f.deriv(x));
        switch (id) {
            case TheoremId::thm6: return detail::thm6_terms(iv, x, ax, aa, ab);
            case TheoremId::thm7: return detail::thm7_terms(iv, x, ax, aa, ab, params.p);
            case TheoremId::thm8: return detail::thm8_terms(iv, x, ax, aa, ab, params.q);
            default: throw ParameterError("optimal_x: id must be thm6, thm7 or thm8");
        }
    };
    OptimalXResult result;
    result.id = id;
    result.minimum = minimize_scalar(bound_at, iv, tol);
    result.midpoint_value = bound_at(iv.midpoint());
    return result;
}

struct FuzzParamsGrid {
    std::vector<double> ps{1.5, 2.0, 3.0, 10.0};
    std::vector<double> qs{1.0, 1.5, 2.0, 5.0};
};

struct FuzzViolation {
    long trial = 0;
    std::uint64_t seed = 0;
    std::string function;
    double x = 0.0;
    std::string entry; // "thm6", "thm7(p=2)", ...
    double slack = 0.0;
};

/// Aggregate of a fuzz campaign. Deterministic for a fixed config: per-trial
/// state is derived from seed xor trial index through a splittable generator,
/// and all reductions are order-insensitive.
struct FuzzSummary {
    std::uint64_t seed = 0;
    long trials = 0;
    long violations = 0;
    long cert_failures = 0;
    long errors = 0;
    double min_slack6 = std::numeric_limits<double>::infinity();
    double min_slack7 = std::numeric_limits<double>::infinity();
    double min_slack8 = std::numeric_limits<double>::infinity();
    double max_lemma_residual = 0.0;
    /// lhs/rhs ratio in 20 uniform buckets over [0,1]; ratio is 0 when
    /// rhs = lhs = 0, and rhs = 0 < lhs is flagged separately (a violation).
    std::array<long, 20> ratio_histogram{};
    long flagged_rhs_zero = 0;
    std::vector<FuzzViolation> violation_samples; // capped
    std::vector<std::string> error_samples;       // capped
};

inline constexpr std::array<Family, 3> kAllFamilies = {
    Family::monomial_kink, Family::monotone_exp, Family::shifted_odd_power};

/// Run `trials` generated-function verifications. Families cycle per trial
/// (restrict via the `families` argument); p and q range over the grid.
/// Hypotheses are certified per trial and violations carry reproduction data.
inline FuzzSummary fuzz(const GeneratorConfig& base, long trials, const FuzzParamsGrid& grid,
                        double tol,
                        std::vector<Family> families = {kAllFamilies.begin(),
                                                        kAllFamilies.end()}) {
    if (trials < 1) throw ParameterError("fuzz requires trials >= 1");
    if (grid.ps.empty() || grid.qs.empty())
        throw ParameterError("fuzz requires non-empty parameter grids");
    if (families.empty()) families = {base.family};
    constexpr std::size_t kMaxSamples = 16;

    FuzzSummary summary;
    summary.seed = base.seed;
    summary.trials = trials;

    const Interval& iv = base.interval;
    for (long trial = 0; trial < trials; ++trial) {
        SplitMix64 stream(base.seed ^ static_cast<std::uint64_t>(trial));
        GeneratorConfig config = base;
        config.seed = stream.next();
        config.family = families[static_cast<std::size_t>(trial) % families.size()];
        double x = iv.a + iv.width() * stream.uniform01();

        try {
            GeneratedFunction gen = generate(config);
            const DifferentiableFn& f = gen.fn;

            QuadratureResult mean_q = integrate_adaptive(f.value, iv, tol);
            double mean = mean_q.value / iv.width();
            double qerr = mean_q.error_estimate / iv.width();
            double fa = f.value(iv.a);
            double fb = f.value(iv.b);
            double lhs = std::fabs(detail::endpoint_weight(iv, x, fa, fb) - mean);

            double residual = lemma1_residual(f, iv, x, tol);
            if (residual > summary.max_lemma_residual) summary.max_lemma_residual = residual;

            double ax = std::fabs(f.deriv(x));
            double aa = std::fabs(f.deriv(iv.a));
            double ab = std::fabs(f.deriv(iv.b));
            double slack_floor = -(qerr + kSlackTol);
            auto abs_deriv = [&f](double t) { return std::fabs(f.deriv(t)); };

            auto record = [&](double rhs, const std::string& entry, double& min_slack) {
                double slack = rhs - lhs;
                if (slack < min_slack) min_slack = slack;
                if (rhs == 0.0) {
                    if (lhs == 0.0) {
                        ++summary.ratio_histogram[0];
                    } else {
                        ++summary.flagged_rhs_zero;
                    }
                } else {
                    // lhs <= rhs up to quadrature noise, so clamp into [0,1]
                    double ratio = lhs / rhs;
                    auto bucket = ratio >= 1.0
                                      ? std::size_t{19}
                                      : static_cast<std::size_t>(ratio * 20.0);
                    if (bucket > 19) bucket = 19;
                    ++summary.ratio_histogram[bucket];
                }
                if (slack < slack_floor) {
                    ++summary.violations;
                    if (summary.violation_samples.size() < kMaxSamples)
                        summary.violation_samples.push_back(
                            {trial, config.seed, f.id, x, entry, slack});
                }
            };
            auto certify_power = [&](double power) {
                HypothesisResult h = detail::certify(
                    [&](double t) { return std::pow(abs_deriv(t), power); }, iv,
                    kDefaultCertSamples, kDefaultCertTol);
                if (!h.certified()) ++summary.cert_failures;
                return h.certified();
            };

            HypothesisResult h1 =
                detail::certify(abs_deriv, iv, kDefaultCertSamples, kDefaultCertTol);
            if (h1.certified())
                record(detail::thm6_terms(iv, x, ax, aa, ab), "thm6", summary.min_slack6);
            else
                ++summary.cert_failures;

            for (double p : grid.ps)
                if (certify_power(p / (p - 1.0)))
                    record(detail::thm7_terms(iv, x, ax, aa, ab, p),
                           "thm7(p=" + detail::format_double_shortest(p) + ")",
                           summary.min_slack7);
            for (double q : grid.qs)
                if (certify_power(q))
                    record(detail::thm8_terms(iv, x, ax, aa, ab, q),
                           "thm8(q=" + detail::format_double_shortest(q) + ")",
                           summary.min_slack8);
        } catch (const std::exception& err) {
            ++summary.errors;
            if (summary.error_samples.size() < kMaxSamples)
                summary.error_samples.push_back("trial " + std::to_string(trial) + ": " +
                                                err.what());
        }
    }
    return summary;
}

} // namespace hh
