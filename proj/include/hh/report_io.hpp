#pragma once

#include <charconv>
#include <cmath>
#include <cstdio>
#include <string>
#include <string_view>
#include <vector>

#include "hh/analysis.hpp"
#include "hh/bounds.hpp"
#include "hh/catalog.hpp"
#include "hh/version.hpp"

// Report serialization. JSON output is schema-stable: identical inputs yield
// byte-identical text, with floating values at 17 significant digits. CSV
// uses the shortest representation that round-trips.

namespace hh {
namespace io {

/// 17 significant digits; enough to reconstruct the exact double.
inline std::string num17(double v) {
    if (!std::isfinite(v)) return "null";
    char buf[48];
    auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

/// Shortest round-trip representation.
inline std::string num_shortest(double v) {
    if (!std::isfinite(v)) return "nan";
    char buf[40];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

inline std::string json_string(std::string_view s) {
    std::string out = "\"";
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\r': out += "\\r"; break;
            case '\t': out += "\\t"; break;
            default:
                if (static_cast<unsigned char>(c) < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof(buf), "\\u%04x", c);
                    out += buf;
                } else {
                    out += c;
                }
        }
    }
    out += '"';
    return out;
}

inline std::string interval_json(const Interval& iv) {
    return "{\"a\": " + num17(iv.a) + ", \"b\": " + num17(iv.b) + "}";
}

inline std::string params_json(const ExponentParams& params) {
    return "{\"p\": " + num17(params.p) + ", \"q\": " + num17(params.q) + "}";
}

// ---------------------------------------------------------------------------
// verify
// ---------------------------------------------------------------------------

inline std::string verify_json(const BoundReport& r) {
    std::string out = "{\n";
    out += "  \"command\": \"verify\",\n";
    out += "  \"function\": " + json_string(r.function) + ",\n";
    out += "  \"interval\": " + interval_json(r.interval) + ",\n";
    out += "  \"x\": " + num17(r.x) + ",\n";
    out += "  \"params\": " + params_json(r.params) + ",\n";
    out += "  \"lhs\": " + num17(r.lhs) + ",\n";
    auto per_theorem = [&](const char* field, auto&& project) {
        std::string block = "  \"";
        block += field;
        block += "\": {";
        bool first = true;
        for (TheoremId id : kAllTheorems) {
            if (!first) block += ", ";
            first = false;
            block += std::string("\"") + theorem_name(id) + "\": " + project(r.entry(id));
        }
        block += "}";
        return block;
    };
    out += per_theorem("bounds", [](const BoundEntry& e) { return num17(e.rhs); }) + ",\n";
    out += per_theorem("slacks", [](const BoundEntry& e) { return num17(e.slack); }) + ",\n";
    out += "  \"hypotheses\": {\"h1\": " + std::string(r.h1.certified() ? "true" : "false") +
           ", \"hp\": " + (r.hp.certified() ? "true" : "false") +
           ", \"hq\": " + (r.hq.certified() ? "true" : "false") + "},\n";
    out += "  \"lemma1_residual\": " + num17(r.lemma1_residual) + ",\n";
    out += "  \"quadrature_error\": " + num17(r.quadrature_error) + ",\n";
    out += per_theorem("satisfied",
                       [](const BoundEntry& e) {
                           return json_string(entry_status_name(e.status));
                       }) +
           ",\n";
    out += "  \"tool_version\": " + json_string(kToolVersion) + "\n";
    out += "}\n";
    return out;
}

inline std::string verify_text(const BoundReport& r) {
    std::string out;
    out += "function:  " + r.function + "\n";
    out += "interval:  [" + num_shortest(r.interval.a) + ", " + num_shortest(r.interval.b) +
           "]   x = " + num_shortest(r.x) + "   p = " + num_shortest(r.params.p) +
           "   q = " + num_shortest(r.params.q) + "\n";
    out += "lhs (deviation at x):        " + num_shortest(r.lhs) + "\n";
    out += "lhs (deviation at midpoint): " + num_shortest(r.lhs_midpoint) + "\n";
    out += "lemma1 residual:   " + num_shortest(r.lemma1_residual) + "\n";
    out += "quadrature error:  " + num_shortest(r.quadrature_error) + "\n";
    auto hyp = [](const HypothesisResult& h) {
        if (h.certified()) return std::string("certified (sampling evidence, not proof)");
        if (!h.evaluable) return "not evaluable: " + h.error;
        std::string s = "counterexample found";
        if (h.verdict.counterexample) {
            const auto& c = *h.verdict.counterexample;
            s += " (x=" + num_shortest(c.x) + ", y=" + num_shortest(c.y) +
                 ", lambda=" + num_shortest(c.lambda) +
                 ", excess=" + num_shortest(h.verdict.margin) + ")";
        }
        return s;
    };
    out += "hypothesis |f'| quasi-convex:          " + hyp(r.h1) + "\n";
    out += "hypothesis |f'|^(p/(p-1)) quasi-convex: " + hyp(r.hp) + "\n";
    out += "hypothesis |f'|^q quasi-convex:         " + hyp(r.hq) + "\n";
    out += "bounds (baselines compare against the midpoint deviation):\n";
    for (TheoremId id : kAllTheorems) {
        const BoundEntry& e = r.entry(id);
        out += "  " + std::string(theorem_name(id)) + ": rhs = " + num_shortest(e.rhs) +
               ", slack = " + num_shortest(e.slack) + "  [" + entry_status_name(e.status) +
               "]\n";
    }
    return out;
}

// ---------------------------------------------------------------------------
// sweep
// ---------------------------------------------------------------------------

inline constexpr const char* kSweepCsvHeader = "x,lhs,rhs6,rhs7,rhs8,slack6,slack7,slack8";

inline std::string sweep_csv(const SweepTable& t) {
    std::string out = kSweepCsvHeader;
    out += '\n';
    for (const SweepRow& row : t.rows) {
        out += num_shortest(row.x) + ',' + num_shortest(row.lhs) + ',' +
               num_shortest(row.rhs6) + ',' + num_shortest(row.rhs7) + ',' +
               num_shortest(row.rhs8) + ',' + num_shortest(row.slack6) + ',' +
               num_shortest(row.slack7) + ',' + num_shortest(row.slack8) + '\n';
    }
    return out;
}

inline std::string sweep_json(const SweepTable& t) {
    std::string out = "{\n";
    out += "  \"command\": \"sweep\",\n";
    out += "  \"function\": " + json_string(t.function) + ",\n";
    out += "  \"interval\": " + interval_json(t.interval) + ",\n";
    out += "  \"params\": " + params_json(t.params) + ",\n";
    out += "  \"tol\": " + num17(t.tol) + ",\n";
    out += "  \"quadrature_error\": " + num17(t.quadrature_error) + ",\n";
    out += "  \"rows\": [\n";
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
        const SweepRow& r = t.rows[i];
        out += "    {\"x\": " + num17(r.x) + ", \"lhs\": " + num17(r.lhs) +
               ", \"rhs6\": " + num17(r.rhs6) + ", \"rhs7\": " + num17(r.rhs7) +
               ", \"rhs8\": " + num17(r.rhs8) + ", \"slack6\": " + num17(r.slack6) +
               ", \"slack7\": " + num17(r.slack7) + ", \"slack8\": " + num17(r.slack8) + "}";
        out += i + 1 < t.rows.size() ? ",\n" : "\n";
    }
    out += "  ],\n";
    out += "  \"tool_version\": " + json_string(kToolVersion) + "\n";
    out += "}\n";
    return out;
}

inline std::string sweep_text(const SweepTable& t) {
    std::string out = "sweep of " + t.function + " on [" + num_shortest(t.interval.a) + ", " +
                      num_shortest(t.interval.b) + "], p = " + num_shortest(t.params.p) +
                      ", q = " + num_shortest(t.params.q) + "\n";
    out += sweep_csv(t);
    return out;
}

// ---------------------------------------------------------------------------
// optimize
// ---------------------------------------------------------------------------

inline std::string optimize_json(const std::string& function, const Interval& iv,
                                 const ExponentParams& params, double tol,
                                 const std::vector<OptimalXResult>& results) {
    std::string out = "{\n";
    out += "  \"command\": \"optimize\",\n";
    out += "  \"function\": " + json_string(function) + ",\n";
    out += "  \"interval\": " + interval_json(iv) + ",\n";
    out += "  \"params\": " + params_json(params) + ",\n";
    out += "  \"tol\": " + num17(tol) + ",\n";
    out += "  \"note\": \"exploratory: the default choice is x = (a+b)/2\",\n";
    out += "  \"results\": {";
    for (std::size_t i = 0; i < results.size(); ++i) {
        const OptimalXResult& r = results[i];
        if (i) out += ", ";
        out += std::string("\"") + theorem_name(r.id) + "\": {\"argmin\": " +
               num17(r.minimum.argmin) + ", \"min_value\": " + num17(r.minimum.min_value) +
               ", \"midpoint_value\": " + num17(r.midpoint_value) +
               ", \"iterations\": " + std::to_string(r.minimum.iterations) + "}";
    }
    out += "},\n";
    out += "  \"tool_version\": " + json_string(kToolVersion) + "\n";
    out += "}\n";
    return out;
}

inline std::string optimize_text(const std::string& function,
                                 const std::vector<OptimalXResult>& results) {
    std::string out = "optimal evaluation point for " + function +
                      " (exploratory; default is the midpoint):\n";
    for (const OptimalXResult& r : results) {
        out += std::string("  ") + theorem_name(r.id) + ": argmin x = " +
               num_shortest(r.minimum.argmin) + ", bound = " + num_shortest(r.minimum.min_value) +
               " (midpoint bound = " + num_shortest(r.midpoint_value) + ", " +
               std::to_string(r.minimum.iterations) + " refinement iterations)\n";
    }
    return out;
}

// ---------------------------------------------------------------------------
// fuzz
// ---------------------------------------------------------------------------

inline std::string fuzz_json(const FuzzSummary& s, const Interval& iv,
                             const FuzzParamsGrid& grid, const std::vector<Family>& families) {
    std::string out = "{\n";
    out += "  \"command\": \"fuzz\",\n";
    out += "  \"seed\": " + std::to_string(s.seed) + ",\n";
    out += "  \"trials\": " + std::to_string(s.trials) + ",\n";
    out += "  \"interval\": " + interval_json(iv) + ",\n";
    out += "  \"families\": [";
    for (std::size_t i = 0; i < families.size(); ++i) {
        if (i) out += ", ";
        out += json_string(family_name(families[i]));
    }
    out += "],\n";
    auto grid_json = [](const std::vector<double>& v) {
        std::string g = "[";
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (i) g += ", ";
            g += num17(v[i]);
        }
        return g + "]";
    };
    out += "  \"p_grid\": " + grid_json(grid.ps) + ",\n";
    out += "  \"q_grid\": " + grid_json(grid.qs) + ",\n";
    out += "  \"violations\": " + std::to_string(s.violations) + ",\n";
    out += "  \"cert_failures\": " + std::to_string(s.cert_failures) + ",\n";
    out += "  \"errors\": " + std::to_string(s.errors) + ",\n";
    out += "  \"min_slack\": {\"thm6\": " + num17(s.min_slack6) +
           ", \"thm7\": " + num17(s.min_slack7) + ", \"thm8\": " + num17(s.min_slack8) + "},\n";
    out += "  \"max_lemma_residual\": " + num17(s.max_lemma_residual) + ",\n";
    out += "  \"ratio_histogram\": [";
    for (std::size_t i = 0; i < s.ratio_histogram.size(); ++i) {
        if (i) out += ", ";
        out += std::to_string(s.ratio_histogram[i]);
    }
    out += "],\n";
    out += "  \"flagged_rhs_zero\": " + std::to_string(s.flagged_rhs_zero) + ",\n";
    out += "  \"violation_samples\": [";
    for (std::size_t i = 0; i < s.violation_samples.size(); ++i) {
        const FuzzViolation& v = s.violation_samples[i];
        if (i) out += ", ";
        out += "{\"trial\": " + std::to_string(v.trial) + ", \"seed\": " +
               std::to_string(v.seed) + ", \"function\": " + json_string(v.function) +
               ", \"x\": " + num17(v.x) + ", \"entry\": " + json_string(v.entry) +
               ", \"slack\": " + num17(v.slack) + "}";
    }
    out += "],\n";
    out += "  \"error_samples\": [";
    for (std::size_t i = 0; i < s.error_samples.size(); ++i) {
        if (i) out += ", ";
        out += json_string(s.error_samples[i]);
    }
    out += "],\n";
    out += "  \"tool_version\": " + json_string(kToolVersion) + "\n";
    out += "}\n";
    return out;
}

inline std::string fuzz_text(const FuzzSummary& s) {
    std::string out;
    out += "fuzz campaign: " + std::to_string(s.trials) + " trials, seed " +
           std::to_string(s.seed) + "\n";
    out += "violations:        " + std::to_string(s.violations) + "\n";
    out += "cert failures:     " + std::to_string(s.cert_failures) + "\n";
    out += "errors:            " + std::to_string(s.errors) + "\n";
    out += "min slack thm6:    " + num_shortest(s.min_slack6) + "\n";
    out += "min slack thm7:    " + num_shortest(s.min_slack7) + "\n";
    out += "min slack thm8:    " + num_shortest(s.min_slack8) + "\n";
    out += "max lemma residual: " + num_shortest(s.max_lemma_residual) + "\n";
    out += "lhs/rhs histogram (20 buckets over [0,1]):";
    for (long n : s.ratio_histogram) out += " " + std::to_string(n);
    out += "\n";
    for (const FuzzViolation& v : s.violation_samples)
        out += "VIOLATION trial " + std::to_string(v.trial) + " " + v.entry + " slack " +
               num_shortest(v.slack) + " function " + v.function + " x " + num_shortest(v.x) +
               " seed " + std::to_string(v.seed) + "\n";
    for (const std::string& e : s.error_samples) out += "ERROR " + e + "\n";
    return out;
}

// ---------------------------------------------------------------------------
// catalog
// ---------------------------------------------------------------------------

inline std::string catalog_json() {
    std::string out = "{\n";
    out += "  \"command\": \"catalog\",\n";
    out += "  \"entries\": [\n";
    const auto& entries = catalog();
    for (std::size_t i = 0; i < entries.size(); ++i) {
        const CatalogEntry& e = entries[i];
        out += "    {\"name\": " + json_string(e.name) + ", \"expression\": " +
               json_string(e.expression) + ", \"interval\": " + interval_json(e.interval) +
               ", \"note\": " + json_string(e.note) +
               ", \"foil\": " + (e.foil ? "true" : "false") + "}";
        out += i + 1 < entries.size() ? ",\n" : "\n";
    }
    out += "  ],\n";
    out += "  \"tool_version\": " + json_string(kToolVersion) + "\n";
    out += "}\n";
    return out;
}

inline std::string catalog_csv() {
    std::string out = "name,expression,a,b,foil,note\n";
    for (const CatalogEntry& e : catalog()) {
        out += e.name + ",\"" + e.expression + "\"," + num_shortest(e.interval.a) + ',' +
               num_shortest(e.interval.b) + ',' + (e.foil ? "yes" : "no") + ",\"" + e.note +
               "\"\n";
    }
    return out;
}

inline std::string catalog_text() {
    std::string out = "built-in functions (use --f catalog:NAME):\n";
    for (const CatalogEntry& e : catalog()) {
        out += "  " + e.name + std::string(e.name.size() < 12 ? 12 - e.name.size() : 1, ' ') +
               e.expression + "  on [" + num_shortest(e.interval.a) + ", " +
               num_shortest(e.interval.b) + "]  " + (e.foil ? "[FOIL] " : "") + e.note + "\n";
    }
    return out;
}

// ---------------------------------------------------------------------------
// reduce
// ---------------------------------------------------------------------------

inline std::string reduction_json(const std::string& function, const Interval& iv,
                                  const ExponentParams& params, const ReductionCheck& c) {
    auto pair_json = [](const ReductionCheck::Pair& p) {
        return "{\"at_midpoint\": " + num17(p.at_midpoint) +
               ", \"baseline\": " + num17(p.baseline) + ", \"rel_diff\": " + num17(p.rel_diff) +
               ", \"pass\": " + (p.pass ? "true" : "false") + "}";
    };
    std::string out = "{\n";
    out += "  \"command\": \"reduce\",\n";
    out += "  \"function\": " + json_string(function) + ",\n";
    out += "  \"interval\": " + interval_json(iv) + ",\n";
    out += "  \"params\": " + params_json(params) + ",\n";
    out += "  \"pairs\": {\"thm6_eq1\": " + pair_json(c.eq1) +
           ", \"thm7_eq2\": " + pair_json(c.eq2) + ", \"thm8_eq3\": " + pair_json(c.eq3) +
           "},\n";
    out += std::string("  \"all_pass\": ") + (c.all_pass ? "true" : "false") + ",\n";
    out += "  \"tool_version\": " + json_string(kToolVersion) + "\n";
    out += "}\n";
    return out;
}

inline std::string reduction_text(const std::string& function, const ReductionCheck& c) {
    auto line = [](const char* label, const ReductionCheck::Pair& p) {
        return std::string("  ") + label + ": at midpoint " + num_shortest(p.at_midpoint) +
               " vs baseline " + num_shortest(p.baseline) + " (rel diff " +
               num_shortest(p.rel_diff) + ") " + (p.pass ? "PASS" : "FAIL") + "\n";
    };
    std::string out = "midpoint reductions for " + function + ":\n";
    out += line("thm6 -> eq1", c.eq1);
    out += line("thm7 -> eq2", c.eq2);
    out += line("thm8 -> eq3", c.eq3);
    return out;
}

} // namespace io
} // namespace hh
