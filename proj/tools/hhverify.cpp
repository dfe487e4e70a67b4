// hhverify: numerically verify, reduce, and explore endpoint-weighted
// trapezoid-type bounds for functions with quasi-convex derivative magnitude.

#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "hh/analysis.hpp"
#include "hh/bounds.hpp"
#include "hh/catalog.hpp"
#include "hh/report_io.hpp"
#include "hh/version.hpp"

namespace {

using namespace hh;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitNotCertified = 2;
constexpr int kExitViolation = 3;

struct Options {
    std::string fsource;
    double a = 0.0;
    double b = 1.0;
    double x = 0.0;
    double p = 2.0;
    double q = 2.0;
    long n = 101;
    long trials = 1000;
    std::uint64_t seed = 42;
    double tol = 1e-10;
    std::string format = "text";
    std::string output;

    CLI::Option* a_opt = nullptr;
    CLI::Option* b_opt = nullptr;
    CLI::Option* x_opt = nullptr;
    CLI::Option* p_opt = nullptr;
    CLI::Option* q_opt = nullptr;
};

void add_interval_flags(CLI::App* cmd, Options& o) {
    o.a_opt = cmd->add_option("--a", o.a, "left endpoint (default 0)");
    o.b_opt = cmd->add_option("--b", o.b, "right endpoint (default 1)");
}

void add_format_flags(CLI::App* cmd, Options& o) {
    cmd->add_option("--format", o.format, "output format")
        ->check(CLI::IsMember({"json", "csv", "text"}));
    cmd->add_option("--output,-o", o.output, "write the report to this file");
    cmd->add_option("--tol", o.tol, "quadrature tolerance (default 1e-10)");
}

void add_function_flag(CLI::App* cmd, Options& o) {
    cmd->add_option("--f", o.fsource,
                    "function: expression in x, or catalog:NAME (see `catalog`)")
        ->required();
}

void add_param_flags(CLI::App* cmd, Options& o) {
    o.p_opt = cmd->add_option("--p", o.p, "Hoelder exponent p > 1 (default 2)");
    o.q_opt = cmd->add_option("--q", o.q, "power-mean exponent q >= 1 (default 2)");
}

/// Resolve --f (expression or catalog:NAME) plus --a/--b into a function and
/// interval. Catalog entries supply their default interval unless overridden.
struct ResolvedFunction {
    DifferentiableFn fn;
    Interval interval;
};

ResolvedFunction resolve_function(const Options& o) {
    double a = o.a;
    double b = o.b;
    if (o.fsource.rfind("catalog:", 0) == 0) {
        const CatalogEntry& entry = catalog_entry(o.fsource.substr(8));
        if (!(o.a_opt && o.a_opt->count())) a = entry.interval.a;
        if (!(o.b_opt && o.b_opt->count())) b = entry.interval.b;
        return {catalog_fn(entry), Interval{a, b}};
    }
    return {make_fn(parse(o.fsource)), Interval{a, b}};
}

void emit(const std::string& report, const std::string& output) {
    if (output.empty()) {
        std::cout << report;
        return;
    }
    std::ofstream out(output, std::ios::binary);
    if (!out) throw ParameterError("cannot open output file '" + output + "'");
    out << report;
}

int run_verify(const Options& o) {
    if (o.format == "csv") throw ParameterError("csv format is not supported for verify");
    ResolvedFunction rf = resolve_function(o);
    double x = (o.x_opt && o.x_opt->count()) ? o.x : rf.interval.midpoint();
    if (!rf.interval.contains(x)) throw ParameterError("require x in [a, b]");
    ExponentParams params{o.p, o.q};
    if (!(o.tol > 0.0)) throw ParameterError("require tol > 0");

    BoundReport report = verify(rf.fn, rf.interval, x, params, o.tol);
    emit(o.format == "json" ? io::verify_json(report) : io::verify_text(report), o.output);

    if (report.any_violation()) {
        std::cerr << "bound violation; reproduction:\n"
                  << "{\"command\": \"verify\", \"function\": " << io::json_string(rf.fn.id)
                  << ", \"interval\": " << io::interval_json(rf.interval)
                  << ", \"x\": " << io::num17(x) << ", \"params\": " << io::params_json(params)
                  << ", \"tol\": " << io::num17(o.tol) << "}\n";
        return kExitViolation;
    }
    if (report.any_uncertified()) {
        std::cerr << "one or more quasi-convexity hypotheses could not be certified\n";
        return kExitNotCertified;
    }
    return kExitOk;
}

int run_sweep(const Options& o) {
    ResolvedFunction rf = resolve_function(o);
    ExponentParams params{o.p, o.q};
    if (o.n < 2) throw ParameterError("require n >= 2");
    if (!(o.tol > 0.0)) throw ParameterError("require tol > 0");

    SweepTable table = sweep_x(rf.fn, rf.interval, o.n, params, o.tol);
    std::string out = o.format == "json"  ? io::sweep_json(table)
                      : o.format == "csv" ? io::sweep_csv(table)
                                          : io::sweep_text(table);
    emit(out, o.output);

    auto absd = [&](double t) { return std::fabs(rf.fn.deriv(t)); };
    HypothesisResult h1 = detail::certify(absd, rf.interval, kDefaultCertSamples, kDefaultCertTol);
    HypothesisResult hp = detail::certify(
        [&](double t) { return std::pow(absd(t), params.conjugate()); }, rf.interval,
        kDefaultCertSamples, kDefaultCertTol);
    HypothesisResult hq = detail::certify(
        [&](double t) { return std::pow(absd(t), params.q); }, rf.interval,
        kDefaultCertSamples, kDefaultCertTol);

    double floor = -(table.quadrature_error + kSlackTol);
    bool violation = false;
    for (const SweepRow& row : table.rows) {
        if ((h1.certified() && row.slack6 < floor) || (hp.certified() && row.slack7 < floor) ||
            (hq.certified() && row.slack8 < floor)) {
            violation = true;
            std::cerr << "bound violation at x = " << io::num17(row.x) << " for "
                      << rf.fn.id << "\n";
        }
    }
    if (violation) return kExitViolation;
    if (!h1.certified() || !hp.certified() || !hq.certified()) {
        std::cerr << "one or more quasi-convexity hypotheses could not be certified; "
                     "slack columns are informational only\n";
        return kExitNotCertified;
    }
    return kExitOk;
}

int run_optimize(const Options& o) {
    if (o.format == "csv") throw ParameterError("csv format is not supported for optimize");
    ResolvedFunction rf = resolve_function(o);
    ExponentParams params{o.p, o.q};
    if (!(o.tol > 0.0)) throw ParameterError("require tol > 0");

    std::vector<OptimalXResult> results;
    for (TheoremId id : {TheoremId::thm6, TheoremId::thm7, TheoremId::thm8})
        results.push_back(optimal_x(rf.fn, rf.interval, id, params, o.tol));

    emit(o.format == "json" ? io::optimize_json(rf.fn.id, rf.interval, params, o.tol, results)
                            : io::optimize_text(rf.fn.id, results),
         o.output);
    return kExitOk;
}

int run_fuzz(const Options& o) {
    if (o.format == "csv") throw ParameterError("csv format is not supported for fuzz");
    Interval iv{o.a, o.b};
    if (o.trials < 1) throw ParameterError("require trials >= 1");
    if (!(o.tol > 0.0)) throw ParameterError("require tol > 0");

    GeneratorConfig base;
    base.seed = o.seed;
    base.interval = iv;

    FuzzParamsGrid grid;
    if (o.p_opt && o.p_opt->count()) {
        if (!(o.p > 1.0)) throw ParameterError("require p > 1");
        grid.ps = {o.p};
    }
    if (o.q_opt && o.q_opt->count()) {
        if (!(o.q >= 1.0)) throw ParameterError("require q >= 1");
        grid.qs = {o.q};
    }

    std::vector<Family> families{kAllFamilies.begin(), kAllFamilies.end()};
    FuzzSummary summary = fuzz(base, o.trials, grid, o.tol, families);

    emit(o.format == "json" ? io::fuzz_json(summary, iv, grid, families)
                            : io::fuzz_text(summary),
         o.output);

    if (summary.violations > 0) {
        std::cerr << summary.violations << " bound violation(s); reproduction data is in "
                     "the report's violation_samples\n";
        return kExitViolation;
    }
    if (summary.cert_failures > 0) {
        std::cerr << summary.cert_failures
                  << " hypothesis certification failure(s) on by-construction inputs\n";
        return kExitNotCertified;
    }
    return kExitOk;
}

int run_catalog(const Options& o) {
    std::string out = o.format == "json"  ? io::catalog_json()
                      : o.format == "csv" ? io::catalog_csv()
                                          : io::catalog_text();
    emit(out, o.output);
    return kExitOk;
}

int run_reduce(const Options& o) {
    if (o.format == "csv") throw ParameterError("csv format is not supported for reduce");
    ResolvedFunction rf = resolve_function(o);
    ExponentParams params{o.p, o.q};

    ReductionCheck check = reduction_check(rf.fn, rf.interval, params);
    emit(o.format == "json" ? io::reduction_json(rf.fn.id, rf.interval, params, check)
                            : io::reduction_text(rf.fn.id, check),
         o.output);
    if (!check.all_pass) {
        std::cerr << "midpoint reduction identity failed beyond tolerance\n";
        return kExitViolation;
    }
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"numerical verification of endpoint-weighted trapezoid-type bounds "
                 "for functions whose derivative magnitude is quasi-convex"};
    app.set_version_flag("--version", hh::kToolVersion);
    app.require_subcommand(1);

    Options o;

    CLI::App* verify_cmd = app.add_subcommand(
        "verify", "verify all bounds for one function, interval, and evaluation point");
    add_function_flag(verify_cmd, o);
    add_interval_flags(verify_cmd, o);
    o.x_opt = verify_cmd->add_option("--x", o.x, "evaluation point (default midpoint)");
    add_param_flags(verify_cmd, o);
    add_format_flags(verify_cmd, o);

    CLI::App* sweep_cmd =
        app.add_subcommand("sweep", "tabulate deviation and bounds over a grid of x");
    add_function_flag(sweep_cmd, o);
    add_interval_flags(sweep_cmd, o);
    sweep_cmd->add_option("--n", o.n, "grid size (default 101)");
    add_param_flags(sweep_cmd, o);
    add_format_flags(sweep_cmd, o);

    CLI::App* optimize_cmd = app.add_subcommand(
        "optimize", "search for the x minimizing each x-parameterized bound (exploratory)");
    add_function_flag(optimize_cmd, o);
    add_interval_flags(optimize_cmd, o);
    add_param_flags(optimize_cmd, o);
    add_format_flags(optimize_cmd, o);

    CLI::App* fuzz_cmd = app.add_subcommand(
        "fuzz", "verify bounds on seeded random functions with quasi-convex |f'|");
    add_interval_flags(fuzz_cmd, o);
    fuzz_cmd->add_option("--trials", o.trials, "number of generated functions (default 1000)");
    fuzz_cmd->add_option("--seed", o.seed, "campaign seed (default 42)");
    add_param_flags(fuzz_cmd, o);
    add_format_flags(fuzz_cmd, o);

    CLI::App* catalog_cmd =
        app.add_subcommand("catalog", "list built-in functions and their annotations");
    add_format_flags(catalog_cmd, o);

    CLI::App* reduce_cmd = app.add_subcommand(
        "reduce", "check that each bound at x=(a+b)/2 equals its midpoint baseline");
    add_function_flag(reduce_cmd, o);
    add_interval_flags(reduce_cmd, o);
    add_param_flags(reduce_cmd, o);
    add_format_flags(reduce_cmd, o);

    try {
        app.parse(argc, argv);
        if (verify_cmd->parsed()) return run_verify(o);
        if (sweep_cmd->parsed()) return run_sweep(o);
        if (optimize_cmd->parsed()) return run_optimize(o);
        if (fuzz_cmd->parsed()) return run_fuzz(o);
        if (catalog_cmd->parsed()) return run_catalog(o);
        if (reduce_cmd->parsed()) return run_reduce(o);
        return kExitUsage;
    } catch (const CLI::Success& e) {
        return app.exit(e); // --help / --version
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    } catch (const hh::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const hh::ParameterError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const hh::DomainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const hh::QuadratureError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
}
