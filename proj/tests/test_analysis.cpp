#include <catch2/catch_amalgamated.hpp>

#include <charconv>
#include <cmath>
#include <sstream>
#include <vector>

#include "hh/analysis.hpp"
#include "hh/catalog.hpp"
#include "hh/report_io.hpp"

using namespace hh;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {
const Interval kUnit{0.0, 1.0};
}

TEST_CASE("sweep_x tabulates the stated example rows", "[analysis]") {
    auto linear = catalog_fn("linear");
    SweepTable t = sweep_x(linear, kUnit, 3, {2.0, 2.0}, 1e-10);
    REQUIRE(t.rows.size() == 3);
    CHECK(t.rows[0].x == 0.0);
    CHECK(t.rows[1].x == 0.5);
    CHECK(t.rows[2].x == 1.0);
    CHECK_THAT(t.rows[0].lhs, WithinAbs(0.5, 1e-9));
    CHECK_THAT(t.rows[1].lhs, WithinAbs(0.0, 1e-9));
    CHECK_THAT(t.rows[2].lhs, WithinAbs(0.5, 1e-9));
    CHECK_THAT(t.rows[0].rhs6, WithinAbs(0.5, 1e-12));
    CHECK_THAT(t.rows[1].rhs6, WithinAbs(0.25, 1e-12));
    CHECK_THAT(t.rows[2].rhs6, WithinAbs(0.5, 1e-12));

    auto constant = make_fn(parse("3"));
    SweepTable tc = sweep_x(constant, kUnit, 7, {2.0, 2.0}, 1e-10);
    for (const SweepRow& row : tc.rows) {
        CHECK(row.lhs == 0.0);
        CHECK(row.rhs6 == 0.0);
        CHECK(row.rhs7 == 0.0);
        CHECK(row.rhs8 == 0.0);
    }

    REQUIRE_THROWS_AS(sweep_x(linear, kUnit, 1, {2.0, 2.0}, 1e-10), ParameterError);
}

TEST_CASE("sweep_x agrees with the closed-form row oracle for x^2", "[analysis]") {
    auto square = catalog_fn("square");
    SweepTable t = sweep_x(square, kUnit, 101, {2.0, 2.0}, 1e-10);
    REQUIRE(t.rows.size() == 101);
    CHECK(t.rows.front().x == 0.0);
    CHECK(t.rows.back().x == 1.0);

    // closed forms: lhs = |2/3 - x|, rhs6 = x^3 + (1-x)^2
    std::size_t oracle_argmin = 0;
    double oracle_min = 1e300;
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
        double x = t.rows[i].x;
        double lhs = std::fabs(2.0 / 3.0 - x);
        double rhs6 = x * x * x + (1 - x) * (1 - x);
        CHECK_THAT(t.rows[i].lhs, WithinAbs(lhs, 1e-9));
        CHECK_THAT(t.rows[i].rhs6, WithinAbs(rhs6, 1e-12));
        double slack = rhs6 - lhs;
        if (slack < oracle_min) {
            oracle_min = slack;
            oracle_argmin = i;
        }
        REQUIRE(t.rows[i].x >= (i ? t.rows[i - 1].x : 0.0));
    }
    std::size_t impl_argmin = 0;
    for (std::size_t i = 1; i < t.rows.size(); ++i)
        if (t.rows[i].slack6 < t.rows[impl_argmin].slack6) impl_argmin = i;
    CHECK(impl_argmin == oracle_argmin);
    CHECK_THAT(t.rows[impl_argmin].slack6, WithinAbs(oracle_min, 1e-9));
}

TEST_CASE("sweep computes the mean integral once, not per row", "[analysis]") {
    long value_calls = 0;
    auto counted = catalog_fn("exp");
    DifferentiableFn probe;
    probe.id = counted.id;
    probe.deriv = counted.deriv;
    probe.value = [&value_calls, counted](double x) {
        ++value_calls;
        return counted.value(x);
    };

    sweep_x(probe, kUnit, 201, {2.0, 2.0}, 1e-10);
    long single_integral = integrate_adaptive(counted.value, kUnit, 1e-10).evaluations;
    // one shared integral plus the two endpoint values; nowhere near 201 integrals
    CHECK(value_calls <= single_integral + 2);
}

TEST_CASE("sweep rows at the midpoint reproduce the baselines", "[analysis]") {
    for (const auto& entry : catalog()) {
        auto fn = catalog_fn(entry);
        ExponentParams params{3.0, 1.5};
        SweepTable t = sweep_x(fn, entry.interval, 11, params, 1e-10);
        const SweepRow& mid = t.rows[5]; // odd count: exact midpoint row
        REQUIRE_THAT(mid.x, WithinAbs(entry.interval.midpoint(), 1e-12));
        auto close = [](double u, double v) {
            double scale = std::max(std::fabs(u), std::fabs(v));
            return scale == 0.0 || std::fabs(u - v) / scale <= 1e-12;
        };
        INFO(entry.name);
        CHECK(close(mid.rhs6, bound_baseline(fn, entry.interval, TheoremId::eq1, params)));
        CHECK(close(mid.rhs7, bound_baseline(fn, entry.interval, TheoremId::eq2, params)));
        CHECK(close(mid.rhs8, bound_baseline(fn, entry.interval, TheoremId::eq3, params)));
    }
}

TEST_CASE("sweep slacks stay nonnegative for certified functions", "[analysis]") {
    for (const auto& entry : catalog()) {
        if (entry.name == "sinosc") continue; // hypothesis not certified
        auto fn = catalog_fn(entry);
        SweepTable t = sweep_x(fn, entry.interval, 101, {2.0, 2.0}, 1e-10);
        double floor = -(t.quadrature_error + 1e-9);
        for (const SweepRow& row : t.rows) {
            INFO(entry.name << " x=" << row.x);
            REQUIRE(row.slack6 >= floor);
            REQUIRE(row.slack7 >= floor);
            REQUIRE(row.slack8 >= floor);
        }
    }
}

TEST_CASE("optimal_x finds the bound-minimizing evaluation point", "[analysis]") {
    SECTION("affine: symmetric quadratic bound") {
        auto linear = catalog_fn("linear");
        auto r = optimal_x(linear, kUnit, TheoremId::thm6, {2.0, 2.0}, 1e-10);
        CHECK_THAT(r.minimum.argmin, WithinAbs(0.5, 1e-7));
        CHECK_THAT(r.minimum.min_value, WithinAbs(0.25, 1e-9));
        CHECK_THAT(r.midpoint_value, WithinAbs(0.25, 1e-12));
    }
    SECTION("exp: the optimum beats the midpoint") {
        auto ex = catalog_fn("exp");
        auto r = optimal_x(ex, kUnit, TheoremId::thm6, {2.0, 2.0}, 1e-10);
        CHECK_THAT(r.minimum.argmin, WithinAbs(0.551, 0.01));
        CHECK(r.minimum.min_value < r.midpoint_value);
    }
    SECTION("constant: ties resolve to a") {
        auto constant = make_fn(parse("5"));
        auto r = optimal_x(constant, kUnit, TheoremId::thm6, {2.0, 2.0}, 1e-10);
        CHECK(r.minimum.argmin == 0.0);
        CHECK(r.minimum.min_value == 0.0);
    }
    SECTION("only the x-parameterized bounds are searchable") {
        auto linear = catalog_fn("linear");
        REQUIRE_THROWS_AS(optimal_x(linear, kUnit, TheoremId::eq1, {2.0, 2.0}, 1e-10),
                          ParameterError);
    }
    SECTION("the optimum never loses to the midpoint on the corpus") {
        for (const auto& entry : catalog()) {
            auto fn = catalog_fn(entry);
            for (TheoremId id : {TheoremId::thm6, TheoremId::thm7, TheoremId::thm8}) {
                auto r = optimal_x(fn, entry.interval, id, {2.0, 2.0}, 1e-9);
                INFO(entry.name << " " << theorem_name(id));
                CHECK(r.minimum.min_value <= r.midpoint_value + 1e-9);
                CHECK(entry.interval.contains(r.minimum.argmin));
            }
        }
    }
}

TEST_CASE("fuzz: single-trial summary equals that trial's direct slack", "[analysis]") {
    GeneratorConfig base;
    base.seed = 42;
    base.family = Family::monotone_exp;
    FuzzParamsGrid grid;
    FuzzSummary s = fuzz(base, 1, grid, 1e-10, {Family::monotone_exp});
    REQUIRE(s.trials == 1);
    CHECK(s.violations == 0);
    CHECK(s.cert_failures == 0);
    CHECK(s.errors == 0);

    // replay the per-trial derivation
    SplitMix64 stream(base.seed ^ 0ull);
    GeneratorConfig c0 = base;
    c0.seed = stream.next();
    double x = stream.uniform01();
    auto gen = generate(c0);
    QuadratureResult mean_q = integrate_adaptive(gen.fn.value, kUnit, 1e-10);
    double mean = mean_q.value;
    double lhs = std::fabs(detail::endpoint_weight(kUnit, x, gen.fn.value(0.0),
                                                   gen.fn.value(1.0)) -
                           mean);
    double slack6 = bound_thm6(gen.fn, kUnit, x) - lhs;
    CHECK(s.min_slack6 == slack6);
}

TEST_CASE("fuzz campaigns are deterministic and violation-free", "[analysis]") {
    GeneratorConfig base;
    base.seed = 42;
    FuzzParamsGrid grid;
    FuzzSummary a = fuzz(base, 120, grid, 1e-10);
    FuzzSummary b = fuzz(base, 120, grid, 1e-10);

    CHECK(a.violations == 0);
    CHECK(a.cert_failures == 0);
    CHECK(a.errors == 0);
    CHECK(a.min_slack6 >= 0.0);
    CHECK(a.min_slack7 >= 0.0);
    CHECK(a.min_slack8 >= 0.0);
    CHECK(a.max_lemma_residual <= 1e-8);

    // bit-identical rerun
    CHECK(a.min_slack6 == b.min_slack6);
    CHECK(a.min_slack7 == b.min_slack7);
    CHECK(a.min_slack8 == b.min_slack8);
    CHECK(a.max_lemma_residual == b.max_lemma_residual);
    CHECK(a.ratio_histogram == b.ratio_histogram);
    CHECK(a.flagged_rhs_zero == b.flagged_rhs_zero);

    // every certified entry lands in the histogram: 1 + |ps| + |qs| per trial
    long total = 0;
    for (long c : a.ratio_histogram) total += c;
    CHECK(total + a.flagged_rhs_zero ==
          a.trials * (1 + static_cast<long>(grid.ps.size()) +
                      static_cast<long>(grid.qs.size())));
}

TEST_CASE("report serialization is stable and loss-free", "[analysis]") {
    SECTION("17-significant-digit JSON numbers") {
        CHECK(io::num17(0.375) == "0.375");
        CHECK(io::num17(1.0 / 3.0) == "0.33333333333333331");
        CHECK(io::num17(std::numeric_limits<double>::infinity()) == "null");
    }
    SECTION("shortest CSV numbers round-trip") {
        for (double v : {1.0 / 3.0, 0.29, 2.0 / 3.0, 5.43656365691809, 1e-12}) {
            std::string s = io::num_shortest(v);
            double back = 0.0;
            auto res = std::from_chars(s.data(), s.data() + s.size(), back);
            REQUIRE(res.ec == std::errc());
            CHECK(back == v);
        }
    }
    SECTION("sweep CSV has the fixed header and one line per row") {
        auto linear = catalog_fn("linear");
        SweepTable t = sweep_x(linear, kUnit, 5, {2.0, 2.0}, 1e-10);
        std::string csv = io::sweep_csv(t);
        std::istringstream in(csv);
        std::string line;
        REQUIRE(std::getline(in, line));
        CHECK(line == "x,lhs,rhs6,rhs7,rhs8,slack6,slack7,slack8");
        int rows = 0;
        while (std::getline(in, line)) ++rows;
        CHECK(rows == 5);
    }
    SECTION("identical inputs give byte-identical JSON reports") {
        auto square = catalog_fn("square");
        BoundReport r1 = verify(square, kUnit, 0.5, {2.0, 2.0}, 1e-10);
        BoundReport r2 = verify(square, kUnit, 0.5, {2.0, 2.0}, 1e-10);
        CHECK(io::verify_json(r1) == io::verify_json(r2));

        GeneratorConfig base;
        base.seed = 7;
        FuzzParamsGrid grid;
        auto fam = std::vector<Family>{Family::monomial_kink};
        CHECK(io::fuzz_json(fuzz(base, 5, grid, 1e-10, fam), base.interval, grid, fam) ==
              io::fuzz_json(fuzz(base, 5, grid, 1e-10, fam), base.interval, grid, fam));
    }
}
