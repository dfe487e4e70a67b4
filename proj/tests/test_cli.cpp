#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>

namespace {

#ifndef HHVERIFY_BIN_PATH
#error "HHVERIFY_BIN_PATH must be defined by the build"
#endif

struct CliResult {
    int exit_code = -1;
    std::string out;
    std::string err;
};

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

CliResult run_cli(const std::string& args) {
    static int counter = 0;
    std::string base = "/tmp/hhverify_cli_" + std::to_string(++counter);
    std::string out_path = base + ".out";
    std::string err_path = base + ".err";
    std::string cmd = std::string(HHVERIFY_BIN_PATH) + " " + args + " >" + out_path + " 2>" +
                      err_path;
    int status = std::system(cmd.c_str());
    CliResult r;
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = slurp(out_path);
    r.err = slurp(err_path);
    std::remove(out_path.c_str());
    std::remove(err_path.c_str());
    return r;
}

} // namespace

TEST_CASE("verify: success path with JSON report", "[cli]") {
    auto r = run_cli("verify --f \"x^2\" --a 0 --b 1 --x 0.5 --p 2 --q 2 --format json");
    CHECK(r.exit_code == 0);
    CHECK(r.err.empty());
    CHECK(r.out.find("\"command\": \"verify\"") != std::string::npos);
    CHECK(r.out.find("\"lhs\": 0.1666666") != std::string::npos);
    CHECK(r.out.find("\"thm6\": 0.375") != std::string::npos);
    CHECK(r.out.find("\"tool_version\"") != std::string::npos);
    CHECK(r.out.find("\"hypotheses\": {\"h1\": true, \"hp\": true, \"hq\": true}") !=
          std::string::npos);
}

TEST_CASE("verify: identical invocations emit byte-identical JSON", "[cli]") {
    const std::string args = "verify --f \"exp(x)\" --a 0 --b 2 --p 3 --q 1.5 --format json";
    auto r1 = run_cli(args);
    auto r2 = run_cli(args);
    REQUIRE(r1.exit_code == 0);
    CHECK(r1.out == r2.out);
    CHECK_FALSE(r1.out.empty());
}

TEST_CASE("verify: usage errors exit 1 with diagnostics on stderr only", "[cli]") {
    auto r = run_cli("verify --f \"x^2\" --a 1 --b 0");
    CHECK(r.exit_code == 1);
    CHECK(r.out.empty());
    CHECK(r.err.find("require a < b") != std::string::npos);

    auto bad_expr = run_cli("verify --f \"2*(x\"");
    CHECK(bad_expr.exit_code == 1);
    CHECK(bad_expr.out.empty());
    CHECK(bad_expr.err.find("offset 4") != std::string::npos);

    auto bad_p = run_cli("verify --f \"x^2\" --p 1");
    CHECK(bad_p.exit_code == 1);
    CHECK(bad_p.err.find("require p > 1") != std::string::npos);

    auto bad_cmd = run_cli("frobnicate");
    CHECK(bad_cmd.exit_code == 1);
}

TEST_CASE("verify: uncertified hypothesis exits 2", "[cli]") {
    auto r = run_cli("verify --f catalog:sinosc --format json");
    CHECK(r.exit_code == 2);
    CHECK(r.out.find("\"h1\": false") != std::string::npos);
    CHECK(r.out.find("hypothesis-not-certified") != std::string::npos);
    CHECK_FALSE(r.err.empty());
}

TEST_CASE("catalog: lists every entry with foils marked", "[cli]") {
    auto text = run_cli("catalog");
    CHECK(text.exit_code == 0);
    for (const char* name :
         {"linear", "square", "cube", "exp", "sqrtabs", "abskink", "neglog", "negsquare",
          "sinosc"})
        CHECK(text.out.find(name) != std::string::npos);
    CHECK(text.out.find("[FOIL]") != std::string::npos);

    auto json = run_cli("catalog --format json");
    CHECK(json.exit_code == 0);
    CHECK(json.out.find("\"foil\": true") != std::string::npos);
    CHECK(json.out.find("\"foil\": false") != std::string::npos);
}

TEST_CASE("catalog ids resolve with default intervals", "[cli]") {
    auto r = run_cli("verify --f catalog:sqrtabs --format json");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("\"a\": 0.25") != std::string::npos);
    CHECK(r.out.find("\"b\": 2.25") != std::string::npos);
}

TEST_CASE("reduce: midpoint reductions agree to 1e-12", "[cli]") {
    auto r = run_cli("reduce --f \"exp(x)\" --a 0 --b 2 --p 3 --q 1.5 --format json");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("\"all_pass\": true") != std::string::npos);
}

TEST_CASE("sweep: CSV has the fixed header and n rows", "[cli]") {
    auto r = run_cli("sweep --f \"x^2\" --n 11 --format csv");
    REQUIRE(r.exit_code == 0);
    std::istringstream in(r.out);
    std::string line;
    REQUIRE(std::getline(in, line));
    CHECK(line == "x,lhs,rhs6,rhs7,rhs8,slack6,slack7,slack8");
    int rows = 0;
    while (std::getline(in, line)) ++rows;
    CHECK(rows == 11);
}

TEST_CASE("optimize: reports argmin per bound with midpoint comparison", "[cli]") {
    auto r = run_cli("optimize --f \"exp(x)\" --format json");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("\"thm6\"") != std::string::npos);
    CHECK(r.out.find("\"argmin\": 0.551") != std::string::npos);
    CHECK(r.out.find("\"midpoint_value\"") != std::string::npos);
    CHECK(r.out.find("exploratory") != std::string::npos);
}

TEST_CASE("fuzz: small campaign is clean and deterministic", "[cli]") {
    auto r1 = run_cli("fuzz --trials 60 --seed 42 --format json");
    REQUIRE(r1.exit_code == 0);
    CHECK(r1.out.find("\"violations\": 0") != std::string::npos);
    CHECK(r1.out.find("\"cert_failures\": 0") != std::string::npos);
    auto r2 = run_cli("fuzz --trials 60 --seed 42 --format json");
    CHECK(r1.out == r2.out);
}

TEST_CASE("sweep: uncertified hypothesis exits 2 but still emits the table", "[cli]") {
    auto r = run_cli("sweep --f catalog:sinosc --n 5 --format csv");
    CHECK(r.exit_code == 2);
    CHECK(r.out.find("x,lhs,rhs6") != std::string::npos);
    CHECK(r.err.find("not be certified") != std::string::npos);
}

TEST_CASE("catalog: csv format", "[cli]") {
    auto r = run_cli("catalog --format csv");
    REQUIRE(r.exit_code == 0);
    CHECK(r.out.rfind("name,expression,a,b,foil,note", 0) == 0);
    CHECK(r.out.find("negsquare") != std::string::npos);
}

TEST_CASE("output file option writes the report instead of stdout", "[cli]") {
    std::string path = "/tmp/hhverify_cli_report.json";
    auto r = run_cli("verify --f \"x^2\" --format json -o " + path);
    CHECK(r.exit_code == 0);
    CHECK(r.out.empty());
    std::string file = slurp(path);
    CHECK(file.find("\"command\": \"verify\"") != std::string::npos);
    std::remove(path.c_str());
}
